#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gowers/blocks.hpp"
#include "gowers/core.hpp"

namespace gowers {

enum class ExactKind { MT, G, G_PM, MG, MG_PM };

std::string to_string(ExactKind kind);
ExactKind exact_kind_from_string(const std::string& name);

/// A least-threshold question. Unused parameters are ignored (k for MT,
/// d for G and G_PM).
struct ExactQuery {
    ExactKind kind = ExactKind::MT;
    int k = 1;
    std::size_t d = 1;
    std::size_t m = 1;
    int r = 1;
    std::size_t n_max = 8;
};

void validate(const ExactQuery& q);

/// "kind:k=..,d=..,m=..,r=.."
std::string query_key(const ExactQuery& q);

struct VerifyOptions {
    std::optional<std::uint64_t> node_budget;
    unsigned jobs = 1;
};

enum class Verdict { Holds, Fails, BudgetExhausted };

std::string to_string(Verdict v);

struct HoldsReport {
    Verdict verdict = Verdict::Fails;
    std::uint64_t nodes = 0;
    std::size_t domain_size = 0;
    std::size_t witness_count = 0;
    /// A coloring with no witness (element encoding, color), when one exists.
    std::vector<std::pair<std::string, int>> counterexample;
};

/// Does every r-coloring of the domain at size n admit the theorem's witness?
HoldsReport holds_at(const ExactQuery& q, std::size_t n, const VerifyOptions& opts = {});

struct ExactReport {
    std::optional<std::size_t> value;
    bool budget_exhausted = false;
    /// Every size below this was refuted.
    std::size_t refuted_below = 1;
    /// holds_at(value + 1), when it was decided.
    std::optional<bool> closure_holds;
    std::uint64_t nodes = 0;
};

ExactReport exact_number(const ExactQuery& q, const VerifyOptions& opts = {});

// ---------------------------------------------------------------------------
// No Ramsey degree for signed spans.

/// (|tp(f)| mod K) + 1 for nonzero f in X_{+-1}(n).
int degree_coloring(const FiniteFunction& f, int K);

/// h_0..h_{K-1} built from a length-2K block sequence in X_{+-1}(n).
std::vector<FiniteFunction> all_colors_witness(const FuncBlockSeq& F, int K);

struct NoRamseyReport {
    Verdict verdict = Verdict::Holds;   // Holds: every span realizes all K colors
    std::uint64_t sequences = 0;        // block sequences examined
    bool witnesses_ok = true;           // constructed h_i realize all colors with |tp(h_i)| = |tp(h_0)| + i
};

NoRamseyReport verify_no_ramsey_degree(std::size_t n, int K, const VerifyOptions& opts = {});

}  // namespace gowers
