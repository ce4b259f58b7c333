#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gowers/blocks.hpp"
#include "gowers/coloring.hpp"
#include "gowers/core.hpp"

namespace gowers {

enum class Outcome { Found, Absent, BudgetExhausted };

std::string to_string(Outcome o);

struct SearchOptions {
    /// Maximum number of search nodes; unset means unlimited.
    std::optional<std::uint64_t> node_budget;
};

/// Result of a search stage. `Absent` means the ambient size is below the
/// threshold for this coloring; it is never reported for a timeout.
template <class Payload>
struct ExtractionReport {
    Outcome outcome = Outcome::Absent;
    std::optional<Payload> witness;
    int color = 0;  // i0 when meaningful, otherwise 0
    std::uint64_t candidates = 0;

    bool found() const { return outcome == Outcome::Found; }
};

/// s and F with F a block sequence over X_{+-k}(s).
struct SignedWitness {
    SetBlockSeq s;
    FuncBlockSeq F;
};

// --- Milliken-Taylor search ------------------------------------------------

/// Lexicographically first t in Block^m(s) with Block^d(t) monochromatic.
ExtractionReport<SetBlockSeq> mt_search(const SetBlockSeq& s, std::size_t d, std::size_t m, const SetSeqColoring& c,
                                        const SearchOptions& opts = {});

// --- type canonicalization ---------------------------------------------------

/// s in Block^m(n) such that same-type elements of X_k(s) share a color.
ExtractionReport<SetBlockSeq> canonize_types(std::size_t n, int k, std::size_t m, const FunctionColoring& c,
                                             const SearchOptions& opts = {});
/// Signed analogue on X_{+-k}(n).
ExtractionReport<SetBlockSeq> canonize_signed_types(std::size_t n, int k, std::size_t m, const FunctionColoring& c,
                                                    const SearchOptions& opts = {});
/// s in Block^m(n) such that same-type members of Block^d_{+-k}(s) share a color.
ExtractionReport<SetBlockSeq> canonize_block_types(std::size_t n, int k, std::size_t d, std::size_t m,
                                                   const SequenceColoring& c, const SearchOptions& opts = {});

// --- insensitivity ------------------------------------------------------------

/// f_i = sum_{|q|<k} (k-|q|) chi_{s_{j_i+q}}, j_i = i(2k-1)+k-1.
FuncBlockSeq pyramid_sequence(const SetBlockSeq& s, int k, std::size_t m);

/// c(f) == c(f + T^{k-1}(f')) for all disjointly supported f, f' in <F>_k.
bool is_insensitive(const FunctionColoring& c, const FuncBlockSeq& F, int k);

ExtractionReport<FuncBlockSeq> make_insensitive(std::size_t n, int k, std::size_t m, const FunctionColoring& c,
                                                const SearchOptions& opts = {});

// --- positive theorem ---------------------------------------------------------

/// Q(g) = sum_{i in supp g} T^{k-1-g(i)}(f'_i), for g with values in {0..k-1}.
FiniteFunction q_map(const FuncBlockSeq& Fp, const FiniteFunction& g);

/// sum_{i in supp g} T^{k-g(i)}(f_i): the isomorphism X_[k](|F|) -> <F>_[k].
FiniteFunction basis_embed(const FuncBlockSeq& F, const FiniteFunction& g);

ExtractionReport<FuncBlockSeq> extract_positive(std::size_t n, int k, std::size_t m, const FunctionColoring& c,
                                                const SearchOptions& opts = {});

/// Brute-force reference: first length-m block sequence in X_k(n) with a
/// monochromatic strict span.
ExtractionReport<FuncBlockSeq> direct_search_positive(std::size_t n, int k, std::size_t m, const FunctionColoring& c,
                                                      const SearchOptions& opts = {});

// --- signed theorem -----------------------------------------------------------

/// Alternating pyramid of height delta centred at s-index ell; zero for delta <= 0.
FiniteFunction q_delta(int delta, int ell, const SetBlockSeq& s, int k);

/// (q(k, 2ki+k-1, s))_{i<M}; requires length(s) = 2kM.
FuncBlockSeq signed_carrier(const SetBlockSeq& s, int k, std::size_t M);

struct ApproximateWitness {
    FiniteFunction near;      // f': same type as `positive`, within distance 1 of f
    FiniteFunction positive;  // f'': in <F>_k with supp f'' = supp f
};

/// For f in <F>_{+-k}, F a block sequence in <G>_k, G the carrier over s.
ApproximateWitness approximate_witness(const FiniteFunction& f, const FuncBlockSeq& F, const FuncBlockSeq& G,
                                       const SetBlockSeq& s, int k);

ExtractionReport<SignedWitness> extract_signed(std::size_t n, int k, std::size_t m, const FunctionColoring& c,
                                               const SearchOptions& opts = {});

// --- multidimensional ---------------------------------------------------------

/// For c on Block^{d+1}_k(n): G in Block^ell_k(n) on which the color of a
/// (d+1)-sequence depends only on its first d entries.
ExtractionReport<FuncBlockSeq> canonize_last_coordinate(std::size_t n, int k, std::size_t d, std::size_t ell,
                                                        const SequenceColoring& c, const SearchOptions& opts = {});

ExtractionReport<FuncBlockSeq> extract_multidim_positive(std::size_t n, int k, std::size_t d, std::size_t m,
                                                         const SequenceColoring& c, const SearchOptions& opts = {});

ExtractionReport<SignedWitness> extract_multidim_signed(std::size_t n, int k, std::size_t d, std::size_t m,
                                                        const SequenceColoring& c, const SearchOptions& opts = {});

}  // namespace gowers
