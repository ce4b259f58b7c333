#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gowers/core.hpp"

namespace gowers {

/// Sorted list of naturals.
using IndexSet = std::vector<int>;
/// A nonempty subset of positions {0..63} of some sequence, as a bit mask.
using PositionMask = std::uint64_t;

/// A block sequence (s_0, ..., s_{m-1}) of nonempty finite sets, all below
/// `ambient`, with max s_i < min s_{i+1}.
class SetBlockSeq {
public:
    SetBlockSeq(std::vector<IndexSet> sets, std::size_t ambient);

    /// ({0}, {1}, ..., {n-1}) below n.
    static SetBlockSeq singletons(std::size_t n);

    std::size_t size() const { return sets_.size(); }
    std::size_t ambient() const { return ambient_; }
    const std::vector<IndexSet>& sets() const { return sets_; }
    const IndexSet& operator[](std::size_t i) const { return sets_[i]; }

    SetBlockSeq prefix(std::size_t d) const;
    /// Union of the sets at the positions in `mask`.
    IndexSet union_of(PositionMask mask) const;
    /// The block subsequence whose i-th set is the union selected by masks[i].
    SetBlockSeq select(const std::vector<PositionMask>& masks) const;

    /// "0,1|3,5" (sets joined by '|').
    std::string encode() const;

    friend bool operator==(const SetBlockSeq&, const SetBlockSeq&) = default;
    friend auto operator<=>(const SetBlockSeq&, const SetBlockSeq&) = default;

private:
    std::vector<IndexSet> sets_;
    std::size_t ambient_;
};

/// A block sequence of nonempty functions sharing length and alphabet.
class FuncBlockSeq {
public:
    explicit FuncBlockSeq(std::vector<FiniteFunction> funcs);

    std::size_t size() const { return funcs_.size(); }
    const std::vector<FiniteFunction>& funcs() const { return funcs_; }
    const FiniteFunction& operator[](std::size_t i) const { return funcs_[i]; }
    int k() const { return funcs_.front().k(); }
    bool is_signed() const { return funcs_.front().is_signed(); }
    std::size_t ambient() const { return funcs_.front().length(); }

    FuncBlockSeq prefix(std::size_t d) const;
    FuncBlockSeq append(const FiniteFunction& f) const;

    /// Function encodings joined by '|'.
    std::string encode() const;

    friend bool operator==(const FuncBlockSeq&, const FuncBlockSeq&) = default;
    friend auto operator<=>(const FuncBlockSeq&, const FuncBlockSeq&) = default;

private:
    std::vector<FiniteFunction> funcs_;
};

bool is_block(const std::vector<FiniteFunction>& funcs);

// ---------------------------------------------------------------------------
// Unions and block subsequences of set sequences.

std::vector<IndexSet> nonempty_unions(const SetBlockSeq& s);

/// Visits every d-tuple of nonempty position masks over {0..m-1} that is
/// block (highest bit of one below lowest bit of the next), in
/// lexicographic order of the mask tuple. Stops when `visit` returns false.
void for_each_block_masks(std::size_t m, std::size_t d,
                          const std::function<bool(const std::vector<PositionMask>&)>& visit);

std::uint64_t count_block_subseqs(std::size_t m, std::size_t d);

/// Block^d(s), lexicographic over index-subset masks.
std::vector<SetBlockSeq> enumerate_block_subseqs(const SetBlockSeq& s, std::size_t d);

// ---------------------------------------------------------------------------
// Spans.

enum class SpanMode { PosStrict, PosAll, SignedStrict, SignedAll };

constexpr bool is_signed_mode(SpanMode m) { return m == SpanMode::SignedStrict || m == SpanMode::SignedAll; }
constexpr bool is_strict_mode(SpanMode m) { return m == SpanMode::PosStrict || m == SpanMode::SignedStrict; }

/// One summand choice per generator: absent, or sign * T^eps(f_j).
struct SpanTerm {
    bool present = false;
    int eps = 0;
    int sign = 1;
};
using SpanCoefficients = std::vector<SpanTerm>;

/// The span element described by `coeffs` (no mode checks).
FiniteFunction span_element(const FuncBlockSeq& F, const SpanCoefficients& coeffs, SpanMode mode);

/// Deduplicated span, ordered by (index subset, eps tuple, sign tuple).
std::vector<FiniteFunction> span(const FuncBlockSeq& F, SpanMode mode);

/// Visits span elements with their coefficients in canonical order without
/// materializing; duplicates are possible only for generators that do not
/// attain k. Stops when `visit` returns false.
void for_each_span_element(const FuncBlockSeq& F, SpanMode mode,
                           const std::function<bool(const FiniteFunction&, const SpanCoefficients&)>& visit);

/// Coefficients expressing g in the span, if any (least eps and + sign first).
std::optional<SpanCoefficients> span_decompose(const FuncBlockSeq& F, SpanMode mode, const FiniteFunction& g);
bool span_contains(const FuncBlockSeq& F, SpanMode mode, const FiniteFunction& g);

/// All length-d block sequences with entries in span(F, mode), in
/// lexicographic order of entries' positions in span(F, mode).
std::vector<FuncBlockSeq> enumerate_func_block_subseqs(const FuncBlockSeq& F, std::size_t d, SpanMode mode);

// ---------------------------------------------------------------------------
// Support relative to a set block sequence.

/// The g with f = map(g, s), if f is constant on every s_i and zero off them.
std::optional<FiniteFunction> represent_over(const FiniteFunction& f, const SetBlockSeq& s);

/// supp(g) for f = map(g, s); throws when f is not representable over s.
IndexSet s_support(const FiniteFunction& f, const SetBlockSeq& s);

bool displacement_at_most_one(const FiniteFunction& a, const FiniteFunction& b, const SetBlockSeq& s);
bool displacement_at_most_one(const FuncBlockSeq& a, const FuncBlockSeq& b, const SetBlockSeq& s);

/// Consecutive s-supports leave at least one unused s-index between them.
bool is_s_skipped(const FuncBlockSeq& F, const SetBlockSeq& s);

/// rho_inf on sequences: max over components.
int sup_metric(const FuncBlockSeq& a, const FuncBlockSeq& b);

}  // namespace gowers
