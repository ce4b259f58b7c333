#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "gowers/blocks.hpp"
#include "gowers/core.hpp"

namespace gowers {

/// An adjacent-distinct, zero-free word attaining magnitude k: the value
/// pattern of a function with repetitions collapsed.
class GType {
public:
    GType(std::vector<int> word, int k, bool is_signed);

    const std::vector<int>& word() const { return word_; }
    std::size_t size() const { return word_.size(); }
    int k() const { return k_; }
    bool is_signed() const { return signed_; }

    /// The word as a function on {0..|word|-1}.
    FiniteFunction as_function() const { return FiniteFunction(k_, signed_, word_); }

    std::string encode() const;

    friend bool operator==(const GType&, const GType&) = default;
    /// Shorter words first, then lexicographic.
    friend std::strong_ordering operator<=>(const GType& a, const GType& b);

private:
    std::vector<int> word_;
    int k_;
    bool signed_;
};

/// map(g, s): g(i) spread over s_i, as a function below s.ambient().
FiniteFunction map_onto(const FiniteFunction& g, const SetBlockSeq& s);
FiniteFunction map_onto(const GType& phi, const SetBlockSeq& s);

/// Value word and block support of any nonzero function: support positions
/// in increasing order, grouped into maximal runs of equal value.
std::pair<std::vector<int>, SetBlockSeq> decompose(const FiniteFunction& f);

/// (tp(f), bsupp(f)); f must be nonzero and attain its magnitude bound.
std::pair<GType, SetBlockSeq> type_of(const FiniteFunction& f);

std::vector<GType> type_of_seq(const FuncBlockSeq& F);

/// All types of length exactly d, lexicographic.
std::vector<GType> enumerate_types(int k, std::size_t d, bool is_signed);
/// All types of length 1..max_len, ordered by GType's ordering.
std::vector<GType> enumerate_types_upto(int k, std::size_t max_len, bool is_signed);

}  // namespace gowers
