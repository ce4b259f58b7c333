#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gowers {

/// A function {0..n-1} -> {0..k} (unsigned) or {-k..k} (signed).
///
/// Membership in the discretized sphere X_k(n) / X_{+-k}(n) is the
/// predicate in_sphere(); the same type also carries the ball elements
/// X_[k](n) produced by the tetris operation.
class FiniteFunction {
public:
    FiniteFunction(int k, bool is_signed, std::vector<int> values);

    static FiniteFunction zero(std::size_t n, int k, bool is_signed);

    std::size_t length() const { return values_.size(); }
    int k() const { return k_; }
    bool is_signed() const { return signed_; }
    std::span<const int> values() const { return values_; }
    int operator[](std::size_t i) const { return values_[i]; }

    int max_magnitude() const;
    bool is_zero() const;
    /// Attains magnitude k somewhere.
    bool in_sphere() const { return max_magnitude() == k_; }

    /// "v0,v1,...,v(n-1)"
    std::string encode() const;
    static FiniteFunction decode(const std::string& text, int k, bool is_signed);

    friend bool operator==(const FiniteFunction&, const FiniteFunction&) = default;
    friend auto operator<=>(const FiniteFunction&, const FiniteFunction&) = default;

private:
    int k_;
    bool signed_;
    std::vector<int> values_;
};

FiniteFunction tetris(const FiniteFunction& f);
FiniteFunction tetris_pow(const FiniteFunction& f, int e);
FiniteFunction negate(const FiniteFunction& f);

std::vector<int> support(const FiniteFunction& f);
int min_support(const FiniteFunction& f);
int max_support(const FiniteFunction& f);

int sup_metric(const FiniteFunction& f, const FiniteFunction& g);

/// Pointwise sum of disjointly supported functions over the same alphabet.
FiniteFunction add_disjoint(const FiniteFunction& f, const FiniteFunction& g);

/// scale * chi_A on {0..n-1}; k defaults to |scale|, signedness to scale < 0.
FiniteFunction char_fn(std::span<const int> set, std::size_t n, int scale);
FiniteFunction char_fn(std::span<const int> set, std::size_t n, int scale, int k, bool is_signed);

/// Same values, reinterpreted over another alphabet (range-checked).
FiniteFunction with_alphabet(const FiniteFunction& f, int k, bool is_signed);

/// All of X_k(n) (or X_{+-k}(n)) in lexicographic order of values.
std::vector<FiniteFunction> enumerate_sphere(std::size_t n, int k, bool is_signed);
/// All of X_[k](n) (or X_[+-k](n)), zero included, lexicographic.
std::vector<FiniteFunction> enumerate_ball(std::size_t n, int k, bool is_signed);

/// Dense index of f among the (k+1)^n (or (2k+1)^n) value vectors, in the
/// same lexicographic order as enumerate_ball.
std::uint64_t dense_index(const FiniteFunction& f);

}  // namespace gowers
