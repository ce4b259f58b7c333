#include "gowers/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace gowers {

namespace {

void check_value(int v, int k, bool is_signed) {
    const int lo = is_signed ? -k : 0;
    if (v < lo || v > k)
        throw std::invalid_argument("value " + std::to_string(v) + " outside alphabet of magnitude " +
                                    std::to_string(k));
}

void require_same_shape(const FiniteFunction& f, const FiniteFunction& g) {
    if (f.length() != g.length())
        throw std::invalid_argument("length mismatch");
    if (f.k() != g.k() || f.is_signed() != g.is_signed())
        throw std::invalid_argument("alphabet mismatch");
}

}  // namespace

FiniteFunction::FiniteFunction(int k, bool is_signed, std::vector<int> values)
    : k_(k), signed_(is_signed), values_(std::move(values)) {
    if (k_ < 1)
        throw std::invalid_argument("k must be positive");
    if (values_.empty())
        throw std::invalid_argument("function length must be positive");
    for (int v : values_)
        check_value(v, k_, signed_);
}

FiniteFunction FiniteFunction::zero(std::size_t n, int k, bool is_signed) {
    return FiniteFunction(k, is_signed, std::vector<int>(n, 0));
}

int FiniteFunction::max_magnitude() const {
    int m = 0;
    for (int v : values_)
        m = std::max(m, std::abs(v));
    return m;
}

bool FiniteFunction::is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](int v) { return v == 0; });
}

std::string FiniteFunction::encode() const {
    std::string out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (i)
            out += ',';
        out += std::to_string(values_[i]);
    }
    return out;
}

FiniteFunction FiniteFunction::decode(const std::string& text, int k, bool is_signed) {
    std::vector<int> vals;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        int v = std::stoi(item, &used);
        if (used != item.size())
            throw std::invalid_argument("malformed function encoding: " + text);
        vals.push_back(v);
    }
    return FiniteFunction(k, is_signed, std::move(vals));
}

FiniteFunction tetris(const FiniteFunction& f) { return tetris_pow(f, 1); }

FiniteFunction tetris_pow(const FiniteFunction& f, int e) {
    if (e < 0)
        throw std::invalid_argument("negative tetris exponent");
    std::vector<int> out(f.values().begin(), f.values().end());
    for (int& v : out) {
        if (v > 0)
            v = std::max(0, v - e);
        else if (v < 0)
            v = std::min(0, v + e);
    }
    return FiniteFunction(f.k(), f.is_signed(), std::move(out));
}

FiniteFunction negate(const FiniteFunction& f) {
    if (!f.is_signed() && !f.is_zero())
        throw std::invalid_argument("cannot negate an unsigned nonzero function");
    std::vector<int> out(f.values().begin(), f.values().end());
    for (int& v : out)
        v = -v;
    return FiniteFunction(f.k(), f.is_signed(), std::move(out));
}

std::vector<int> support(const FiniteFunction& f) {
    std::vector<int> out;
    for (std::size_t i = 0; i < f.length(); ++i)
        if (f[i] != 0)
            out.push_back(static_cast<int>(i));
    return out;
}

int min_support(const FiniteFunction& f) {
    for (std::size_t i = 0; i < f.length(); ++i)
        if (f[i] != 0)
            return static_cast<int>(i);
    throw std::invalid_argument("zero function has empty support");
}

int max_support(const FiniteFunction& f) {
    for (std::size_t i = f.length(); i-- > 0;)
        if (f[i] != 0)
            return static_cast<int>(i);
    throw std::invalid_argument("zero function has empty support");
}

int sup_metric(const FiniteFunction& f, const FiniteFunction& g) {
    if (f.length() != g.length())
        throw std::invalid_argument("length mismatch");
    int d = 0;
    for (std::size_t i = 0; i < f.length(); ++i)
        d = std::max(d, std::abs(f[i] - g[i]));
    return d;
}

FiniteFunction add_disjoint(const FiniteFunction& f, const FiniteFunction& g) {
    require_same_shape(f, g);
    std::vector<int> out(f.values().begin(), f.values().end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (g[i] == 0)
            continue;
        if (out[i] != 0)
            throw std::invalid_argument("supports overlap at index " + std::to_string(i));
        out[i] = g[i];
    }
    return FiniteFunction(f.k(), f.is_signed(), std::move(out));
}

FiniteFunction char_fn(std::span<const int> set, std::size_t n, int scale) {
    return char_fn(set, n, scale, std::max(1, std::abs(scale)), scale < 0);
}

FiniteFunction char_fn(std::span<const int> set, std::size_t n, int scale, int k, bool is_signed) {
    if (set.empty())
        throw std::invalid_argument("characteristic function of the empty set");
    std::vector<int> out(n, 0);
    for (int i : set) {
        if (i < 0 || static_cast<std::size_t>(i) >= n)
            throw std::invalid_argument("index " + std::to_string(i) + " out of range");
        out[static_cast<std::size_t>(i)] = scale;
    }
    return FiniteFunction(k, is_signed, std::move(out));
}

FiniteFunction with_alphabet(const FiniteFunction& f, int k, bool is_signed) {
    return FiniteFunction(k, is_signed, std::vector<int>(f.values().begin(), f.values().end()));
}

namespace {

template <class Visit>
void for_each_value_vector(std::size_t n, int k, bool is_signed, Visit&& visit) {
    const int lo = is_signed ? -k : 0;
    std::vector<int> v(n, lo);
    while (true) {
        visit(v);
        std::size_t i = n;
        while (i > 0 && v[i - 1] == k) {
            v[i - 1] = lo;
            --i;
        }
        if (i == 0)
            return;
        ++v[i - 1];
    }
}

}  // namespace

std::vector<FiniteFunction> enumerate_sphere(std::size_t n, int k, bool is_signed) {
    std::vector<FiniteFunction> out;
    for_each_value_vector(n, k, is_signed, [&](const std::vector<int>& v) {
        if (std::any_of(v.begin(), v.end(), [k](int x) { return std::abs(x) == k; }))
            out.emplace_back(k, is_signed, v);
    });
    return out;
}

std::vector<FiniteFunction> enumerate_ball(std::size_t n, int k, bool is_signed) {
    std::vector<FiniteFunction> out;
    for_each_value_vector(n, k, is_signed, [&](const std::vector<int>& v) { out.emplace_back(k, is_signed, v); });
    return out;
}

std::uint64_t dense_index(const FiniteFunction& f) {
    const std::uint64_t base = f.is_signed() ? 2 * f.k() + 1 : f.k() + 1;
    const int offset = f.is_signed() ? f.k() : 0;
    std::uint64_t idx = 0;
    for (int v : f.values())
        idx = idx * base + static_cast<std::uint64_t>(v + offset);
    return idx;
}

}  // namespace gowers
