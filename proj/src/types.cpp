#include "gowers/types.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace gowers {

GType::GType(std::vector<int> word, int k, bool is_signed) : word_(std::move(word)), k_(k), signed_(is_signed) {
    if (word_.empty())
        throw std::invalid_argument("empty type");
    bool attains = false;
    for (std::size_t i = 0; i < word_.size(); ++i) {
        const int v = word_[i];
        if (v == 0)
            throw std::invalid_argument("type has a zero entry");
        if (std::abs(v) > k_ || (!signed_ && v < 0))
            throw std::invalid_argument("type entry outside alphabet");
        if (i + 1 < word_.size() && word_[i + 1] == v)
            throw std::invalid_argument("adjacent type entries are equal");
        attains = attains || std::abs(v) == k_;
    }
    if (!attains)
        throw std::invalid_argument("type does not attain magnitude k");
}

std::string GType::encode() const { return as_function().encode(); }

std::strong_ordering operator<=>(const GType& a, const GType& b) {
    if (auto c = a.word_.size() <=> b.word_.size(); c != 0)
        return c;
    if (auto c = a.word_ <=> b.word_; c != 0)
        return c;
    if (auto c = a.k_ <=> b.k_; c != 0)
        return c;
    return a.signed_ <=> b.signed_;
}

FiniteFunction map_onto(const FiniteFunction& g, const SetBlockSeq& s) {
    if (g.length() != s.size())
        throw std::invalid_argument("map: length of g differs from length of s");
    std::vector<int> out(s.ambient(), 0);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (int x : s[i])
            out[static_cast<std::size_t>(x)] = g[i];
    return FiniteFunction(g.k(), g.is_signed(), std::move(out));
}

FiniteFunction map_onto(const GType& phi, const SetBlockSeq& s) { return map_onto(phi.as_function(), s); }

std::pair<std::vector<int>, SetBlockSeq> decompose(const FiniteFunction& f) {
    std::vector<int> word;
    std::vector<IndexSet> blocks;
    for (std::size_t i = 0; i < f.length(); ++i) {
        const int v = f[i];
        if (v == 0)
            continue;
        if (word.empty() || word.back() != v) {
            word.push_back(v);
            blocks.emplace_back();
        }
        blocks.back().push_back(static_cast<int>(i));
    }
    if (word.empty())
        throw std::invalid_argument("zero function has no type");
    return {std::move(word), SetBlockSeq(std::move(blocks), f.length())};
}

std::pair<GType, SetBlockSeq> type_of(const FiniteFunction& f) {
    auto [word, bsupp] = decompose(f);
    return {GType(std::move(word), f.k(), f.is_signed()), std::move(bsupp)};
}

std::vector<GType> type_of_seq(const FuncBlockSeq& F) {
    std::vector<GType> out;
    out.reserve(F.size());
    for (const auto& f : F.funcs())
        out.push_back(type_of(f).first);
    return out;
}

std::vector<GType> enumerate_types(int k, std::size_t d, bool is_signed) {
    if (k < 1 || d == 0)
        throw std::invalid_argument("enumerate_types needs k >= 1 and d >= 1");
    std::vector<int> letters;
    if (is_signed)
        for (int v = -k; v <= -1; ++v)
            letters.push_back(v);
    for (int v = 1; v <= k; ++v)
        letters.push_back(v);

    std::vector<GType> out;
    std::vector<int> word;
    auto rec = [&](auto&& self) -> void {
        if (word.size() == d) {
            if (std::any_of(word.begin(), word.end(), [k](int v) { return std::abs(v) == k; }))
                out.emplace_back(word, k, is_signed);
            return;
        }
        for (int v : letters) {
            if (!word.empty() && word.back() == v)
                continue;
            word.push_back(v);
            self(self);
            word.pop_back();
        }
    };
    rec(rec);
    return out;
}

std::vector<GType> enumerate_types_upto(int k, std::size_t max_len, bool is_signed) {
    std::vector<GType> out;
    for (std::size_t d = 1; d <= max_len; ++d) {
        auto part = enumerate_types(k, d, is_signed);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace gowers
