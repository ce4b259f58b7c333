#include "gowers/witness_check.hpp"

#include <algorithm>
#include <map>

#include "gowers/types.hpp"

namespace gowers {

namespace {

FuncBlockSeq scaled_basis(const SetBlockSeq& s, int k) {
    std::vector<FiniteFunction> fs;
    for (const IndexSet& set : s.sets())
        fs.push_back(char_fn(set, s.ambient(), k, k, false));
    return FuncBlockSeq(std::move(fs));
}

bool in_positive_sphere(const FiniteFunction& f, int k) {
    return !f.is_signed() && f.k() == k && f.in_sphere();
}

// Every t_i is a union of sets of s.
bool drawn_from(const SetBlockSeq& t, const SetBlockSeq& s) {
    for (const IndexSet& ti : t.sets()) {
        IndexSet covered;
        for (const IndexSet& sj : s.sets()) {
            bool inside = false, outside = false;
            for (int x : sj)
                (std::binary_search(ti.begin(), ti.end(), x) ? inside : outside) = true;
            if (inside && outside)
                return false;
            if (inside)
                covered.insert(covered.end(), sj.begin(), sj.end());
        }
        std::sort(covered.begin(), covered.end());
        if (covered != ti)
            return false;
    }
    return true;
}

}  // namespace

std::optional<int> monochromatic_color(const FunctionColoring& c, const std::vector<FiniteFunction>& elems) {
    std::optional<int> colour;
    for (const FiniteFunction& f : elems) {
        const int v = c(f);
        if (!colour)
            colour = v;
        else if (*colour != v)
            return std::nullopt;
    }
    return colour;
}

std::optional<int> monochromatic_color(const SequenceColoring& c, const std::vector<FuncBlockSeq>& elems) {
    std::optional<int> colour;
    for (const FuncBlockSeq& F : elems) {
        const int v = c(F);
        if (!colour)
            colour = v;
        else if (*colour != v)
            return std::nullopt;
    }
    return colour;
}

std::vector<FiniteFunction> sphere_over(const SetBlockSeq& s, int k, bool is_signed) {
    return span(scaled_basis(s, k), is_signed ? SpanMode::SignedStrict : SpanMode::PosStrict);
}

std::vector<FuncBlockSeq> block_sequences_over(const SetBlockSeq& s, int k, std::size_t d, bool is_signed) {
    return enumerate_func_block_subseqs(scaled_basis(s, k), d, is_signed ? SpanMode::SignedStrict : SpanMode::PosStrict);
}

bool is_type_canonical(const FunctionColoring& c, const SetBlockSeq& s, int k, bool is_signed) {
    std::map<std::vector<int>, int> by_type;
    for (const FiniteFunction& f : sphere_over(s, k, is_signed)) {
        const int col = c(f);
        auto [it, inserted] = by_type.try_emplace(type_of(f).first.word(), col);
        if (!inserted && it->second != col)
            return false;
    }
    return true;
}

bool is_block_type_canonical(const SequenceColoring& c, const SetBlockSeq& s, int k, std::size_t d, bool is_signed) {
    std::map<std::vector<std::vector<int>>, int> by_type;
    for (const FuncBlockSeq& F : block_sequences_over(s, k, d, is_signed)) {
        std::vector<std::vector<int>> key;
        for (const GType& phi : type_of_seq(F))
            key.push_back(phi.word());
        const int col = c(F);
        auto [it, inserted] = by_type.try_emplace(std::move(key), col);
        if (!inserted && it->second != col)
            return false;
    }
    return true;
}

bool check_mt_witness(const SetSeqColoring& c, const SetBlockSeq& s, std::size_t d, std::size_t m,
                      const SetBlockSeq& t, int color) {
    if (t.size() != m || d > m || !drawn_from(t, s))
        return false;
    for (const SetBlockSeq& u : enumerate_block_subseqs(t, d))
        if (c(u) != color)
            return false;
    return true;
}

bool check_positive_witness(const FunctionColoring& c, int k, std::size_t m, const FuncBlockSeq& F, int color) {
    if (F.size() != m)
        return false;
    for (const FiniteFunction& f : F.funcs())
        if (!in_positive_sphere(f, k))
            return false;
    auto colour = monochromatic_color(c, span(F, SpanMode::PosStrict));
    return colour && *colour == color;
}

bool check_signed_witness(const FunctionColoring& c, int k, std::size_t m, const SetBlockSeq& s,
                          const FuncBlockSeq& F, int color) {
    if (F.size() != m || F.k() != k)
        return false;
    for (const FiniteFunction& f : F.funcs())
        if (!represent_over(f, s) || !f.in_sphere())
            return false;
    if (!is_s_skipped(F, s))
        return false;
    std::vector<FiniteFunction> targets;
    for (const FiniteFunction& g : sphere_over(s, k, true))
        if (c(g) == color)
            targets.push_back(g);
    for (const FiniteFunction& f : span(F, SpanMode::SignedStrict)) {
        bool found = false;
        for (const FiniteFunction& g : targets) {
            if (sup_metric(f, g) <= 1 && displacement_at_most_one(f, g, s)) {
                found = true;
                break;
            }
        }
        if (!found)
            return false;
    }
    return true;
}

bool check_multidim_positive_witness(const SequenceColoring& c, int k, std::size_t d, std::size_t m,
                                     const FuncBlockSeq& F, int color) {
    if (F.size() != m || d > m)
        return false;
    for (const FiniteFunction& f : F.funcs())
        if (!in_positive_sphere(f, k))
            return false;
    auto colour = monochromatic_color(c, enumerate_func_block_subseqs(F, d, SpanMode::PosStrict));
    return colour && *colour == color;
}

bool check_multidim_signed_witness(const SequenceColoring& c, int k, std::size_t d, std::size_t m,
                                   const SetBlockSeq& s, const FuncBlockSeq& F, int color) {
    if (F.size() != m || d > m || F.k() != k)
        return false;
    for (const FiniteFunction& f : F.funcs())
        if (!represent_over(f, s) || !f.in_sphere())
            return false;
    if (!is_s_skipped(F, s))
        return false;
    std::vector<FuncBlockSeq> targets;
    for (const FuncBlockSeq& H : block_sequences_over(s, k, d, true))
        if (c(H) == color)
            targets.push_back(H);
    for (const FuncBlockSeq& H : enumerate_func_block_subseqs(F, d, SpanMode::SignedStrict)) {
        bool found = false;
        for (const FuncBlockSeq& Hp : targets) {
            if (sup_metric(H, Hp) <= 1 && displacement_at_most_one(H, Hp, s)) {
                found = true;
                break;
            }
        }
        if (!found)
            return false;
    }
    return true;
}

}  // namespace gowers
