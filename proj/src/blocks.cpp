#include "gowers/blocks.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace gowers {

// ---------------------------------------------------------------------------
// SetBlockSeq

SetBlockSeq::SetBlockSeq(std::vector<IndexSet> sets, std::size_t ambient)
    : sets_(std::move(sets)), ambient_(ambient) {
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        IndexSet& set = sets_[i];
        if (set.empty())
            throw std::invalid_argument("block sequence contains an empty set");
        std::sort(set.begin(), set.end());
        if (std::adjacent_find(set.begin(), set.end()) != set.end())
            throw std::invalid_argument("set with repeated element");
        if (set.front() < 0 || static_cast<std::size_t>(set.back()) >= ambient_)
            throw std::invalid_argument("set element outside ambient range");
        if (i > 0 && sets_[i - 1].back() >= set.front())
            throw std::invalid_argument("sets are not block ordered");
    }
}

SetBlockSeq SetBlockSeq::singletons(std::size_t n) {
    std::vector<IndexSet> sets;
    sets.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        sets.push_back({static_cast<int>(i)});
    return SetBlockSeq(std::move(sets), n);
}

SetBlockSeq SetBlockSeq::prefix(std::size_t d) const {
    if (d > sets_.size())
        throw std::invalid_argument("prefix longer than sequence");
    return SetBlockSeq(std::vector<IndexSet>(sets_.begin(), sets_.begin() + static_cast<std::ptrdiff_t>(d)), ambient_);
}

IndexSet SetBlockSeq::union_of(PositionMask mask) const {
    if (mask == 0)
        throw std::invalid_argument("empty position mask");
    if (std::bit_width(mask) > sets_.size())
        throw std::invalid_argument("position mask exceeds sequence length");
    IndexSet out;
    for (std::size_t i = 0; i < sets_.size(); ++i)
        if (mask >> i & 1U)
            out.insert(out.end(), sets_[i].begin(), sets_[i].end());
    return out;
}

SetBlockSeq SetBlockSeq::select(const std::vector<PositionMask>& masks) const {
    std::vector<IndexSet> sets;
    sets.reserve(masks.size());
    for (PositionMask m : masks)
        sets.push_back(union_of(m));
    return SetBlockSeq(std::move(sets), ambient_);
}

std::string SetBlockSeq::encode() const {
    std::string out;
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        if (i)
            out += '|';
        for (std::size_t j = 0; j < sets_[i].size(); ++j) {
            if (j)
                out += ',';
            out += std::to_string(sets_[i][j]);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// FuncBlockSeq

FuncBlockSeq::FuncBlockSeq(std::vector<FiniteFunction> funcs) : funcs_(std::move(funcs)) {
    if (funcs_.empty())
        throw std::invalid_argument("empty function block sequence");
    for (const auto& f : funcs_) {
        if (f.length() != funcs_.front().length() || f.k() != funcs_.front().k() ||
            f.is_signed() != funcs_.front().is_signed())
            throw std::invalid_argument("functions in a block sequence must share length and alphabet");
    }
    if (!is_block(funcs_))
        throw std::invalid_argument("supports do not form a block sequence");
}

FuncBlockSeq FuncBlockSeq::prefix(std::size_t d) const {
    if (d == 0 || d > funcs_.size())
        throw std::invalid_argument("invalid prefix length");
    return FuncBlockSeq(std::vector<FiniteFunction>(funcs_.begin(), funcs_.begin() + static_cast<std::ptrdiff_t>(d)));
}

FuncBlockSeq FuncBlockSeq::append(const FiniteFunction& f) const {
    auto funcs = funcs_;
    funcs.push_back(f);
    return FuncBlockSeq(std::move(funcs));
}

std::string FuncBlockSeq::encode() const {
    std::string out;
    for (std::size_t i = 0; i < funcs_.size(); ++i) {
        if (i)
            out += '|';
        out += funcs_[i].encode();
    }
    return out;
}

bool is_block(const std::vector<FiniteFunction>& funcs) {
    int prev_max = -1;
    for (const auto& f : funcs) {
        if (f.is_zero())
            return false;
        if (min_support(f) <= prev_max)
            return false;
        prev_max = max_support(f);
    }
    return true;
}

// ---------------------------------------------------------------------------
// Unions and block subsequences

std::vector<IndexSet> nonempty_unions(const SetBlockSeq& s) {
    if (s.size() >= 63)
        throw std::invalid_argument("sequence too long to enumerate unions");
    std::vector<IndexSet> out;
    const PositionMask total = PositionMask{1} << s.size();
    for (PositionMask m = 1; m < total; ++m)
        out.push_back(s.union_of(m));
    return out;
}

namespace {

bool block_masks_rec(std::size_t m, std::size_t d, std::size_t lo, std::vector<PositionMask>& cur,
                     const std::function<bool(const std::vector<PositionMask>&)>& visit) {
    if (cur.size() == d)
        return visit(cur);
    const std::size_t remaining = d - cur.size() - 1;
    const std::size_t width = m - lo;
    for (PositionMask x = 1; x < (PositionMask{1} << width); ++x) {
        // highest used position must leave room for the remaining entries
        const std::size_t top = lo + std::bit_width(x) - 1;
        if (m - top - 1 < remaining)
            continue;
        cur.push_back(x << lo);
        const bool go_on = block_masks_rec(m, d, top + 1, cur, visit);
        cur.pop_back();
        if (!go_on)
            return false;
    }
    return true;
}

}  // namespace

void for_each_block_masks(std::size_t m, std::size_t d,
                          const std::function<bool(const std::vector<PositionMask>&)>& visit) {
    if (d == 0)
        throw std::invalid_argument("block subsequence length must be positive");
    if (m >= 63)
        throw std::invalid_argument("sequence too long to enumerate");
    if (d > m)
        return;
    std::vector<PositionMask> cur;
    cur.reserve(d);
    block_masks_rec(m, d, 0, cur, visit);
}

std::uint64_t count_block_subseqs(std::size_t m, std::size_t d) {
    // Each position is unused, or belongs to one of the d sets; sets appear
    // in order. Count via DP over positions: state = number of sets opened
    // and whether the current set has already received an element.
    if (d == 0 || d > m)
        return 0;
    // dp[j] = ways with j sets started (the j-th possibly still open)
    std::vector<std::uint64_t> dp(d + 1, 0);
    dp[0] = 1;
    for (std::size_t pos = 0; pos < m; ++pos) {
        std::vector<std::uint64_t> next(d + 1, 0);
        for (std::size_t j = 0; j <= d; ++j) {
            if (!dp[j])
                continue;
            next[j] += dp[j];                // unused
            if (j > 0)
                next[j] += dp[j];            // joins the currently open set
            if (j < d)
                next[j + 1] += dp[j];        // opens the next set
        }
        dp = std::move(next);
    }
    return dp[d];
}

std::vector<SetBlockSeq> enumerate_block_subseqs(const SetBlockSeq& s, std::size_t d) {
    if (d == 0 || d > s.size())
        throw std::invalid_argument("block subsequence length must be in 1..length(s)");
    std::vector<SetBlockSeq> out;
    for_each_block_masks(s.size(), d, [&](const std::vector<PositionMask>& masks) {
        out.push_back(s.select(masks));
        return true;
    });
    return out;
}

// ---------------------------------------------------------------------------
// Spans

FiniteFunction span_element(const FuncBlockSeq& F, const SpanCoefficients& coeffs, SpanMode mode) {
    const bool out_signed = F.is_signed() || is_signed_mode(mode);
    std::vector<int> vals(F.ambient(), 0);
    for (std::size_t j = 0; j < F.size(); ++j) {
        const SpanTerm& t = coeffs[j];
        if (!t.present)
            continue;
        const FiniteFunction term = tetris_pow(F[j], t.eps);
        for (std::size_t i = 0; i < vals.size(); ++i)
            vals[i] += t.sign * term[i];
    }
    return FiniteFunction(F.k(), out_signed, std::move(vals));
}

void for_each_span_element(const FuncBlockSeq& F, SpanMode mode,
                           const std::function<bool(const FiniteFunction&, const SpanCoefficients&)>& visit) {
    const std::size_t m = F.size();
    const int k = F.k();
    if (m >= 63)
        throw std::invalid_argument("block sequence too long to span");
    if (is_strict_mode(mode)) {
        for (const auto& f : F.funcs())
            if (!f.in_sphere())
                throw std::invalid_argument("strict span requires every generator to attain k");
    }
    const bool out_signed = F.is_signed() || is_signed_mode(mode);

    // powers[j][e] = T^e(f_j)
    std::vector<std::vector<FiniteFunction>> powers(m);
    for (std::size_t j = 0; j < m; ++j)
        for (int e = 0; e < k; ++e)
            powers[j].push_back(tetris_pow(F[j], e));

    SpanCoefficients coeffs(m);
    std::vector<int> vals(F.ambient());
    const PositionMask total = PositionMask{1} << m;
    for (PositionMask mask = 1; mask < total; ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t j = 0; j < m; ++j)
            if (mask >> j & 1U)
                idx.push_back(j);
        const std::size_t l = idx.size();
        std::vector<int> eps(l, 0);
        while (true) {
            const bool has_zero = std::find(eps.begin(), eps.end(), 0) != eps.end();
            if (!is_strict_mode(mode) || has_zero) {
                const std::uint64_t sign_count = is_signed_mode(mode) ? (std::uint64_t{1} << l) : 1;
                for (std::uint64_t signs = 0; signs < sign_count; ++signs) {
                    std::fill(vals.begin(), vals.end(), 0);
                    for (auto& t : coeffs)
                        t = SpanTerm{};
                    for (std::size_t a = 0; a < l; ++a) {
                        // sign tuples in lexicographic order with + before -
                        const int sign = (signs >> (l - 1 - a) & 1U) ? -1 : 1;
                        const FiniteFunction& term = powers[idx[a]][static_cast<std::size_t>(eps[a])];
                        for (std::size_t i = 0; i < vals.size(); ++i)
                            vals[i] += sign * term[i];
                        coeffs[idx[a]] = SpanTerm{true, eps[a], sign};
                    }
                    if (!visit(FiniteFunction(k, out_signed, vals), coeffs))
                        return;
                }
            }
            // next eps tuple (lexicographic)
            std::size_t p = l;
            while (p > 0 && eps[p - 1] == k - 1) {
                eps[p - 1] = 0;
                --p;
            }
            if (p == 0)
                break;
            ++eps[p - 1];
        }
    }
}

std::vector<FiniteFunction> span(const FuncBlockSeq& F, SpanMode mode) {
    std::vector<FiniteFunction> out;
    std::set<FiniteFunction> seen;
    for_each_span_element(F, mode, [&](const FiniteFunction& g, const SpanCoefficients&) {
        if (seen.insert(g).second)
            out.push_back(g);
        return true;
    });
    return out;
}

std::optional<SpanCoefficients> span_decompose(const FuncBlockSeq& F, SpanMode mode, const FiniteFunction& g) {
    if (g.length() != F.ambient())
        return std::nullopt;
    if (is_strict_mode(mode)) {
        for (const auto& f : F.funcs())
            if (!f.in_sphere())
                throw std::invalid_argument("strict span requires every generator to attain k");
    }
    const int k = F.k();
    // g must vanish off the union of generator supports
    std::vector<int> owner(g.length(), -1);
    for (std::size_t j = 0; j < F.size(); ++j)
        for (int i : support(F[j]))
            owner[static_cast<std::size_t>(i)] = static_cast<int>(j);
    for (std::size_t i = 0; i < g.length(); ++i)
        if (owner[i] < 0 && g[i] != 0)
            return std::nullopt;

    SpanCoefficients coeffs(F.size());
    bool any_present = false;
    bool any_zero_eps = false;
    bool can_vanish = false;  // some generator has T^eps = 0 within range
    for (std::size_t j = 0; j < F.size(); ++j) {
        const std::vector<int> supp = support(F[j]);
        const bool restriction_zero = std::all_of(supp.begin(), supp.end(), [&](int i) { return g[static_cast<std::size_t>(i)] == 0; });
        if (F[j].max_magnitude() <= k - 1)
            can_vanish = true;
        if (restriction_zero)
            continue;
        bool matched = false;
        for (int e = 0; e < k && !matched; ++e) {
            const FiniteFunction term = tetris_pow(F[j], e);
            for (int sign : {1, -1}) {
                if (sign < 0 && !is_signed_mode(mode))
                    continue;
                const bool ok = std::all_of(supp.begin(), supp.end(), [&](int i) {
                    return g[static_cast<std::size_t>(i)] == sign * term[static_cast<std::size_t>(i)];
                });
                if (ok) {
                    coeffs[j] = SpanTerm{true, e, sign};
                    matched = true;
                    break;
                }
            }
        }
        if (!matched)
            return std::nullopt;
        any_present = true;
        any_zero_eps = any_zero_eps || coeffs[j].eps == 0;
    }
    if (is_strict_mode(mode))
        return any_zero_eps ? std::optional(coeffs) : std::nullopt;
    if (!any_present) {
        if (!can_vanish)
            return std::nullopt;
        for (std::size_t j = 0; j < F.size(); ++j) {
            if (F[j].max_magnitude() <= k - 1) {
                coeffs[j] = SpanTerm{true, F[j].max_magnitude(), 1};
                break;
            }
        }
    }
    return coeffs;
}

bool span_contains(const FuncBlockSeq& F, SpanMode mode, const FiniteFunction& g) {
    return span_decompose(F, mode, g).has_value();
}

std::vector<FuncBlockSeq> enumerate_func_block_subseqs(const FuncBlockSeq& F, std::size_t d, SpanMode mode) {
    if (d == 0)
        throw std::invalid_argument("block subsequence length must be positive");
    const std::vector<FiniteFunction> elems = span(F, mode);
    std::vector<int> lo, hi;
    for (const auto& e : elems) {
        lo.push_back(e.is_zero() ? -1 : min_support(e));
        hi.push_back(e.is_zero() ? -1 : max_support(e));
    }
    std::vector<FuncBlockSeq> out;
    std::vector<std::size_t> pick;
    std::function<void(int)> rec = [&](int prev_max) {
        if (pick.size() == d) {
            std::vector<FiniteFunction> fs;
            for (std::size_t p : pick)
                fs.push_back(elems[p]);
            out.emplace_back(std::move(fs));
            return;
        }
        for (std::size_t p = 0; p < elems.size(); ++p) {
            if (lo[p] < 0 || lo[p] <= prev_max)
                continue;
            pick.push_back(p);
            rec(hi[p]);
            pick.pop_back();
        }
    };
    rec(-1);
    return out;
}

// ---------------------------------------------------------------------------
// s-relative support

std::optional<FiniteFunction> represent_over(const FiniteFunction& f, const SetBlockSeq& s) {
    if (f.length() != s.ambient() || s.size() == 0)
        return std::nullopt;
    std::vector<bool> covered(f.length(), false);
    std::vector<int> g(s.size(), 0);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const int v = f[static_cast<std::size_t>(s[i].front())];
        for (int x : s[i]) {
            covered[static_cast<std::size_t>(x)] = true;
            if (f[static_cast<std::size_t>(x)] != v)
                return std::nullopt;
        }
        g[i] = v;
    }
    for (std::size_t x = 0; x < f.length(); ++x)
        if (!covered[x] && f[x] != 0)
            return std::nullopt;
    return FiniteFunction(f.k(), f.is_signed(), std::move(g));
}

IndexSet s_support(const FiniteFunction& f, const SetBlockSeq& s) {
    auto g = represent_over(f, s);
    if (!g)
        throw std::invalid_argument("function is not representable over the set sequence");
    return support(*g);
}

namespace {

std::pair<int, int> s_extent(const FiniteFunction& f, const SetBlockSeq& s) {
    if (f.length() != s.ambient() || s.size() == 0)
        throw std::invalid_argument("function is not representable over the set sequence");
    int lo = -1, hi = -1;
    std::size_t inside = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const int v = f[static_cast<std::size_t>(s[i].front())];
        for (int x : s[i])
            if (f[static_cast<std::size_t>(x)] != v)
                throw std::invalid_argument("function is not representable over the set sequence");
        inside += s[i].size();
        if (v != 0) {
            if (lo < 0)
                lo = static_cast<int>(i);
            hi = static_cast<int>(i);
        }
    }
    // Nonzero values off the blocks make f unrepresentable.
    if (inside != f.length()) {
        std::size_t nonzero = 0, nonzero_inside = 0;
        for (std::size_t x = 0; x < f.length(); ++x)
            nonzero += f[x] != 0;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (f[static_cast<std::size_t>(s[i].front())] != 0)
                nonzero_inside += s[i].size();
        if (nonzero != nonzero_inside)
            throw std::invalid_argument("function is not representable over the set sequence");
    }
    if (lo < 0)
        throw std::invalid_argument("zero function has no s-support");
    return {lo, hi};
}

}  // namespace

bool displacement_at_most_one(const FiniteFunction& a, const FiniteFunction& b, const SetBlockSeq& s) {
    const auto [amin, amax] = s_extent(a, s);
    const auto [bmin, bmax] = s_extent(b, s);
    return amin <= bmin && bmin <= amin + 1 && amax <= bmax && bmax <= amax + 1;
}

bool displacement_at_most_one(const FuncBlockSeq& a, const FuncBlockSeq& b, const SetBlockSeq& s) {
    if (a.size() != b.size())
        throw std::invalid_argument("sequences of different length");
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!displacement_at_most_one(a[i], b[i], s))
            return false;
    return true;
}

bool is_s_skipped(const FuncBlockSeq& F, const SetBlockSeq& s) {
    int prev_max = -2;
    bool first = true;
    for (const auto& f : F.funcs()) {
        const auto [lo, hi] = s_extent(f, s);
        if (!first && prev_max + 1 >= lo)
            return false;
        first = false;
        prev_max = hi;
    }
    return true;
}

int sup_metric(const FuncBlockSeq& a, const FuncBlockSeq& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("sequences of different length");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, sup_metric(a[i], b[i]));
    return d;
}

}  // namespace gowers
