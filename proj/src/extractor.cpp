#include "gowers/extractor.hpp"

#include <bit>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "extractor_detail.hpp"
#include "gowers/types.hpp"
#include "gowers/witness_check.hpp"

namespace gowers {

std::string to_string(Outcome o) {
    switch (o) {
    case Outcome::Found:
        return "found";
    case Outcome::Absent:
        return "absent";
    case Outcome::BudgetExhausted:
        return "budget-exhausted";
    }
    return "?";
}

namespace detail {

namespace {

struct MaskTupleHash {
    std::size_t operator()(const std::vector<PositionMask>& v) const {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (PositionMask x : v) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

bool disjoint(const FiniteFunction& a, const FiniteFunction& b) {
    for (std::size_t i = 0; i < a.length(); ++i)
        if (a[i] != 0 && b[i] != 0)
            return false;
    return true;
}

}  // namespace

std::optional<MtHit> mt_engine(std::size_t len, std::size_t d, std::size_t target, const MaskColor& color,
                               Budget& budget) {
    if (d == 0 || d > target)
        throw std::invalid_argument("mt search needs 1 <= d <= m");
    if (len > 62)
        throw std::invalid_argument("mt search supports at most 62 base positions");
    if (target > len)
        return std::nullopt;

    // groups[j]: the d-tuples over target positions that first become
    // available once position j is chosen.
    std::vector<std::vector<std::vector<PositionMask>>> groups(target);
    for_each_block_masks(target, d, [&](const std::vector<PositionMask>& tup) {
        groups[static_cast<std::size_t>(std::bit_width(tup.back())) - 1].push_back(tup);
        return true;
    });

    std::unordered_map<std::vector<PositionMask>, int, MaskTupleHash> memo;
    std::vector<PositionMask> t;
    std::vector<PositionMask> translated(d);
    int mono = 0;

    auto colour_of = [&](const std::vector<PositionMask>& tup) {
        for (std::size_t i = 0; i < d; ++i) {
            PositionMask u = 0;
            for (PositionMask rest = tup[i]; rest != 0; rest &= rest - 1)
                u |= t[static_cast<std::size_t>(std::countr_zero(rest))];
            translated[i] = u;
        }
        if (auto it = memo.find(translated); it != memo.end())
            return it->second;
        const int v = color(translated);
        memo.emplace(translated, v);
        return v;
    };

    std::function<bool(std::size_t, std::size_t)> dfs = [&](std::size_t j, std::size_t lo) -> bool {
        const std::size_t remaining = target - j - 1;
        const PositionMask limit = PositionMask{1} << (len - lo);
        for (PositionMask x = 1; x < limit; ++x) {
            const std::size_t top = lo + static_cast<std::size_t>(std::bit_width(x)) - 1;
            if (len - top - 1 < remaining)
                break;
            budget.spend();
            t.push_back(x << lo);
            const int saved = mono;
            bool ok = true;
            for (const auto& tup : groups[j]) {
                const int col = colour_of(tup);
                if (mono == 0) {
                    mono = col;
                } else if (col != mono) {
                    ok = false;
                    break;
                }
            }
            if (ok && (j + 1 == target || dfs(j + 1, top + 1)))
                return true;
            t.pop_back();
            mono = saved;
        }
        return false;
    };

    if (!dfs(0, 0))
        return std::nullopt;
    return MtHit{t, mono};
}

std::optional<SetBlockSeq> canonize_impl(std::size_t n, int k, std::size_t m, bool is_signed, const FnColor& c,
                                         Budget& budget) {
    const std::vector<GType> types = enumerate_types_upto(k, m, is_signed);
    const SetBlockSeq base = SetBlockSeq::singletons(n);
    Interner intern;
    MaskColor derived = [&](const std::vector<PositionMask>& masks) {
        const SetBlockSeq t = base.select(masks);
        std::vector<int> v;
        v.reserve(types.size());
        for (const GType& phi : types)
            v.push_back(c(map_onto(phi, t.prefix(phi.size()))));
        return intern(v);
    };
    const Domain dom = is_signed ? Domain::signed_sphere(n, k) : Domain::pos_sphere(n, k);
    auto canonical = [&](const SetBlockSeq& s) { return is_type_canonical(wrap(c, dom), s, k, is_signed); };
    if (2 * m - 1 <= n) {
        if (auto hit = mt_engine(n, m, 2 * m - 1, derived, budget)) {
            SetBlockSeq s = base.select(hit->masks).prefix(m);
            if (!canonical(s))
                throw std::logic_error("type canonicalization produced a non-canonical sequence");
            return s;
        }
    }
    return first_block_seq(n, m, canonical, budget);
}

std::optional<SetBlockSeq> first_block_seq(std::size_t n, std::size_t m,
                                           const std::function<bool(const SetBlockSeq&)>& accept, Budget& budget) {
    if (m > n)
        return std::nullopt;
    const SetBlockSeq base = SetBlockSeq::singletons(n);
    std::optional<SetBlockSeq> found;
    for_each_block_masks(n, m, [&](const std::vector<PositionMask>& masks) {
        budget.spend();
        SetBlockSeq s = base.select(masks);
        if (!accept(s))
            return true;
        found = std::move(s);
        return false;
    });
    return found;
}

std::optional<FuncBlockSeq> make_insensitive_impl(std::size_t n, int k, std::size_t m, const FnColor& c,
                                                  Budget& budget) {
    std::optional<FuncBlockSeq> F;
    if (k == 1) {
        const SetBlockSeq base = SetBlockSeq::singletons(n);
        MaskColor col = [&](const std::vector<PositionMask>& masks) {
            return c(char_fn(base.union_of(masks.front()), n, 1, 1, false));
        };
        auto hit = mt_engine(n, 1, m, col, budget);
        if (!hit)
            return std::nullopt;
        std::vector<FiniteFunction> fs;
        for (PositionMask x : hit->masks)
            fs.push_back(char_fn(base.union_of(x), n, 1, 1, false));
        F = FuncBlockSeq(std::move(fs));
    } else {
        auto s = canonize_impl(n, k, m * static_cast<std::size_t>(2 * k - 1), false, c, budget);
        if (!s)
            return std::nullopt;
        F = pyramid_sequence(*s, k, m);
    }
    if (!is_insensitive(wrap(c, Domain::pos_sphere(n, k)), *F, k))
        throw std::logic_error("pyramid sequence is not insensitive");
    return F;
}

std::optional<SeqHit> extract_positive_impl(std::size_t n, int k, std::size_t m, const FnColor& c, Budget& budget) {
    if (k == 1) {
        const SetBlockSeq base = SetBlockSeq::singletons(n);
        MaskColor col = [&](const std::vector<PositionMask>& masks) {
            return c(char_fn(base.union_of(masks.front()), n, 1, 1, false));
        };
        auto hit = mt_engine(n, 1, m, col, budget);
        if (!hit)
            return std::nullopt;
        std::vector<FiniteFunction> fs;
        for (PositionMask x : hit->masks)
            fs.push_back(char_fn(base.union_of(x), n, 1, 1, false));
        return SeqHit{FuncBlockSeq(std::move(fs)), hit->color};
    }
    const std::size_t width = static_cast<std::size_t>(2 * k - 1);
    for (std::size_t M = m; M * width <= n; ++M) {
        auto Fp = make_insensitive_impl(n, k, M, c, budget);
        if (!Fp)
            continue;
        const FuncBlockSeq base = *Fp;
        FnColor induced = cached<FiniteFunction>([&c, base](const FiniteFunction& g) { return c(q_map(base, g)); });
        auto inner = extract_positive_impl(M, k - 1, m, induced, budget);
        if (!inner)
            continue;
        std::vector<FiniteFunction> fs;
        for (const FiniteFunction& g : inner->F.funcs())
            fs.push_back(q_map(base, g));
        FuncBlockSeq F(std::move(fs));
        const int colour = c(F[0]);
        if (!check_positive_witness(wrap(c, Domain::pos_sphere(n, k)), k, m, F, colour))
            throw std::logic_error("positive extraction produced a non-monochromatic span");
        return SeqHit{F, colour};
    }
    return std::nullopt;
}

}  // namespace detail

using namespace detail;

namespace {

void require_sizes(std::size_t d, std::size_t m, std::size_t n) {
    if (d < 1 || m < d || n < 1)
        throw std::invalid_argument("parameters must satisfy 1 <= d <= m and n >= 1");
    if (m > n)
        throw std::invalid_argument("m must not exceed n");
}

void require_k(int k) {
    if (k < 1)
        throw std::invalid_argument("k must be positive");
}

}  // namespace

ExtractionReport<SetBlockSeq> mt_search(const SetBlockSeq& s, std::size_t d, std::size_t m, const SetSeqColoring& c,
                                        const SearchOptions& opts) {
    require_domain(c, Domain::set_blocks(s, d));
    if (d < 1 || m < d || m > s.size())
        throw std::invalid_argument("mt_search needs 1 <= d <= m <= length(s)");
    return run_stage<SetBlockSeq, MtHit>(
        opts,
        [&](Budget& budget) {
            MaskColor col = [&](const std::vector<PositionMask>& masks) { return c(s.select(masks)); };
            return mt_engine(s.size(), d, m, col, budget);
        },
        [&](const MtHit& hit, ExtractionReport<SetBlockSeq>& r) {
            r.witness = s.select(hit.masks);
            r.color = hit.color;
        });
}

namespace {

ExtractionReport<SetBlockSeq> canonize_public(std::size_t n, int k, std::size_t m, bool is_signed,
                                              const FunctionColoring& c, const SearchOptions& opts) {
    require_k(k);
    require_domain(c, is_signed ? Domain::signed_sphere(n, k) : Domain::pos_sphere(n, k));
    require_sizes(1, m, n);
    const FunctionColoring mc = memoized(c);
    return run_stage<SetBlockSeq, SetBlockSeq>(
        opts, [&](Budget& budget) { return canonize_impl(n, k, m, is_signed, FnColor(mc), budget); },
        [](const SetBlockSeq& s, ExtractionReport<SetBlockSeq>& r) { r.witness = s; });
}

}  // namespace

ExtractionReport<SetBlockSeq> canonize_types(std::size_t n, int k, std::size_t m, const FunctionColoring& c,
                                             const SearchOptions& opts) {
    return canonize_public(n, k, m, false, c, opts);
}

ExtractionReport<SetBlockSeq> canonize_signed_types(std::size_t n, int k, std::size_t m, const FunctionColoring& c,
                                                    const SearchOptions& opts) {
    return canonize_public(n, k, m, true, c, opts);
}

FuncBlockSeq pyramid_sequence(const SetBlockSeq& s, int k, std::size_t m) {
    require_k(k);
    const std::size_t width = static_cast<std::size_t>(2 * k - 1);
    if (m < 1 || s.size() != m * width)
        throw std::invalid_argument("pyramid_sequence needs length(s) = m(2k-1)");
    const std::size_t n = s.ambient();
    std::vector<FiniteFunction> fs;
    for (std::size_t i = 0; i < m; ++i) {
        const int centre = static_cast<int>(i * width) + k - 1;
        std::vector<int> values(n, 0);
        for (int q = -(k - 1); q <= k - 1; ++q)
            for (int x : s[static_cast<std::size_t>(centre + q)])
                values[static_cast<std::size_t>(x)] = k - std::abs(q);
        fs.emplace_back(k, false, std::move(values));
    }
    return FuncBlockSeq(std::move(fs));
}

bool is_insensitive(const FunctionColoring& c, const FuncBlockSeq& F, int k) {
    const std::vector<FiniteFunction> elems = span(F, SpanMode::PosStrict);
    for (const FiniteFunction& f : elems) {
        const int base = c(f);
        for (const FiniteFunction& g : elems) {
            if (!disjoint(f, g))
                continue;
            if (c(add_disjoint(f, tetris_pow(g, k - 1))) != base)
                return false;
        }
    }
    return true;
}

ExtractionReport<FuncBlockSeq> make_insensitive(std::size_t n, int k, std::size_t m, const FunctionColoring& c,
                                                const SearchOptions& opts) {
    require_k(k);
    require_domain(c, Domain::pos_sphere(n, k));
    require_sizes(1, m, n);
    const FunctionColoring mc = memoized(c);
    return run_stage<FuncBlockSeq, FuncBlockSeq>(
        opts, [&](Budget& budget) { return make_insensitive_impl(n, k, m, FnColor(mc), budget); },
        [](const FuncBlockSeq& F, ExtractionReport<FuncBlockSeq>& r) { r.witness = F; });
}

FiniteFunction q_map(const FuncBlockSeq& Fp, const FiniteFunction& g) {
    const int k = Fp.k();
    if (g.length() != Fp.size())
        throw std::invalid_argument("q_map: g must have one coordinate per element of F'");
    FiniteFunction out = FiniteFunction::zero(Fp.ambient(), k, Fp.is_signed());
    for (std::size_t i = 0; i < g.length(); ++i) {
        const int v = g[i];
        if (v < 0 || v > k - 1)
            throw std::invalid_argument("q_map: values of g must lie in 0..k-1");
        if (v != 0)
            out = add_disjoint(out, tetris_pow(Fp[i], k - 1 - v));
    }
    return out;
}

FiniteFunction basis_embed(const FuncBlockSeq& F, const FiniteFunction& g) {
    const int k = F.k();
    if (g.length() != F.size())
        throw std::invalid_argument("basis_embed: g must have one coordinate per element of F");
    FiniteFunction out = FiniteFunction::zero(F.ambient(), k, F.is_signed());
    for (std::size_t i = 0; i < g.length(); ++i) {
        const int v = g[i];
        if (v < 0 || v > k)
            throw std::invalid_argument("basis_embed: values of g must lie in 0..k");
        if (v != 0)
            out = add_disjoint(out, tetris_pow(F[i], k - v));
    }
    return out;
}

ExtractionReport<FuncBlockSeq> extract_positive(std::size_t n, int k, std::size_t m, const FunctionColoring& c,
                                                const SearchOptions& opts) {
    require_k(k);
    require_domain(c, Domain::pos_sphere(n, k));
    require_sizes(1, m, n);
    const FunctionColoring mc = memoized(c);
    return run_stage<FuncBlockSeq, SeqHit>(
        opts, [&](Budget& budget) { return extract_positive_impl(n, k, m, FnColor(mc), budget); },
        [](const SeqHit& hit, ExtractionReport<FuncBlockSeq>& r) {
            r.witness = hit.F;
            r.color = hit.color;
        });
}

ExtractionReport<FuncBlockSeq> direct_search_positive(std::size_t n, int k, std::size_t m, const FunctionColoring& c,
                                                      const SearchOptions& opts) {
    require_k(k);
    require_domain(c, Domain::pos_sphere(n, k));
    require_sizes(1, m, n);
    const std::vector<FiniteFunction> sphere = enumerate_sphere(n, k, false);
    std::vector<int> lo(sphere.size()), hi(sphere.size());
    std::vector<std::vector<FiniteFunction>> powers(sphere.size());
    for (std::size_t i = 0; i < sphere.size(); ++i) {
        lo[i] = min_support(sphere[i]);
        hi[i] = max_support(sphere[i]);
        for (int e = 0; e < k; ++e)
            powers[i].push_back(tetris_pow(sphere[i], e));
    }

    struct Elem {
        FiniteFunction f;
        bool strict;
    };

    return run_stage<FuncBlockSeq, SeqHit>(
        opts,
        [&](Budget& budget) -> std::optional<SeqHit> {
            std::vector<Elem> pool;
            std::vector<std::size_t> chosen;
            int mono = 0;
            std::function<bool(int)> dfs = [&](int from) -> bool {
                const std::size_t depth = chosen.size();
                for (std::size_t idx = 0; idx < sphere.size(); ++idx) {
                    if (lo[idx] < from)
                        continue;
                    if (static_cast<std::size_t>(static_cast<int>(n) - hi[idx] - 1) < m - depth - 1)
                        continue;
                    budget.spend();
                    const std::size_t before = pool.size();
                    const int saved = mono;
                    bool ok = true;
                    auto admit = [&](FiniteFunction f, bool strict) {
                        if (strict) {
                            const int col = c(f);
                            if (mono == 0)
                                mono = col;
                            else if (col != mono)
                                ok = false;
                        }
                        pool.push_back(Elem{std::move(f), strict});
                    };
                    for (int e = 0; e < k && ok; ++e) {
                        admit(powers[idx][static_cast<std::size_t>(e)], e == 0);
                        for (std::size_t p = 0; p < before && ok; ++p)
                            admit(add_disjoint(pool[p].f, powers[idx][static_cast<std::size_t>(e)]),
                                  pool[p].strict || e == 0);
                    }
                    if (ok) {
                        chosen.push_back(idx);
                        if (chosen.size() == m || dfs(hi[idx] + 1))
                            return true;
                        chosen.pop_back();
                    }
                    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(before), pool.end());
                    mono = saved;
                }
                return false;
            };
            if (!dfs(0))
                return std::nullopt;
            std::vector<FiniteFunction> fs;
            for (std::size_t idx : chosen)
                fs.push_back(sphere[idx]);
            return SeqHit{FuncBlockSeq(std::move(fs)), mono};
        },
        [](const SeqHit& hit, ExtractionReport<FuncBlockSeq>& r) {
            r.witness = hit.F;
            r.color = hit.color;
        });
}

}  // namespace gowers
