// Acceptance suite: one PASS/FAIL line per criterion.

#include <array>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include "gowers/bounds.hpp"
#include "gowers/coloring.hpp"
#include "gowers/extractor.hpp"
#include "gowers/types.hpp"
#include "gowers/verifier.hpp"
#include "gowers/witness_check.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace gowers;
using oracle::Vec;

namespace {

struct Criterion {
    bool pass = true;
    std::string detail;
    std::uint64_t checks = 0;
    std::string first_failure;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok && pass)
            first_failure = what;
        pass = pass && ok;
    }
};

Vec vals(const FiniteFunction& f) { return {f.values().begin(), f.values().end()}; }

std::string show(const Vec& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? "," : "") + std::to_string(v[i]);
    return out;
}

long ipow(long b, long e) {
    long out = 1;
    while (e-- > 0)
        out *= b;
    return out;
}

// ---------------------------------------------------------------------------

Criterion decomposition_round_trip() {
    Criterion o;
    std::size_t largest = 0;
    for (int k = 1; k <= 2; ++k)
        for (std::size_t n = 1; n <= 6; ++n) {
            const auto sphere = enumerate_sphere(n, k, true);
            o.expect(sphere.size() == oracle::sphere(n, k, true).size(), "sphere size");
            largest = std::max(largest, sphere.size());
            for (const auto& f : sphere) {
                const auto [t, b] = type_of(f);
                o.expect(map_onto(t, b) == f, "round trip " + f.encode());
                o.expect(t.word() == oracle::type_word(vals(f)), "type word " + f.encode());
            }
            // Uniqueness: (type, block sequence) pairs hit every f exactly once.
            std::map<FiniteFunction, int> hits;
            for (std::size_t d = 1; d <= n; ++d) {
                const auto types = enumerate_types(k, d, true);
                for (const auto& b : enumerate_block_subseqs(SetBlockSeq::singletons(n), d))
                    for (const auto& t : types)
                        ++hits[map_onto(t, b)];
            }
            o.expect(hits.size() == sphere.size(), "image size");
            for (const auto& f : sphere) {
                auto it = hits.find(f);
                o.expect(it != hits.end() && it->second == 1, "unique decomposition " + f.encode());
            }
        }
    o.detail = "k<=2 n<=6, largest sphere " + std::to_string(largest);
    return o;
}

Criterion type_count_bounds() {
    Criterion o;
    std::string equal;
    for (int k = 1; k <= 3; ++k)
        for (std::size_t d = 1; d <= 6; ++d) {
            const long ld = static_cast<long>(d);
            const long pos = static_cast<long>(enumerate_types(k, d, false).size());
            const long sgn = static_cast<long>(enumerate_types(k, d, true).size());
            o.expect(pos == static_cast<long>(oracle::types(k, d, false).size()), "positive count vs oracle");
            o.expect(sgn == static_cast<long>(oracle::types(k, d, true).size()), "signed count vs oracle");
            const long pos_bound = ld * ipow(k - 1, ld - 1);
            const long sgn_bound = 2 * ld * ipow(2 * k - 1, ld - 1);
            o.expect(pos <= pos_bound, "positive bound k=" + std::to_string(k) + " d=" + std::to_string(d));
            o.expect(sgn <= sgn_bound, "signed bound k=" + std::to_string(k) + " d=" + std::to_string(d));
            if (pos == pos_bound)
                equal += " +(" + std::to_string(k) + "," + std::to_string(d) + ")";
            if (sgn == sgn_bound)
                equal += " +-(" + std::to_string(k) + "," + std::to_string(d) + ")";
        }
    o.detail = "equality at" + (equal.empty() ? std::string(" none") : equal);
    return o;
}

// Blocks {w*i, ..., w*i+w-1} below w*len.
SetBlockSeq wide_blocks(std::size_t len, std::size_t w) {
    std::vector<IndexSet> sets;
    for (std::size_t i = 0; i < len; ++i) {
        IndexSet b;
        for (std::size_t j = 0; j < w; ++j)
            b.push_back(static_cast<int>(w * i + j));
        sets.push_back(b);
    }
    return SetBlockSeq(sets, w * len);
}

// Pull a per-block value vector back to the ambient positions of s.
Vec spread(const Vec& per_block, const SetBlockSeq& s) {
    Vec out(s.ambient(), 0);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (int x : s[i])
            out[static_cast<std::size_t>(x)] = per_block[i];
    return out;
}

Vec q_oracle(int delta, int ell, const SetBlockSeq& s) {
    Vec per(s.size(), 0);
    for (int j = -(delta - 1); j <= delta - 1; ++j)
        per[static_cast<std::size_t>(ell + j)] = (j % 2 == 0 ? 1 : -1) * (delta - std::abs(j));
    return spread(per, s);
}

std::pair<int, int> extent_oracle(const Vec& per_block) {
    const auto sp = oracle::supp(per_block);
    return {sp.front(), sp.back()};
}

int sup_oracle(const Vec& a, const Vec& b) {
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

Criterion pyramid_properties() {
    Criterion o;
    std::uint64_t pairs = 0;
    for (int k = 1; k <= 3; ++k)
        for (std::size_t len = 1; len <= 12; ++len)
            for (std::size_t w : {1, 2}) {
                const SetBlockSeq s = wide_blocks(len, w);
                const int L = static_cast<int>(len);
                for (int delta = 1; delta <= k; ++delta)
                    for (int ell = delta - 1; ell + delta - 1 < L; ++ell) {
                        const FiniteFunction q = q_delta(delta, ell, s, k);
                        o.expect(vals(q) == q_oracle(delta, ell, s), "q expansion");
                        const FiniteFunction lower = q_delta(delta - 1, ell, s, k);
                        o.expect(vals(tetris(q)) == vals(lower), "T(q) = q(delta-1)");
                        o.expect(vals(lower) == (delta > 1 ? q_oracle(delta - 1, ell, s) : Vec(s.ambient(), 0)),
                                 "q(delta-1) expansion");
                        o.expect(oracle::tetris(vals(q)) == vals(lower), "oracle T(q)");
                        if (ell + delta >= L)
                            continue;
                        const FiniteFunction a = negate(q);
                        const FiniteFunction b = q_delta(delta, ell + 1, s, k);
                        ++pairs;
                        o.expect(displacement_at_most_one(a, b, s), "pair displacement");
                        o.expect(sup_metric(a, b) == 1, "pair sup metric");
                        const Vec pa = q_oracle(delta, ell, SetBlockSeq::singletons(len));
                        const Vec pb = q_oracle(delta, ell + 1, SetBlockSeq::singletons(len));
                        const auto [amin, amax] = extent_oracle(pa);
                        const auto [bmin, bmax] = extent_oracle(pb);
                        o.expect(amin <= bmin && bmin <= amin + 1 && amax <= bmax && bmax <= amax + 1,
                                 "oracle displacement");
                        o.expect(sup_oracle(oracle::tetris(pa, 0), pb) != 0, "distinct");
                        Vec neg = pa;
                        for (int& x : neg)
                            x = -x;
                        o.expect(sup_oracle(neg, pb) == 1, "oracle sup metric");
                    }
            }
    o.detail = std::to_string(pairs) + " (-q, q') pairs";
    return o;
}

Criterion summed_displacement() {
    Criterion o;
    std::uint64_t tuples = 0;
    for (int k = 1; k <= 2; ++k)
        for (std::size_t len = 1; len <= 6; ++len)
            for (std::size_t w : {1, 2}) {
                if (w == 2 && len > 4)
                    continue;
                const SetBlockSeq s = wide_blocks(len, w);
                // Nonzero functions over s, grouped by s-extent.
                std::map<std::pair<int, int>, std::vector<FiniteFunction>> by_extent;
                for (const Vec& per : oracle::all_vectors(len, -k, k))
                    if (oracle::max_abs(per) > 0)
                        by_extent[extent_oracle(per)].emplace_back(k, true, spread(per, s));
                auto partners = [&](std::pair<int, int> e) {
                    std::vector<const FiniteFunction*> out;
                    for (int lo : {e.first, e.first + 1})
                        for (int hi : {e.second, e.second + 1}) {
                            auto it = by_extent.find({lo, hi});
                            if (it != by_extent.end())
                                for (const auto& g : it->second)
                                    out.push_back(&g);
                        }
                    return out;
                };
                // d = 1: the partner relation itself.
                for (const auto& [e, fs] : by_extent) {
                    const auto ps = partners(e);
                    for (const auto& f : fs)
                        for (const FiniteFunction* g : ps) {
                            ++tuples;
                            if (!displacement_at_most_one(f, *g, s))
                                o.expect(false, "d=1 displacement " + f.encode() + " / " + g->encode());
                        }
                }
                // d = 2: s-skipped (f0, f1) with partners (g0, g1).
                for (const auto& [e0, f0s] : by_extent)
                    for (const auto& [e1, f1s] : by_extent) {
                        if (e0.second + 1 >= e1.first)
                            continue;
                        const auto p0 = partners(e0);
                        const auto p1 = partners(e1);
                        for (const auto& f0 : f0s)
                            for (const auto& f1 : f1s) {
                                const FiniteFunction S = add_disjoint(f0, f1);
                                for (const FiniteFunction* g0 : p0) {
                                    const bool close0 = sup_metric(f0, *g0) <= 1;
                                    for (const FiniteFunction* g1 : p1) {
                                        ++tuples;
                                        const bool block = max_support(*g0) < min_support(*g1);
                                        if (!block) {
                                            o.expect(false, "partners not block");
                                            continue;
                                        }
                                        const FiniteFunction S2 = add_disjoint(*g0, *g1);
                                        if (!displacement_at_most_one(S, S2, s))
                                            o.expect(false, "sum displacement " + S.encode() + " / " + S2.encode());
                                        if (close0 && sup_metric(f1, *g1) <= 1 && sup_metric(S, S2) > 1)
                                            o.expect(false, "sum sup metric " + S.encode() + " / " + S2.encode());
                                    }
                                }
                            }
                    }
            }
    o.checks = tuples;
    o.detail = std::to_string(tuples) + " tuples";
    return o;
}

Criterion exact_numbers() {
    Criterion o;
    auto run = [](ExactKind kind, int k, std::size_t d, std::size_t m, int r) {
        ExactQuery q;
        q.kind = kind;
        q.k = k;
        q.d = d;
        q.m = m;
        q.r = r;
        return exact_number(q);
    };
    for (int r = 1; r <= 4; ++r) {
        const auto rep = run(ExactKind::MT, 1, 1, 1, r);
        o.expect(rep.value == std::optional<std::size_t>(1), "MT(1,1," + std::to_string(r) + ") = 1");
    }
    std::ifstream in(GOWERS_TEST_DATA "/exact_regression.json");
    const nlohmann::json data = nlohmann::json::parse(in);
    const std::size_t stored = data.at("MT:k=1,d=1,m=2,r=2").at("value").get<std::size_t>();
    const auto mt = run(ExactKind::MT, 1, 1, 2, 2);
    o.expect(mt.value == std::optional<std::size_t>(stored), "MT(1,2,2) matches the regression file");
    o.expect(mt.closure_holds == std::optional<bool>(true) && mt.refuted_below == stored, "MT(1,2,2) certificate");
    const auto g = run(ExactKind::G, 1, 1, 2, 2);
    o.expect(g.value == mt.value, "G(1,2,2) = MT(1,2,2)");
    for (int k = 1; k <= 2; ++k)
        for (int r = 1; r <= 3; ++r)
            o.expect(run(ExactKind::G, k, 1, 1, r).value == std::optional<std::size_t>(1),
                     "G(" + std::to_string(k) + ",1," + std::to_string(r) + ") = 1");
    o.detail = "MT(1,2,2) = G(1,2,2) = " + (mt.value ? std::to_string(*mt.value) : std::string("?"));
    return o;
}

// ---------------------------------------------------------------------------
// Extractor soundness.

// Materialize a built-in oracle as a lookup table.
template <class Element>
Coloring<Element> as_table(const Coloring<Element>& c) {
    return table_coloring<Element>(c.domain(), c.colors(), tabulate(c));
}

std::vector<std::string> oracle_ids(int count) {
    std::vector<std::string> ids;
    for (int i = 0; i < count; ++i) {
        ids.push_back("random:" + std::to_string(i));
        ids.push_back("random-by-type:" + std::to_string(i));
    }
    return ids;
}

struct Tally {
    std::uint64_t runs = 0, found = 0;
};

Criterion extractor_soundness() {
    Criterion o;
    const auto ids = oracle_ids(200);
    std::map<std::string, Tally> tally;
    auto note = [&](const std::string& cfg, bool found) {
        ++tally[cfg].runs;
        tally[cfg].found += found;
    };
    struct Cfg {
        int k;
        std::size_t m;
        int r;
        std::size_t n;
    };
    for (const Cfg& g : {Cfg{1, 2, 2, 5}, Cfg{1, 2, 3, 6}, Cfg{2, 1, 2, 4}, Cfg{2, 2, 2, 6}, Cfg{3, 1, 2, 5}}) {
        const Domain dom = Domain::pos_sphere(g.n, g.k);
        const std::string cfg = "positive k=" + std::to_string(g.k) + " m=" + std::to_string(g.m) +
                                " r=" + std::to_string(g.r) + " n=" + std::to_string(g.n);
        for (const auto& id : ids) {
            const auto c = as_table(builtin_function_coloring(id, dom, g.r));
            const auto rep = extract_positive(g.n, g.k, g.m, c);
            note(cfg, rep.found());
            if (!rep.found())
                continue;
            o.expect(check_positive_witness(c, g.k, g.m, *rep.witness, rep.color), cfg + " " + id);
            std::vector<Vec> F;
            for (const auto& f : rep.witness->funcs())
                F.push_back(vals(f));
            for (const Vec& v : oracle::span(F, g.k, false, true))
                o.expect(c(FiniteFunction(g.k, false, v)) == rep.color, cfg + " " + id + " oracle span");
        }
    }
    for (const Cfg& g : {Cfg{1, 1, 2, 4}, Cfg{1, 2, 2, 8}, Cfg{2, 1, 2, 4}, Cfg{1, 1, 3, 6}}) {
        const Domain dom = Domain::signed_sphere(g.n, g.k);
        const std::string cfg = "signed k=" + std::to_string(g.k) + " m=" + std::to_string(g.m) +
                                " r=" + std::to_string(g.r) + " n=" + std::to_string(g.n);
        for (const auto& id : ids) {
            const auto c = as_table(builtin_function_coloring(id, dom, g.r));
            const auto rep = extract_signed(g.n, g.k, g.m, c);
            note(cfg, rep.found());
            if (rep.found())
                o.expect(check_signed_witness(c, g.k, g.m, rep.witness->s, rep.witness->F, rep.color), cfg + " " + id);
        }
    }
    struct MCfg {
        int k;
        std::size_t d, m;
        int r;
        std::size_t n;
    };
    for (const MCfg& g : {MCfg{1, 2, 2, 2, 4}, MCfg{1, 2, 2, 2, 5}, MCfg{2, 2, 2, 2, 4}}) {
        const Domain dom = Domain::pos_blocks(g.n, g.k, g.d);
        const std::string cfg = "multidim k=" + std::to_string(g.k) + " d=" + std::to_string(g.d) +
                                " m=" + std::to_string(g.m) + " r=" + std::to_string(g.r) + " n=" + std::to_string(g.n);
        for (const auto& id : ids) {
            const auto c = as_table(builtin_sequence_coloring(id, dom, g.r));
            const auto rep = extract_multidim_positive(g.n, g.k, g.d, g.m, c);
            note(cfg, rep.found());
            if (rep.found())
                o.expect(check_multidim_positive_witness(c, g.k, g.d, g.m, *rep.witness, rep.color), cfg + " " + id);
        }
    }
    for (const MCfg& g : {MCfg{1, 1, 1, 2, 4}, MCfg{1, 2, 2, 2, 5}}) {
        const Domain dom = Domain::signed_blocks(g.n, g.k, g.d);
        const std::string cfg = "multidim-signed k=" + std::to_string(g.k) + " d=" + std::to_string(g.d) +
                                " m=" + std::to_string(g.m) + " r=" + std::to_string(g.r) + " n=" + std::to_string(g.n);
        for (const auto& id : ids) {
            const auto c = as_table(builtin_sequence_coloring(id, dom, g.r));
            const auto rep = extract_multidim_signed(g.n, g.k, g.d, g.m, c);
            note(cfg, rep.found());
            if (rep.found())
                o.expect(check_multidim_signed_witness(c, g.k, g.d, g.m, rep.witness->s, rep.witness->F, rep.color),
                         cfg + " " + id);
        }
    }
    for (const MCfg& g : {MCfg{0, 1, 2, 2, 6}, MCfg{0, 2, 2, 2, 5}, MCfg{0, 1, 3, 2, 7}}) {
        const SetBlockSeq s = SetBlockSeq::singletons(g.n);
        const Domain dom = Domain::set_blocks(s, g.d);
        const std::string cfg = "mt d=" + std::to_string(g.d) + " m=" + std::to_string(g.m) +
                                " r=" + std::to_string(g.r) + " n=" + std::to_string(g.n);
        // Set sequences carry no type, so only the hashed family applies.
        for (int seed = 0; seed < 400; ++seed) {
            const std::string id = "random:" + std::to_string(seed);
            const auto c = as_table(builtin_set_coloring(id, dom, g.r));
            const auto rep = mt_search(s, g.d, g.m, c);
            note(cfg, rep.found());
            if (rep.found())
                o.expect(check_mt_witness(c, s, g.d, g.m, *rep.witness, rep.color), cfg + " " + id);
        }
    }
    std::uint64_t runs = 0, found = 0;
    for (const auto& [cfg, t] : tally) {
        runs += t.runs;
        found += t.found;
    }
    o.expect(found > 0, "some witness returned");
    o.detail = std::to_string(tally.size()) + " configurations, " + std::to_string(runs) + " runs, " +
               std::to_string(found) + " witnesses re-verified";
    return o;
}

// ---------------------------------------------------------------------------

Criterion approximate_witnesses() {
    Criterion o;
    std::uint64_t fs = 0;
    for (int k = 1; k <= 2; ++k)
        for (std::size_t M = 1; M <= 2; ++M)
            for (std::size_t w : {1, 2}) {
                const SetBlockSeq s = wide_blocks(2 * static_cast<std::size_t>(k) * M, w);
                const FuncBlockSeq G = signed_carrier(s, k, M);
                o.expect(is_s_skipped(G, s), "carrier is s-skipped");
                for (std::size_t len = 1; len <= M; ++len)
                    for (const FuncBlockSeq& F : enumerate_func_block_subseqs(G, len, SpanMode::PosStrict)) {
                        std::vector<Vec> Fv;
                        for (const auto& f : F.funcs())
                            Fv.push_back(vals(f));
                        const auto positive = oracle::span(Fv, k, false, true);
                        for (const Vec& fv : oracle::span(Fv, k, true, true)) {
                            ++fs;
                            const FiniteFunction f(k, true, fv);
                            const ApproximateWitness a = approximate_witness(f, F, G, s, k);
                            const std::string tag = "f=" + show(fv) + " F=" + F.encode();
                            o.expect(type_of(a.near).first.word() == type_of(a.positive).first.word(), "same type " + tag);
                            o.expect(sup_oracle(fv, vals(a.near)) <= 1, "distance " + tag);
                            o.expect(represent_over(a.near, s).has_value(), "near over s " + tag);
                            o.expect(represent_over(a.near, s) && displacement_at_most_one(f, a.near, s), "displacement " + tag);
                            o.expect(oracle::supp(fv) == oracle::supp(vals(a.positive)), "support " + tag);
                            o.expect(positive.count(vals(a.positive)) == 1, "f'' in the positive span " + tag);
                        }
                    }
            }
    o.checks = fs;
    o.detail = std::to_string(fs) + " signed span elements";
    return o;
}

int type_length(const FiniteFunction& f) { return static_cast<int>(oracle::type_word(vals(f)).size()); }

Criterion anti_ramsey_degree() {
    Criterion o;
    std::uint64_t seqs = 0;
    for (int K : {2, 3})
        for (std::size_t n : {static_cast<std::size_t>(2 * K), static_cast<std::size_t>(2 * K + 1)}) {
            const NoRamseyReport rep = verify_no_ramsey_degree(n, K);
            o.expect(rep.verdict == Verdict::Holds && rep.witnesses_ok,
                     "verify_no_ramsey_degree n=" + std::to_string(n) + " K=" + std::to_string(K));
            const auto pool = oracle::sphere(n, 1, true);
            for (const auto& Fv : oracle::block_tuples(pool, static_cast<std::size_t>(2 * K))) {
                ++seqs;
                std::vector<FiniteFunction> funcs;
                for (const Vec& v : Fv)
                    funcs.emplace_back(1, true, v);
                const auto h = all_colors_witness(FuncBlockSeq(funcs), K);
                const auto span = oracle::span(Fv, 1, true, true);
                o.expect(h.size() == static_cast<std::size_t>(K), "K witnesses");
                std::set<int> colors;
                for (std::size_t i = 0; i < h.size(); ++i) {
                    o.expect(type_length(h[i]) == type_length(h[0]) + static_cast<int>(i), "|tp(h_i)| = |tp(h_0)| + i");
                    o.expect(span.count(vals(h[i])) == 1, "h_i in the span");
                    colors.insert(static_cast<int>(oracle::type_word(vals(h[i])).size()) % K + 1);
                }
                o.expect(colors.size() == static_cast<std::size_t>(K), "h_i realize all colors");
            }
        }
    o.detail = std::to_string(seqs) + " block sequences";
    return o;
}

Criterion bounds_engine() {
    using namespace bounds;
    Criterion o;
    o.expect(grzegorczyk_E(0, {3, 4}) == 7, "E_0(3,4)");
    o.expect(grzegorczyk_E(1, {3}) == 11, "E_1(3)");
    o.expect(grzegorczyk_E(2, {2}) == 38, "E_2(2)");

    const MTStrategy tiny = MTStrategy::exact_tiny();
    auto dominated = [&](const BoundResult& b, long exact, const std::string& what) {
        o.expect(b.value.has_value() && *b.value >= exact, what);
    };
    for (long r = 1; r <= 4; ++r)
        dominated(bound_MT(1, 1, r, tiny), 1, "MT(1,1,r) bound");
    dominated(bound_MT(1, 2, 2, tiny), 5, "MT(1,2,2) bound");
    dominated(bound_G(1, 2, 2, tiny), 5, "G(1,2,2) bound");
    for (long k = 1; k <= 2; ++k)
        for (long r = 1; r <= 3; ++r)
            dominated(bound_G(k, 1, r, tiny), 1, "G(k,1,r) bound");

    const MTStrategy toy = MTStrategy::from_function(
        [](const BigNat& d, const BigNat& m, const BigNat& r) -> std::optional<BigNat> { return d + m + r; });
    // Values past the digit guard count as +infinity.
    auto leq = [](const BoundResult& a, const BoundResult& b) {
        return b.too_large || (!a.too_large && a.value && b.value && *a.value <= *b.value);
    };
    using F3 = std::function<BoundResult(long, long, long)>;
    const std::vector<std::pair<std::string, F3>> fns{
        {"MT", [&](long d, long m, long r) { return bound_MT(d, m, r, toy); }},
        {"G", [&](long k, long m, long r) { return bound_G(k, m, r, toy); }},
        {"G_PM", [&](long k, long m, long r) { return bound_G_pm(k, m, r, toy); }},
        {"MG(k,1,m,r)", [&](long k, long m, long r) { return bound_MG(k, 1, m, r, toy); }},
        {"MG(1,d,m,r)", [&](long d, long m, long r) { return bound_MG(1, d, m, r, toy); }},
        {"MG_PM(k,1,m,r)", [&](long k, long m, long r) { return bound_MG_pm(k, 1, m, r, toy); }},
        {"MG_PM(1,d,m,r)", [&](long d, long m, long r) { return bound_MG_pm(1, d, m, r, toy); }},
        {"h(1,ell,r,1,x)", [&](long ell, long r, long x) { return h_fn(1, ell, r, 1, x, toy); }},
    };
    auto valid = [](const std::string& name, long a, long b) {
        // d must not exceed m where d is the first grid axis.
        return (name != "MT" && name.find("(1,d") == std::string::npos) || a <= b;
    };
    std::uint64_t cmp = 0;
    for (const auto& [name, f] : fns)
        for (long a = 1; a <= 3; ++a)
            for (long b = 1; b <= 3; ++b)
                for (long c = 1; c <= 3; ++c) {
                    if (!valid(name, a, b))
                        continue;
                    const BoundResult here = f(a, b, c);
                    const std::array<std::array<long, 3>, 3> next{{{a + 1, b, c}, {a, b + 1, c}, {a, b, c + 1}}};
                    for (const auto& nx : next) {
                        if (nx[0] > 3 || nx[1] > 3 || nx[2] > 3 || !valid(name, nx[0], nx[1]))
                            continue;
                        ++cmp;
                        o.expect(leq(here, f(nx[0], nx[1], nx[2])),
                                 name + " at " + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c));
                    }
                }
    for (long a = 1; a <= 3; ++a)
        for (long b = 1; b <= 3; ++b) {
            o.expect(alpha(a, b) <= alpha(a + 1, b) && alpha(a, b) <= alpha(a, b + 1), "alpha monotone");
            o.expect(beta(a, b) <= beta(a + 1, b) && beta(a, b) <= beta(a, b + 1), "beta monotone");
        }
    o.detail = std::to_string(cmp) + " grid comparisons";
    return o;
}

// ---------------------------------------------------------------------------
// Insensitivity.

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

bool disjoint(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0)
            return false;
    return true;
}

Vec plus(const Vec& a, const Vec& b) {
    Vec out = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += b[i];
    return out;
}

bool insensitive_oracle(const std::map<Vec, int>& col, const std::vector<Vec>& F, int k) {
    const auto span = oracle::span(F, k, false, true);
    for (const Vec& f : span)
        for (const Vec& g : span)
            if (disjoint(f, g) && col.at(f) != col.at(plus(f, oracle::tetris(g, k - 1))))
                return false;
    return true;
}

// sum T^{eps_i}(f_{j_i}) with eps in {0..k-2}, min eps = 0.
std::set<Vec> restricted_span(const std::vector<Vec>& F, int k) {
    std::set<Vec> out;
    const std::size_t m = F.size();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < m; ++i)
            if (mask >> i & 1)
                idx.push_back(i);
        for (const Vec& eps : oracle::all_vectors(idx.size(), 0, k - 2)) {
            if (*std::min_element(eps.begin(), eps.end()) != 0)
                continue;
            Vec sum(F.front().size(), 0);
            for (std::size_t t = 0; t < idx.size(); ++t)
                sum = plus(sum, oracle::tetris(F[idx[t]], eps[t]));
            out.insert(sum);
        }
    }
    return out;
}

Criterion insensitivity() {
    Criterion o;
    const int k = 2;
    std::mt19937_64 rng(20261018);
    std::uint64_t colorings = 0, subseqs = 0, premises = 0, sensitive_controls = 0;
    for (std::size_t n = 2; n <= 6; ++n) {
        const Domain dom = Domain::pos_sphere(n, k);
        const auto sphere = oracle::sphere(n, k, false);
        std::map<Vec, std::size_t> index;
        for (std::size_t i = 0; i < sphere.size(); ++i)
            index[sphere[i]] = i;
        for (std::size_t m = 1; m <= std::min<std::size_t>(3, n); ++m) {
            auto tuples = oracle::block_tuples(sphere, m);
            std::shuffle(tuples.begin(), tuples.end(), rng);
            tuples.resize(std::min<std::size_t>(tuples.size(), 12));
            for (const auto& Fv : tuples) {
                std::vector<FiniteFunction> funcs;
                for (const Vec& v : Fv)
                    funcs.emplace_back(k, false, v);
                const FuncBlockSeq F(funcs);
                const auto span = oracle::span(Fv, k, false, true);
                for (int trial = 0; trial < 6; ++trial) {
                    UnionFind uf(sphere.size());
                    for (const Vec& f : span)
                        for (const Vec& g : span)
                            if (disjoint(f, g))
                                uf.unite(index.at(f), index.at(plus(f, oracle::tetris(g, k - 1))));
                    const auto rs = restricted_span(Fv, k);
                    if (trial % 2 == 0)
                        for (const Vec& v : rs)
                            uf.unite(index.at(*rs.begin()), index.at(v));
                    std::vector<int> class_color(sphere.size());
                    for (int& c : class_color)
                        c = static_cast<int>(rng() % 3) + 1;
                    std::map<Vec, int> col;
                    std::map<std::string, int> table;
                    for (std::size_t i = 0; i < sphere.size(); ++i) {
                        col[sphere[i]] = class_color[uf.find(i)];
                        table[FiniteFunction(k, false, sphere[i]).encode()] = col[sphere[i]];
                    }
                    const auto c = table_coloring<FiniteFunction>(dom, 3, table);
                    ++colorings;
                    o.expect(insensitive_oracle(col, Fv, k), "constructed coloring is insensitive");
                    o.expect(is_insensitive(c, F, k), "is_insensitive on constructed coloring " + F.encode());
                    // Heredity over every block subsequence.
                    for (std::size_t d = 1; d <= m; ++d)
                        for (const FuncBlockSeq& G : enumerate_func_block_subseqs(F, d, SpanMode::PosStrict)) {
                            ++subseqs;
                            o.expect(is_insensitive(c, G, k), "heredity " + G.encode());
                            std::vector<Vec> Gv;
                            for (const auto& g : G.funcs())
                                Gv.push_back(vals(g));
                            o.expect(insensitive_oracle(col, Gv, k), "oracle heredity " + G.encode());
                        }
                    // Restricted span monochromatic implies full span monochromatic.
                    std::set<int> rcolors, fcolors;
                    for (const Vec& v : rs)
                        rcolors.insert(col.at(v));
                    for (const Vec& v : span)
                        fcolors.insert(col.at(v));
                    if (rcolors.size() == 1) {
                        ++premises;
                        o.expect(fcolors == rcolors, "bridge " + F.encode());
                    }
                    // Control: a random recoloring of the span is usually not insensitive.
                    if (span.size() > 1) {
                        std::map<Vec, int> noisy = col;
                        std::map<std::string, int> noisy_table = table;
                        for (const Vec& v : span) {
                            noisy[v] = static_cast<int>(rng() % 3) + 1;
                            noisy_table[FiniteFunction(k, false, v).encode()] = noisy[v];
                        }
                        const bool lib = is_insensitive(table_coloring<FiniteFunction>(dom, 3, noisy_table), F, k);
                        o.expect(lib == insensitive_oracle(noisy, Fv, k), "is_insensitive agrees on a control");
                        sensitive_controls += !lib;
                    }
                }
            }
        }
    }
    o.expect(premises > 0, "bridge premise exercised");
    o.expect(sensitive_controls > 0, "controls detect sensitivity");
    o.detail = std::to_string(colorings) + " colorings, " + std::to_string(subseqs) + " subsequences, " +
               std::to_string(premises) + " bridge premises";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Criterion()>>> criteria{
        {"decomposition round trip", decomposition_round_trip},
        {"type-count bounds", type_count_bounds},
        {"q pyramid properties", pyramid_properties},
        {"summation keeps displacement and distance", summed_displacement},
        {"exact numbers", exact_numbers},
        {"extractor soundness", extractor_soundness},
        {"approximate witnesses: type, distance, displacement, support", approximate_witnesses},
        {"no Ramsey degree for signed spans", anti_ramsey_degree},
        {"bounds engine", bounds_engine},
        {"insensitivity heredity and restricted-span bridge", insensitivity},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Criterion o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.first_failure = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream line;
        line << (o.pass ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << ": " << o.detail;
        if (!o.pass)
            line << " [first failure: " << o.first_failure << "]";
        char t[32];
        std::snprintf(t, sizeof t, " (%.2fs)", secs);
        std::cout << line.str() << t << std::endl;
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
