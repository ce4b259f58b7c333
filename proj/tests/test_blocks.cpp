#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "gowers/blocks.hpp"
#include "gowers/core.hpp"
#include "oracles.hpp"

using namespace gowers;

namespace {

std::vector<int> vals(const FiniteFunction& f) { return {f.values().begin(), f.values().end()}; }

FuncBlockSeq seq(int k, bool s, std::vector<std::vector<int>> rows) {
    std::vector<FiniteFunction> fs;
    for (auto& r : rows)
        fs.emplace_back(k, s, std::move(r));
    return FuncBlockSeq(std::move(fs));
}

std::set<std::vector<int>> as_set(const std::vector<FiniteFunction>& fs) {
    std::set<std::vector<int>> out;
    for (const auto& f : fs)
        out.insert(vals(f));
    return out;
}

}  // namespace

TEST_CASE("set block sequences validate their shape") {
    CHECK_NOTHROW(SetBlockSeq({{0}, {2, 3}}, 4));
    CHECK_THROWS_AS(SetBlockSeq({{0, 2}, {1}}, 3), std::invalid_argument);
    CHECK_THROWS_AS(SetBlockSeq({{}}, 3), std::invalid_argument);
    CHECK_THROWS_AS(SetBlockSeq({{3}}, 3), std::invalid_argument);
    CHECK_THROWS_AS(SetBlockSeq({{1, 1}}, 3), std::invalid_argument);
    CHECK(SetBlockSeq::singletons(3).encode() == "0|1|2");
}

TEST_CASE("nonempty unions") {
    const SetBlockSeq s({{0}, {2}}, 3);
    CHECK(nonempty_unions(s) == std::vector<IndexSet>{{0}, {2}, {0, 2}});
    CHECK(nonempty_unions(SetBlockSeq({{1, 3}}, 4)) == std::vector<IndexSet>{{1, 3}});
    CHECK(nonempty_unions(SetBlockSeq::singletons(3)).size() == 7);
}

TEST_CASE("block subsequences examples") {
    const SetBlockSeq s = SetBlockSeq::singletons(2);
    const auto one = enumerate_block_subseqs(s, 1);
    REQUIRE(one.size() == 3);
    std::set<std::string> enc;
    for (const auto& t : one)
        enc.insert(t.encode());
    CHECK(enc == std::set<std::string>{"0", "1", "0,1"});
    const auto two = enumerate_block_subseqs(s, 2);
    REQUIRE(two.size() == 1);
    CHECK(two[0].encode() == "0|1");
    CHECK_THROWS_AS(enumerate_block_subseqs(s, 3), std::invalid_argument);
}

TEST_CASE("block subsequence counts match brute force") {
    for (std::size_t m = 1; m <= 5; ++m)
        for (std::size_t d = 1; d <= m; ++d) {
            CHECK(count_block_subseqs(m, d) == oracle::count_set_blocks(m, d));
            const auto all = enumerate_block_subseqs(SetBlockSeq::singletons(m), d);
            CHECK(all.size() == oracle::count_set_blocks(m, d));
            for (const auto& t : all) {
                CHECK(t.size() == d);
                CHECK(t.ambient() == m);
            }
        }
}

TEST_CASE("mask enumeration is lexicographic and stoppable") {
    std::vector<std::vector<PositionMask>> seen;
    for_each_block_masks(4, 2, [&](const std::vector<PositionMask>& t) {
        seen.push_back(t);
        return true;
    });
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    CHECK(seen.size() == count_block_subseqs(4, 2));
    int calls = 0;
    for_each_block_masks(4, 2, [&](const std::vector<PositionMask>&) { return ++calls < 3; });
    CHECK(calls == 3);
}

TEST_CASE("span examples") {
    const FuncBlockSeq F = seq(2, false, {{2, 0}, {0, 2}});
    CHECK(as_set(span(F, SpanMode::PosStrict)) ==
          std::set<std::vector<int>>{{2, 0}, {0, 2}, {2, 2}, {2, 1}, {1, 2}});
    CHECK(span(F, SpanMode::PosAll).size() == 8);
    const FuncBlockSeq Fs = seq(2, true, {{2, 0}, {0, 2}});
    CHECK(span(Fs, SpanMode::SignedStrict).size() == 16);
}

TEST_CASE("span matches the direct expansion oracle") {
    for (int k = 1; k <= 2; ++k)
        for (bool s : {false, true}) {
            const auto pool = oracle::sphere(4, k, s);
            for (std::size_t d = 1; d <= 3; ++d)
                for (const auto& rows : oracle::block_tuples(pool, d)) {
                    const FuncBlockSeq F = seq(k, s, rows);
                    for (bool strict : {true, false}) {
                        const SpanMode mode = s ? (strict ? SpanMode::SignedStrict : SpanMode::SignedAll)
                                                : (strict ? SpanMode::PosStrict : SpanMode::PosAll);
                        const auto got = span(F, mode);
                        CHECK(got.size() == as_set(got).size());
                        CHECK(as_set(got) == oracle::span(rows, k, s, strict));
                    }
                }
        }
}

TEST_CASE("strict span needs generators attaining k") {
    const FuncBlockSeq F = seq(2, false, {{1, 0}, {0, 2}});
    CHECK_THROWS_AS(span(F, SpanMode::PosStrict), std::invalid_argument);
}

TEST_CASE("span_decompose reconstructs every element and rejects others") {
    const FuncBlockSeq F = seq(2, true, {{2, 1, 0, 0}, {0, 0, 1, 2}});
    for (SpanMode mode : {SpanMode::SignedStrict, SpanMode::SignedAll}) {
        const auto members = span(F, mode);
        const auto member_set = as_set(members);
        for (const auto& g : enumerate_ball(4, 2, true)) {
            const auto c = span_decompose(F, mode, g);
            CHECK(c.has_value() == (member_set.count(vals(g)) == 1));
            if (c)
                CHECK(span_element(F, *c, mode) == g);
        }
    }
}

TEST_CASE("function block sequences") {
    CHECK(is_block({FiniteFunction(2, false, {2, 0, 0}), FiniteFunction(2, false, {0, 0, 2})}));
    CHECK_FALSE(is_block({FiniteFunction(2, false, {2, 0, 1}), FiniteFunction(2, false, {0, 2, 0})}));
    CHECK(is_block({FiniteFunction(1, false, {0, 1})}));
    CHECK_THROWS_AS(seq(2, false, {{2, 0, 1}, {0, 2, 0}}), std::invalid_argument);
    CHECK(seq(1, false, {{1, 0}, {0, 1}}).encode() == "1,0|0,1");
}

TEST_CASE("block subsequences of a span") {
    const FuncBlockSeq F = seq(1, false, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    const auto pool = span(F, SpanMode::PosStrict);
    std::vector<std::vector<int>> rows;
    for (const auto& f : pool)
        rows.push_back(vals(f));
    for (std::size_t d = 1; d <= 3; ++d)
        CHECK(enumerate_func_block_subseqs(F, d, SpanMode::PosStrict).size() == oracle::block_tuples(rows, d).size());
}

TEST_CASE("s-support examples") {
    const SetBlockSeq s = SetBlockSeq::singletons(3);
    CHECK(s_support(FiniteFunction(2, false, {0, 2, 0}), s) == IndexSet{1});
    CHECK(s_support(FiniteFunction(1, true, {1, 0, -1}), s) == IndexSet{0, 2});
    CHECK_THROWS_AS(s_support(FiniteFunction(2, false, {2, 0}), SetBlockSeq({{0, 1}}, 2)), std::invalid_argument);
    CHECK_FALSE(represent_over(FiniteFunction(2, false, {0, 0, 1}), SetBlockSeq({{0, 1}}, 3)).has_value());
}

TEST_CASE("displacement examples") {
    const SetBlockSeq s = SetBlockSeq::singletons(4);
    const FiniteFunction f(1, true, {0, -1, 0, 0});
    CHECK(displacement_at_most_one(f, f, s));
    CHECK(displacement_at_most_one(f, FiniteFunction(1, true, {0, 0, 1, 0}), s));
    CHECK_FALSE(displacement_at_most_one(FiniteFunction(1, true, {1, 0, 0, 0}), FiniteFunction(1, true, {0, 0, 1, 0}), s));
}

TEST_CASE("displacement agrees with the definition on a small sphere") {
    const SetBlockSeq s = SetBlockSeq::singletons(4);
    const auto all = enumerate_sphere(4, 1, true);
    for (const auto& a : all)
        for (const auto& b : all) {
            const auto sa = support(a), sb = support(b);
            const bool want = sa.front() <= sb.front() && sb.front() <= sa.front() + 1 && sa.back() <= sb.back() &&
                              sb.back() <= sa.back() + 1;
            CHECK(displacement_at_most_one(a, b, s) == want);
        }
}

TEST_CASE("s-skipped examples") {
    const SetBlockSeq s = SetBlockSeq::singletons(3);
    CHECK(is_s_skipped(seq(1, false, {{1, 0, 0}, {0, 0, 1}}), s));
    CHECK_FALSE(is_s_skipped(seq(1, false, {{1, 0, 0}, {0, 1, 0}}), s));
    CHECK(is_s_skipped(seq(1, false, {{0, 1, 0}}), s));
}

TEST_CASE("sequence sup metric") {
    const FuncBlockSeq a = seq(2, true, {{2, 0}, {0, -1}});
    const FuncBlockSeq b = seq(2, true, {{1, 0}, {0, -2}});
    CHECK(sup_metric(a, b) == 1);
    CHECK(sup_metric(a, a) == 0);
    CHECK_THROWS_AS(sup_metric(a, a.prefix(1)), std::invalid_argument);
}
