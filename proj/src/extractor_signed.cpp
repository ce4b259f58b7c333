#include <cstdlib>
#include <stdexcept>

#include "extractor_detail.hpp"
#include "gowers/extractor.hpp"
#include "gowers/types.hpp"
#include "gowers/witness_check.hpp"

namespace gowers {

FiniteFunction q_delta(int delta, int ell, const SetBlockSeq& s, int k) {
    if (k < 1)
        throw std::invalid_argument("k must be positive");
    if (delta > k)
        throw std::invalid_argument("q_delta: delta exceeds k");
    const std::size_t n = s.ambient();
    std::vector<int> values(n, 0);
    if (delta <= 0)
        return FiniteFunction(k, true, std::move(values));
    for (int j = -(delta - 1); j <= delta - 1; ++j) {
        const int idx = ell + j;
        if (idx < 0 || static_cast<std::size_t>(idx) >= s.size())
            throw std::invalid_argument("q_delta: s-index " + std::to_string(idx) + " out of range");
        const int v = (j % 2 == 0 ? 1 : -1) * (delta - std::abs(j));
        for (int x : s[static_cast<std::size_t>(idx)])
            values[static_cast<std::size_t>(x)] = v;
    }
    return FiniteFunction(k, true, std::move(values));
}

FuncBlockSeq signed_carrier(const SetBlockSeq& s, int k, std::size_t M) {
    if (k < 1 || M < 1 || s.size() != 2 * static_cast<std::size_t>(k) * M)
        throw std::invalid_argument("signed_carrier needs length(s) = 2kM");
    std::vector<FiniteFunction> gs;
    for (std::size_t i = 0; i < M; ++i)
        gs.push_back(q_delta(k, 2 * k * static_cast<int>(i) + k - 1, s, k));
    return FuncBlockSeq(std::move(gs));
}

ApproximateWitness approximate_witness(const FiniteFunction& f, const FuncBlockSeq& F, const FuncBlockSeq& G,
                                       const SetBlockSeq& s, int k) {
    const auto outer = span_decompose(F, SpanMode::SignedStrict, f);
    if (!outer)
        throw std::invalid_argument("approximate_witness: f is not in the signed span of F");
    std::vector<int> delta(G.size(), 0);
    std::vector<int> sign(G.size(), 1);
    for (std::size_t j = 0; j < F.size(); ++j) {
        const SpanTerm& a = (*outer)[j];
        if (!a.present)
            continue;
        const auto inner = span_decompose(G, SpanMode::PosStrict, F[j]);
        if (!inner)
            throw std::invalid_argument("approximate_witness: F is not a block sequence in the span of G");
        for (std::size_t i = 0; i < G.size(); ++i) {
            if (!(*inner)[i].present)
                continue;
            delta[i] = k - (*inner)[i].eps - a.eps;
            sign[i] = a.sign;
        }
    }
    FiniteFunction near = FiniteFunction::zero(s.ambient(), k, true);
    FiniteFunction positive = near;
    for (std::size_t i = 0; i < G.size(); ++i) {
        if (delta[i] <= 0)
            continue;
        const int ell = 2 * k * static_cast<int>(i) + k - 1;
        positive = add_disjoint(positive, q_delta(delta[i], ell, s, k));
        near = add_disjoint(near, q_delta(delta[i], sign[i] < 0 ? ell + 1 : ell, s, k));
    }
    return {near, positive};
}

namespace detail {

FuncBlockSeq embed_seq(const FuncBlockSeq& basis, const FuncBlockSeq& H) {
    std::vector<FiniteFunction> out;
    out.reserve(H.size());
    for (const FiniteFunction& h : H.funcs())
        out.push_back(basis_embed(basis, h));
    return FuncBlockSeq(std::move(out));
}

namespace {

void enumerate_type_tuples(const std::vector<GType>& types, std::size_t d, std::size_t budget_len,
                           std::vector<std::size_t>& current, std::vector<std::vector<std::size_t>>& out) {
    if (current.size() == d) {
        out.push_back(current);
        return;
    }
    const std::size_t still = d - current.size() - 1;
    for (std::size_t i = 0; i < types.size(); ++i) {
        if (types[i].size() + still > budget_len)
            continue;
        current.push_back(i);
        enumerate_type_tuples(types, d, budget_len - types[i].size(), current, out);
        current.pop_back();
    }
}

// bl(phi, t): the i-th component spreads phi_i over the next |phi_i| sets of t.
FuncBlockSeq block_of_types(const std::vector<GType>& types, const std::vector<std::size_t>& tuple,
                            const SetBlockSeq& t) {
    std::vector<FiniteFunction> fs;
    std::size_t offset = 0;
    for (std::size_t idx : tuple) {
        const GType& phi = types[idx];
        std::vector<IndexSet> chunk(t.sets().begin() + static_cast<std::ptrdiff_t>(offset),
                                    t.sets().begin() + static_cast<std::ptrdiff_t>(offset + phi.size()));
        fs.push_back(map_onto(phi, SetBlockSeq(std::move(chunk), t.ambient())));
        offset += phi.size();
    }
    return FuncBlockSeq(std::move(fs));
}

// Clause (ii) of the signed theorems, checked through the constructive
// witnesses of approximate_witness.
bool approximately_monochromatic(const SeqColor& c, const SetBlockSeq& s, const FuncBlockSeq& F,
                                 const FuncBlockSeq& G, int k, std::size_t d, int colour) {
    if (!is_s_skipped(F, s))
        return false;
    for (const FuncBlockSeq& H : enumerate_func_block_subseqs(F, d, SpanMode::SignedStrict)) {
        std::vector<FiniteFunction> near;
        for (const FiniteFunction& h : H.funcs())
            near.push_back(approximate_witness(h, F, G, s, k).near);
        if (!is_block(near))
            return false;
        const FuncBlockSeq Hp(std::move(near));
        if (sup_metric(H, Hp) > 1 || !displacement_at_most_one(H, Hp, s) || c(Hp) != colour)
            return false;
    }
    return true;
}

}  // namespace

std::optional<SetBlockSeq> canonize_block_impl(std::size_t n, int k, std::size_t d, std::size_t m,
                                               const SeqColor& c, Budget& budget) {
    const std::vector<GType> types = enumerate_types_upto(k, m, true);
    std::vector<std::vector<std::size_t>> tuples;
    std::vector<std::size_t> current;
    enumerate_type_tuples(types, d, m, current, tuples);
    const SetBlockSeq base = SetBlockSeq::singletons(n);
    Interner intern;
    MaskColor derived = [&](const std::vector<PositionMask>& masks) {
        const SetBlockSeq t = base.select(masks);
        std::vector<int> v;
        v.reserve(tuples.size());
        for (const auto& tuple : tuples)
            v.push_back(c(block_of_types(types, tuple, t)));
        return intern(v);
    };
    auto canonical = [&](const SetBlockSeq& s) {
        return is_block_type_canonical(wrap(c, Domain::signed_blocks(n, k, d)), s, k, d, true);
    };
    if (2 * m - 1 <= n) {
        if (auto hit = mt_engine(n, m, 2 * m - 1, derived, budget)) {
            SetBlockSeq s = base.select(hit->masks).prefix(m);
            if (!canonical(s))
                throw std::logic_error("block type canonicalization produced a non-canonical sequence");
            return s;
        }
    }
    return first_block_seq(n, m, canonical, budget);
}

std::optional<SignedHit> extract_signed_impl(std::size_t n, int k, std::size_t m, const FnColor& c, Budget& budget) {
    const std::size_t twok = 2 * static_cast<std::size_t>(k);
    for (std::size_t M = m; twok * M <= n; ++M) {
        auto s = canonize_impl(n, k, twok * M, true, c, budget);
        if (!s)
            continue;
        const FuncBlockSeq G = signed_carrier(*s, k, M);
        FnColor induced = cached<FiniteFunction>([&c, G](const FiniteFunction& g) { return c(basis_embed(G, g)); });
        auto inner = extract_positive_impl(M, k, m, induced, budget);
        if (!inner)
            continue;
        const FuncBlockSeq F = embed_seq(G, inner->F);
        SeqColor as_seq = [&c](const FuncBlockSeq& H) { return c(H[0]); };
        if (!approximately_monochromatic(as_seq, *s, F, G, k, 1, inner->color))
            throw std::logic_error("signed extraction failed its approximate monochromaticity check");
        return SignedHit{*s, F, inner->color};
    }
    return std::nullopt;
}

std::optional<SignedHit> multidim_signed_impl(std::size_t n, int k, std::size_t d, std::size_t m,
                                              const SeqColor& c, Budget& budget) {
    const std::size_t twok = 2 * static_cast<std::size_t>(k);
    for (std::size_t M = m; twok * M <= n; ++M) {
        auto s = canonize_block_impl(n, k, d, twok * M, c, budget);
        if (!s)
            continue;
        const FuncBlockSeq G = signed_carrier(*s, k, M);
        SeqColor induced = cached<FuncBlockSeq>([&c, G](const FuncBlockSeq& H) { return c(embed_seq(G, H)); });
        auto inner = multidim_positive_impl(M, k, d, m, induced, budget);
        if (!inner)
            continue;
        const FuncBlockSeq F = embed_seq(G, inner->F);
        if (!approximately_monochromatic(c, *s, F, G, k, d, inner->color))
            throw std::logic_error("multidimensional signed extraction failed its approximation check");
        return SignedHit{*s, F, inner->color};
    }
    return std::nullopt;
}

}  // namespace detail

using namespace detail;

namespace {

void require_params(int k, std::size_t d, std::size_t m, std::size_t n) {
    if (k < 1)
        throw std::invalid_argument("k must be positive");
    if (d < 1 || m < d || m > n)
        throw std::invalid_argument("parameters must satisfy 1 <= d <= m <= n");
}

void fill_signed(const SignedHit& hit, ExtractionReport<SignedWitness>& r) {
    r.witness = SignedWitness{hit.s, hit.F};
    r.color = hit.color;
}

}  // namespace

ExtractionReport<SetBlockSeq> canonize_block_types(std::size_t n, int k, std::size_t d, std::size_t m,
                                                   const SequenceColoring& c, const SearchOptions& opts) {
    require_params(k, d, m, n);
    require_domain(c, Domain::signed_blocks(n, k, d));
    const SequenceColoring mc = memoized(c);
    return run_stage<SetBlockSeq, SetBlockSeq>(
        opts, [&](Budget& budget) { return canonize_block_impl(n, k, d, m, SeqColor(mc), budget); },
        [](const SetBlockSeq& s, ExtractionReport<SetBlockSeq>& r) { r.witness = s; });
}

ExtractionReport<SignedWitness> extract_signed(std::size_t n, int k, std::size_t m, const FunctionColoring& c,
                                               const SearchOptions& opts) {
    require_params(k, 1, m, n);
    require_domain(c, Domain::signed_sphere(n, k));
    const FunctionColoring mc = memoized(c);
    return run_stage<SignedWitness, SignedHit>(
        opts, [&](Budget& budget) { return extract_signed_impl(n, k, m, FnColor(mc), budget); }, fill_signed);
}

ExtractionReport<SignedWitness> extract_multidim_signed(std::size_t n, int k, std::size_t d, std::size_t m,
                                                        const SequenceColoring& c, const SearchOptions& opts) {
    require_params(k, d, m, n);
    require_domain(c, Domain::signed_blocks(n, k, d));
    const SequenceColoring mc = memoized(c);
    return run_stage<SignedWitness, SignedHit>(
        opts, [&](Budget& budget) { return multidim_signed_impl(n, k, d, m, SeqColor(mc), budget); },
        fill_signed);
}

}  // namespace gowers
