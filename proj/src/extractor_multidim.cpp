#include <map>
#include <stdexcept>

#include "extractor_detail.hpp"
#include "gowers/extractor.hpp"
#include "gowers/witness_check.hpp"

namespace gowers {
namespace detail {

namespace {

// Colors of (d+1)-sequences over G depend only on their first d entries.
bool prefix_determined(const SeqColor& c, const FuncBlockSeq& G, std::size_t d) {
    std::map<FuncBlockSeq, int> seen;
    for (const FuncBlockSeq& J : enumerate_func_block_subseqs(G, d + 1, SpanMode::PosStrict)) {
        const int col = c(J);
        auto [it, inserted] = seen.try_emplace(J.prefix(d), col);
        if (!inserted && it->second != col)
            return false;
    }
    return true;
}

}  // namespace

std::optional<FuncBlockSeq> canon_last_impl(std::size_t n, int k, std::size_t d, std::size_t ell, const SeqColor& c,
                                            Budget& budget) {
    if (n < ell)
        return std::nullopt;
    std::vector<FiniteFunction> prefix;
    for (std::size_t i = 0; i < d; ++i) {
        const int at[] = {static_cast<int>(i)};
        prefix.push_back(char_fn(at, n, k, k, false));
    }
    std::vector<FiniteFunction> tail;
    for (std::size_t i = d; i < n; ++i) {
        const int at[] = {static_cast<int>(i)};
        tail.push_back(char_fn(at, n, k, k, false));
    }

    for (std::size_t p = 1; p <= ell - d; ++p) {
        const std::size_t need = ell - d - p;
        const std::size_t N = tail.size();
        if (N < need + 1)
            return std::nullopt;
        const FuncBlockSeq Fstar(tail);
        const std::vector<FuncBlockSeq> heads =
            enumerate_func_block_subseqs(FuncBlockSeq(prefix), d, SpanMode::PosStrict);
        Interner intern;
        FnColor stabilizer = cached<FiniteFunction>([&c, &heads, Fstar, intern](const FiniteFunction& g) mutable {
            const FiniteFunction f = basis_embed(Fstar, g);
            std::vector<int> v;
            v.reserve(heads.size());
            for (const FuncBlockSeq& H : heads)
                v.push_back(c(H.append(f)));
            return intern(v);
        });
        bool advanced = false;
        for (std::size_t Np = N - 1;; --Np) {
            if (auto hit = extract_positive_impl(N, k, Np + 1, stabilizer, budget)) {
                const FuncBlockSeq Fp = embed_seq(Fstar, hit->F);
                prefix.push_back(Fp[0]);
                tail.assign(Fp.funcs().begin() + 1, Fp.funcs().end());
                advanced = true;
                break;
            }
            if (Np == need)
                break;
        }
        if (!advanced)
            return std::nullopt;
    }
    FuncBlockSeq G(std::move(prefix));
    if (!prefix_determined(c, G, d))
        throw std::logic_error("end stabilization left a color depending on the last entry");
    return G;
}

std::optional<SeqHit> multidim_positive_impl(std::size_t n, int k, std::size_t D, std::size_t m, const SeqColor& c,
                                             Budget& budget) {
    if (D == 1) {
        FnColor single = [&c](const FiniteFunction& f) { return c(FuncBlockSeq({f})); };
        return extract_positive_impl(n, k, m, single, budget);
    }
    const std::size_t d = D - 1;
    for (std::size_t M = m - 1; M + 1 <= n; ++M) {
        auto G = canon_last_impl(n, k, d, M + 1, c, budget);
        if (!G)
            continue;
        const FuncBlockSeq Gstar = G->prefix(M);
        const FiniteFunction last = (*G)[M];
        SeqColor induced =
            cached<FuncBlockSeq>([&c, Gstar, last](const FuncBlockSeq& H) { return c(embed_seq(Gstar, H).append(last)); });
        auto inner = multidim_positive_impl(M, k, d, m - 1, induced, budget);
        if (!inner)
            continue;
        const FuncBlockSeq F = embed_seq(Gstar, inner->F).append(last);
        if (!check_multidim_positive_witness(wrap(c, Domain::pos_blocks(n, k, D)), k, D, m, F, inner->color))
            throw std::logic_error("multidimensional extraction produced a non-monochromatic family");
        return SeqHit{F, inner->color};
    }
    return std::nullopt;
}

}  // namespace detail

using namespace detail;

ExtractionReport<FuncBlockSeq> canonize_last_coordinate(std::size_t n, int k, std::size_t d, std::size_t ell,
                                                        const SequenceColoring& c, const SearchOptions& opts) {
    if (k < 1 || d < 1 || ell <= d || ell > n)
        throw std::invalid_argument("canonize_last_coordinate needs 1 <= d < ell <= n");
    require_domain(c, Domain::pos_blocks(n, k, d + 1));
    const SequenceColoring mc = memoized(c);
    return run_stage<FuncBlockSeq, FuncBlockSeq>(
        opts, [&](Budget& budget) { return canon_last_impl(n, k, d, ell, SeqColor(mc), budget); },
        [](const FuncBlockSeq& G, ExtractionReport<FuncBlockSeq>& r) { r.witness = G; });
}

ExtractionReport<FuncBlockSeq> extract_multidim_positive(std::size_t n, int k, std::size_t d, std::size_t m,
                                                         const SequenceColoring& c, const SearchOptions& opts) {
    if (k < 1 || d < 1 || m < d || m > n)
        throw std::invalid_argument("parameters must satisfy 1 <= d <= m <= n");
    require_domain(c, Domain::pos_blocks(n, k, d));
    const SequenceColoring mc = memoized(c);
    return run_stage<FuncBlockSeq, SeqHit>(
        opts, [&](Budget& budget) { return multidim_positive_impl(n, k, d, m, SeqColor(mc), budget); },
        [](const SeqHit& hit, ExtractionReport<FuncBlockSeq>& r) {
            r.witness = hit.F;
            r.color = hit.color;
        });
}

}  // namespace gowers
