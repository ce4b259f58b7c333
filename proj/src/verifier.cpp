#include "gowers/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include "gowers/types.hpp"

namespace gowers {

std::string to_string(ExactKind kind) {
    switch (kind) {
    case ExactKind::MT:
        return "MT";
    case ExactKind::G:
        return "G";
    case ExactKind::G_PM:
        return "G_PM";
    case ExactKind::MG:
        return "MG";
    case ExactKind::MG_PM:
        return "MG_PM";
    }
    return "?";
}

ExactKind exact_kind_from_string(const std::string& name) {
    for (ExactKind k : {ExactKind::MT, ExactKind::G, ExactKind::G_PM, ExactKind::MG, ExactKind::MG_PM})
        if (to_string(k) == name)
            return k;
    throw std::invalid_argument("unknown query kind '" + name + "' (expected MT, G, G_PM, MG or MG_PM)");
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Holds:
        return "holds";
    case Verdict::Fails:
        return "fails";
    case Verdict::BudgetExhausted:
        return "budget-exhausted";
    }
    return "?";
}

void validate(const ExactQuery& q) {
    if (q.k < 1 || q.r < 1 || q.m < 1 || q.d < 1)
        throw std::invalid_argument("query parameters must be positive");
    const bool uses_d = q.kind == ExactKind::MT || q.kind == ExactKind::MG || q.kind == ExactKind::MG_PM;
    if (uses_d && q.d > q.m)
        throw std::invalid_argument("query needs d <= m");
}

std::string query_key(const ExactQuery& q) {
    const bool uses_d = q.kind == ExactKind::MT || q.kind == ExactKind::MG || q.kind == ExactKind::MG_PM;
    const int k = q.kind == ExactKind::MT ? 1 : q.k;
    return to_string(q.kind) + ":k=" + std::to_string(k) + ",d=" + std::to_string(uses_d ? q.d : 1) +
           ",m=" + std::to_string(q.m) + ",r=" + std::to_string(q.r);
}

namespace {

// Elements, groups of elements, and witnesses made of groups. A coloring
// is good for a witness when some color meets every one of its groups.
struct Problem {
    std::vector<std::string> labels;
    std::vector<std::vector<int>> groups;
    std::vector<std::vector<int>> witnesses;
};

class ProblemBuilder {
public:
    int element(const std::string& label) {
        auto [it, inserted] = index_.try_emplace(label, static_cast<int>(p_.labels.size()));
        if (inserted)
            p_.labels.push_back(label);
        return it->second;
    }
    int group(std::vector<int> members) {
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        auto [it, inserted] = group_index_.try_emplace(members, static_cast<int>(p_.groups.size()));
        if (inserted)
            p_.groups.push_back(members);
        return it->second;
    }
    void witness(std::vector<int> groups) {
        std::sort(groups.begin(), groups.end());
        groups.erase(std::unique(groups.begin(), groups.end()), groups.end());
        if (seen_.insert(groups).second)
            p_.witnesses.push_back(std::move(groups));
    }
    Problem take() { return std::move(p_); }

private:
    Problem p_;
    std::unordered_map<std::string, int> index_;
    std::map<std::vector<int>, int> group_index_;
    std::set<std::vector<int>> seen_;
};

FuncBlockSeq unit_basis(std::size_t n, int k, bool is_signed) {
    std::vector<FiniteFunction> fs;
    for (std::size_t i = 0; i < n; ++i) {
        const int at[] = {static_cast<int>(i)};
        fs.push_back(char_fn(at, n, k, k, is_signed));
    }
    return FuncBlockSeq(std::move(fs));
}

// All g in X_{+-k}(n) with rho_inf(f, g) <= 1.
std::vector<FiniteFunction> sphere_neighbours(const FiniteFunction& f) {
    const int k = f.k();
    std::vector<FiniteFunction> out;
    std::vector<int> v(f.length());
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == f.length()) {
            FiniteFunction g(k, true, v);
            if (g.in_sphere())
                out.push_back(std::move(g));
            return;
        }
        for (int x = std::max(-k, f[i] - 1); x <= std::min(k, f[i] + 1); ++x) {
            v[i] = x;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

Problem build_problem(const ExactQuery& q, std::size_t n) {
    ProblemBuilder b;
    const int k = q.k;
    switch (q.kind) {
    case ExactKind::MT: {
        if (n < q.d)
            break;
        const SetBlockSeq base = SetBlockSeq::singletons(n);
        for (const SetBlockSeq& u : enumerate_block_subseqs(base, q.d))
            b.element(u.encode());
        if (n < q.m)
            break;
        for (const SetBlockSeq& t : enumerate_block_subseqs(base, q.m)) {
            std::vector<int> gs;
            for (const SetBlockSeq& u : enumerate_block_subseqs(t, q.d))
                gs.push_back(b.group({b.element(u.encode())}));
            b.witness(std::move(gs));
        }
        break;
    }
    case ExactKind::G: {
        for (const FiniteFunction& f : enumerate_sphere(n, k, false))
            b.element(f.encode());
        if (n < q.m)
            break;
        for (const FuncBlockSeq& F : enumerate_func_block_subseqs(unit_basis(n, k, false), q.m, SpanMode::PosStrict)) {
            std::vector<int> gs;
            for (const FiniteFunction& f : span(F, SpanMode::PosStrict))
                gs.push_back(b.group({b.element(f.encode())}));
            b.witness(std::move(gs));
        }
        break;
    }
    case ExactKind::G_PM: {
        for (const FiniteFunction& f : enumerate_sphere(n, k, true))
            b.element(f.encode());
        if (n < q.m)
            break;
        std::map<std::string, int> near_group;
        for (const FuncBlockSeq& F :
             enumerate_func_block_subseqs(unit_basis(n, k, true), q.m, SpanMode::SignedStrict)) {
            std::vector<int> gs;
            for (const FiniteFunction& f : span(F, SpanMode::SignedStrict)) {
                auto it = near_group.find(f.encode());
                if (it == near_group.end()) {
                    std::vector<int> members;
                    for (const FiniteFunction& g : sphere_neighbours(f))
                        members.push_back(b.element(g.encode()));
                    it = near_group.emplace(f.encode(), b.group(std::move(members))).first;
                }
                gs.push_back(it->second);
            }
            b.witness(std::move(gs));
        }
        break;
    }
    case ExactKind::MG:
    case ExactKind::MG_PM: {
        const bool is_signed = q.kind == ExactKind::MG_PM;
        const SpanMode mode = is_signed ? SpanMode::SignedStrict : SpanMode::PosStrict;
        if (n < q.d)
            break;
        const FuncBlockSeq basis = unit_basis(n, k, is_signed);
        const std::vector<FuncBlockSeq> domain = enumerate_func_block_subseqs(basis, q.d, mode);
        for (const FuncBlockSeq& H : domain)
            b.element(H.encode());
        if (n < q.m)
            break;
        std::map<std::string, int> near_group;
        for (const FuncBlockSeq& F : enumerate_func_block_subseqs(basis, q.m, mode)) {
            std::vector<int> gs;
            for (const FuncBlockSeq& H : enumerate_func_block_subseqs(F, q.d, mode)) {
                if (!is_signed) {
                    gs.push_back(b.group({b.element(H.encode())}));
                    continue;
                }
                auto it = near_group.find(H.encode());
                if (it == near_group.end()) {
                    std::vector<int> members;
                    for (const FuncBlockSeq& Hp : domain)
                        if (sup_metric(H, Hp) <= 1)
                            members.push_back(b.element(Hp.encode()));
                    it = near_group.emplace(H.encode(), b.group(std::move(members))).first;
                }
                gs.push_back(it->second);
            }
            b.witness(std::move(gs));
        }
        break;
    }
    }
    return b.take();
}

struct BudgetHit {};

class Search {
public:
    Search(const Problem& p, int r, const std::vector<int>& order, std::atomic<std::uint64_t>& nodes,
           std::optional<std::uint64_t> budget, const std::atomic<bool>* stop)
        : p_(p), r_(r), order_(order), nodes_(nodes), budget_(budget), stop_(stop) {
        groups_of_.resize(p.labels.size());
        witnesses_of_.resize(p.groups.size());
        for (std::size_t g = 0; g < p.groups.size(); ++g)
            for (int e : p.groups[g])
                groups_of_[static_cast<std::size_t>(e)].push_back(static_cast<int>(g));
        for (std::size_t w = 0; w < p.witnesses.size(); ++w)
            for (int g : p.witnesses[w])
                witnesses_of_[static_cast<std::size_t>(g)].push_back(static_cast<int>(w));
        cnt_.assign(p.groups.size() * static_cast<std::size_t>(r), 0);
        sat_.assign(p.witnesses.size() * static_cast<std::size_t>(r), 0);
        colour_.assign(p.labels.size(), 0);
    }

    /// Colors order_[pos] with c; false when some witness becomes good.
    bool assign(std::size_t pos, int c) {
        const int e = order_[pos];
        colour_[static_cast<std::size_t>(e)] = c;
        bool clash = false;
        for (int g : groups_of_[static_cast<std::size_t>(e)]) {
            if (cnt_[idx(g, c)]++ != 0)
                continue;
            for (int w : witnesses_of_[static_cast<std::size_t>(g)])
                if (++sat_[idx(w, c)] == static_cast<int>(p_.witnesses[static_cast<std::size_t>(w)].size()))
                    clash = true;
        }
        return !clash;
    }

    void unassign(std::size_t pos, int c) {
        const int e = order_[pos];
        colour_[static_cast<std::size_t>(e)] = 0;
        for (int g : groups_of_[static_cast<std::size_t>(e)]) {
            if (--cnt_[idx(g, c)] != 0)
                continue;
            for (int w : witnesses_of_[static_cast<std::size_t>(g)])
                --sat_[idx(w, c)];
        }
    }

    /// Extends a partial coloring of order_[0..pos) into a bad coloring.
    bool extend(std::size_t pos, int used) {
        if (stop_ && stop_->load(std::memory_order_relaxed))
            return false;
        const std::uint64_t count = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (budget_ && count > *budget_)
            throw BudgetHit{};
        if (pos == order_.size())
            return true;
        const int top = std::min(used + 1, r_ - 1);
        for (int c = 0; c <= top; ++c) {
            const bool ok = assign(pos, c);
            if (ok && extend(pos + 1, std::max(used, c)))
                return true;
            unassign(pos, c);
        }
        return false;
    }

    const std::vector<int>& colours() const { return colour_; }

private:
    std::size_t idx(int a, int c) const { return static_cast<std::size_t>(a) * static_cast<std::size_t>(r_) + static_cast<std::size_t>(c); }

    const Problem& p_;
    int r_;
    const std::vector<int>& order_;
    std::atomic<std::uint64_t>& nodes_;
    std::optional<std::uint64_t> budget_;
    const std::atomic<bool>* stop_;
    std::vector<std::vector<int>> groups_of_, witnesses_of_;
    std::vector<int> cnt_, sat_, colour_;
};

// Elements that matter, ordered so that small witnesses close early.
std::vector<int> search_order(const Problem& p) {
    std::vector<std::size_t> first_close(p.labels.size(), SIZE_MAX);
    std::vector<std::vector<int>> by_size(p.witnesses.size());
    std::vector<std::size_t> wid(p.witnesses.size());
    for (std::size_t w = 0; w < wid.size(); ++w)
        wid[w] = w;
    auto weight = [&](std::size_t w) {
        std::size_t total = 0;
        for (int g : p.witnesses[w])
            total += p.groups[static_cast<std::size_t>(g)].size();
        return total;
    };
    std::stable_sort(wid.begin(), wid.end(), [&](std::size_t a, std::size_t b) { return weight(a) < weight(b); });
    std::vector<int> order;
    std::vector<char> placed(p.labels.size(), 0);
    for (std::size_t w : wid)
        for (int g : p.witnesses[w])
            for (int e : p.groups[static_cast<std::size_t>(g)])
                if (!placed[static_cast<std::size_t>(e)]) {
                    placed[static_cast<std::size_t>(e)] = 1;
                    order.push_back(e);
                }
    return order;
}

HoldsReport run_search(const Problem& p, int r, const VerifyOptions& opts) {
    HoldsReport rep;
    rep.domain_size = p.labels.size();
    rep.witness_count = p.witnesses.size();
    const std::vector<int> order = search_order(p);
    std::atomic<std::uint64_t> nodes{0};
    std::vector<int> bad;
    bool found = false;
    try {
        if (opts.jobs <= 1 || order.size() < 4) {
            Search s(p, r, order, nodes, opts.node_budget, nullptr);
            found = s.extend(0, -1);
            if (found)
                bad = s.colours();
        } else {
            // Split on the colors of the first few elements, keeping the
            // lowest-indexed prefix that yields a bad coloring.
            std::vector<std::vector<int>> prefixes = {{}};
            std::size_t depth = 0;
            while (prefixes.size() < 8 * opts.jobs && depth < order.size() && depth < 16) {
                std::vector<std::vector<int>> next;
                for (const auto& pre : prefixes) {
                    const int used = pre.empty() ? -1 : *std::max_element(pre.begin(), pre.end());
                    for (int c = 0; c <= std::min(used + 1, r - 1); ++c) {
                        auto x = pre;
                        x.push_back(c);
                        next.push_back(std::move(x));
                    }
                }
                prefixes = std::move(next);
                ++depth;
            }
            std::atomic<std::size_t> cursor{0};
            std::atomic<bool> stop{false};
            std::mutex mu;
            std::size_t best = SIZE_MAX;
            bool budget_hit = false;
            auto worker = [&]() {
                try {
                    for (;;) {
                        const std::size_t i = cursor.fetch_add(1);
                        if (i >= prefixes.size())
                            return;
                        {
                            std::lock_guard<std::mutex> lock(mu);
                            if (i > best)
                                return;
                        }
                        Search s(p, r, order, nodes, opts.node_budget, nullptr);
                        const auto& pre = prefixes[i];
                        bool ok = true;
                        int used = -1;
                        for (std::size_t pos = 0; pos < pre.size() && ok; ++pos) {
                            ok = s.assign(pos, pre[pos]);
                            used = std::max(used, pre[pos]);
                        }
                        if (ok && s.extend(pre.size(), used)) {
                            std::lock_guard<std::mutex> lock(mu);
                            if (i < best) {
                                best = i;
                                bad = s.colours();
                            }
                        }
                        if (stop.load())
                            return;
                    }
                } catch (const BudgetHit&) {
                    std::lock_guard<std::mutex> lock(mu);
                    budget_hit = true;
                    stop = true;
                }
            };
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < opts.jobs; ++t)
                pool.emplace_back(worker);
            for (auto& th : pool)
                th.join();
            if (best != SIZE_MAX)
                found = true;
            else if (budget_hit)
                throw BudgetHit{};
        }
    } catch (const BudgetHit&) {
        rep.verdict = Verdict::BudgetExhausted;
        rep.nodes = nodes.load();
        return rep;
    }
    rep.nodes = nodes.load();
    if (!found) {
        rep.verdict = Verdict::Holds;
        return rep;
    }
    rep.verdict = Verdict::Fails;
    for (std::size_t e = 0; e < p.labels.size(); ++e)
        rep.counterexample.emplace_back(p.labels[e], bad.empty() ? 1 : bad[e] + 1);
    return rep;
}

}  // namespace

HoldsReport holds_at(const ExactQuery& q, std::size_t n, const VerifyOptions& opts) {
    validate(q);
    if (n < 1)
        throw std::invalid_argument("n must be positive");
    const Problem p = build_problem(q, n);
    return run_search(p, q.r, opts);
}

ExactReport exact_number(const ExactQuery& q, const VerifyOptions& opts) {
    validate(q);
    ExactReport rep;
    for (std::size_t n = 1; n <= q.n_max; ++n) {
        const HoldsReport h = holds_at(q, n, opts);
        rep.nodes += h.nodes;
        if (h.verdict == Verdict::BudgetExhausted) {
            rep.budget_exhausted = true;
            rep.refuted_below = n;
            return rep;
        }
        if (h.verdict == Verdict::Holds) {
            rep.value = n;
            rep.refuted_below = n;
            const HoldsReport next = holds_at(q, n + 1, opts);
            rep.nodes += next.nodes;
            if (next.verdict != Verdict::BudgetExhausted)
                rep.closure_holds = next.verdict == Verdict::Holds;
            return rep;
        }
    }
    rep.refuted_below = q.n_max + 1;
    return rep;
}

// ---------------------------------------------------------------------------

int degree_coloring(const FiniteFunction& f, int K) {
    if (K < 1)
        throw std::invalid_argument("K must be positive");
    if (!f.is_signed() || f.k() != 1)
        throw std::invalid_argument("degree coloring is defined on X_{+-1}(n)");
    if (f.is_zero())
        throw std::invalid_argument("degree coloring is undefined on the zero function");
    const auto word = decompose(f).first;
    return static_cast<int>(word.size() % static_cast<std::size_t>(K)) + 1;
}

std::vector<FiniteFunction> all_colors_witness(const FuncBlockSeq& F, int K) {
    if (K < 1 || F.size() != 2 * static_cast<std::size_t>(K))
        throw std::invalid_argument("all_colors_witness needs a block sequence of length 2K");
    if (!F.is_signed() || F.k() != 1)
        throw std::invalid_argument("all_colors_witness works in X_{+-1}(n)");
    std::vector<FiniteFunction> g;
    for (int i = 0; i < K; ++i) {
        const FiniteFunction& a = F[static_cast<std::size_t>(2 * i)];
        const FiniteFunction& b = F[static_cast<std::size_t>(2 * i + 1)];
        const FiniteFunction a1 = a[static_cast<std::size_t>(min_support(a))] < 0 ? negate(a) : a;
        const FiniteFunction b1 = b[static_cast<std::size_t>(max_support(b))] < 0 ? negate(b) : b;
        g.push_back(add_disjoint(a1, b1));
    }
    std::vector<FiniteFunction> h;
    for (int i = 0; i < K; ++i) {
        FiniteFunction acc = FiniteFunction::zero(F.ambient(), 1, true);
        for (int j = 0; j < K; ++j) {
            const bool flip = j < i ? (j % 2 == 1) : (i % 2 == 1);
            acc = add_disjoint(acc, flip ? negate(g[static_cast<std::size_t>(j)]) : g[static_cast<std::size_t>(j)]);
        }
        h.push_back(acc);
    }
    return h;
}

NoRamseyReport verify_no_ramsey_degree(std::size_t n, int K, const VerifyOptions& opts) {
    if (K < 1)
        throw std::invalid_argument("K must be positive");
    const std::size_t len = 2 * static_cast<std::size_t>(K);
    if (n < len)
        throw std::invalid_argument("verify_no_ramsey_degree needs n >= 2K");
    NoRamseyReport rep;
    const FuncBlockSeq basis = unit_basis(n, 1, true);
    for (const FuncBlockSeq& F : enumerate_func_block_subseqs(basis, len, SpanMode::SignedStrict)) {
        ++rep.sequences;
        if (opts.node_budget && rep.sequences > *opts.node_budget) {
            rep.verdict = Verdict::BudgetExhausted;
            return rep;
        }
        std::vector<char> seen(static_cast<std::size_t>(K), 0);
        int missing = K;
        for_each_span_element(F, SpanMode::SignedStrict, [&](const FiniteFunction& f, const SpanCoefficients&) {
            char& s = seen[static_cast<std::size_t>(degree_coloring(f, K) - 1)];
            if (!s) {
                s = 1;
                --missing;
            }
            return missing > 0;
        });
        if (missing > 0)
            rep.verdict = Verdict::Fails;

        const std::vector<FiniteFunction> h = all_colors_witness(F, K);
        const std::size_t base = decompose(h[0]).first.size();
        std::set<int> colours;
        for (std::size_t i = 0; i < h.size(); ++i) {
            colours.insert(degree_coloring(h[i], K));
            if (decompose(h[i]).first.size() != base + i || !span_contains(F, SpanMode::SignedStrict, h[i]))
                rep.witnesses_ok = false;
        }
        if (colours.size() != static_cast<std::size_t>(K))
            rep.witnesses_ok = false;
    }
    return rep;
}

}  // namespace gowers
