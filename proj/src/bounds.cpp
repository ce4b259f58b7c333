#include "gowers/bounds.hpp"

#include <cmath>
#include <mutex>
#include <sstream>

#include "gowers/verifier.hpp"

namespace gowers::bounds {

namespace {

void guard(const BigNat& v, std::size_t digit_guard) {
    if (mpz_sizeinbase(v.get_mpz_t(), 10) > digit_guard + 1)
        throw TooLarge("value exceeds " + std::to_string(digit_guard) + " decimal digits");
}

unsigned long small(const BigNat& v, const char* what) {
    if (v < 0 || !v.fits_ulong_p())
        throw TooLarge(std::string(what) + " does not fit a machine word");
    return v.get_ui();
}

long as_long(const BigNat& v, const char* what) {
    if (!v.fits_slong_p())
        throw TooLarge(std::string(what) + " does not fit a machine word");
    return v.get_si();
}

// sum_{d=1}^m d x^{d-1}
BigNat weighted_geometric(const BigNat& x, const BigNat& m, std::size_t digit_guard) {
    if (m < 1)
        return 0;
    if (x == 0)
        return 1;
    if (x == 1)
        return m * (m + 1) / 2;
    const BigNat xm = checked_pow(x, m, digit_guard);
    BigNat num = m * xm * x - (m + 1) * xm + 1;
    BigNat den = (x - 1) * (x - 1);
    return num / den;
}

}  // namespace

BigNat checked_pow(const BigNat& base, const BigNat& exponent, std::size_t digit_guard) {
    if (exponent < 0)
        throw std::invalid_argument("negative exponent");
    if (base == 0)
        return exponent == 0 ? BigNat(1) : BigNat(0);
    if (base == 1 || exponent == 0)
        return 1;
    const double digits_per = std::log10(mpz_get_d(base.get_mpz_t()));
    const double est = mpz_get_d(exponent.get_mpz_t()) * (std::isfinite(digits_per) ? digits_per : 1e300);
    if (!(est <= static_cast<double>(digit_guard)))
        throw TooLarge("power exceeds " + std::to_string(digit_guard) + " decimal digits");
    BigNat out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), small(exponent, "exponent"));
    guard(out, digit_guard);
    return out;
}

BigNat grzegorczyk_E(unsigned q, const std::vector<BigNat>& args, std::size_t digit_guard) {
    if (q == 0) {
        if (args.size() != 2)
            throw std::invalid_argument("E_0 takes two arguments");
        return args[0] + args[1];
    }
    if (args.size() != 1)
        throw std::invalid_argument("E_q takes one argument for q >= 1");
    const BigNat& n = args[0];
    if (n < 0)
        throw std::invalid_argument("E_q is defined on naturals");
    if (q == 1) {
        BigNat v = n * n + 2;
        guard(v, digit_guard);
        return v;
    }
    BigNat v = 2;
    for (BigNat i = 0; i < n; ++i) {
        v = grzegorczyk_E(q - 1, {v}, digit_guard);
        guard(v, digit_guard);
    }
    return v;
}

BigNat alpha(const BigNat& k, const BigNat& m, std::size_t digit_guard) {
    if (k < 1 || m < 1)
        throw std::invalid_argument("alpha needs k, m >= 1");
    return weighted_geometric(k - 1, m, digit_guard);
}

BigNat beta(const BigNat& k, const BigNat& m, std::size_t digit_guard) {
    if (k < 1 || m < 1)
        throw std::invalid_argument("beta needs k, m >= 1");
    return 2 * weighted_geometric(2 * k - 1, m, digit_guard);
}

BigNat gamma(const BigNat& k, const BigNat& d, const BigNat& m, std::size_t digit_guard) {
    if (k < 1 || d < 1 || m < 1)
        throw std::invalid_argument("gamma needs k, d, m >= 1");
    if (d > m)
        throw std::invalid_argument("gamma needs d <= m");
    const unsigned long dd = small(d, "d");
    BigNat binom = 1;
    for (unsigned long i = 0; i < dd; ++i)
        binom = binom * (m - i) / (i + 1);
    BigNat out = binom * checked_pow(2, d, digit_guard) * checked_pow(m, d, digit_guard);
    out *= checked_pow(2 * k - 1, d * (m - 1), digit_guard);
    guard(out, digit_guard);
    return out;
}

// ---------------------------------------------------------------------------

ExprPtr lit(const BigNat& v) {
    return std::make_shared<const Expr>(Expr{"lit", v, {}});
}

ExprPtr node(std::string op, std::vector<ExprPtr> args) {
    static const std::map<std::string, std::size_t> arity = {{"add", 2},   {"sub", 2},  {"mul", 2},
                                                             {"pow", 2},   {"MT", 3},   {"alpha", 2},
                                                             {"beta", 2},  {"gamma", 3}, {"h", 5}};
    auto it = arity.find(op);
    if (it == arity.end())
        throw std::invalid_argument("unknown expression op '" + op + "'");
    if (args.size() != it->second)
        throw std::invalid_argument("op '" + op + "' takes " + std::to_string(it->second) + " arguments");
    return std::make_shared<const Expr>(Expr{std::move(op), 0, std::move(args)});
}

bool is_ground(const ExprPtr& e) {
    if (e->op == "MT" || e->op == "h")
        return false;
    for (const ExprPtr& a : e->args)
        if (!is_ground(a))
            return false;
    return true;
}

std::optional<BigNat> literal_value(const ExprPtr& e) {
    if (e->op == "lit")
        return e->value;
    return std::nullopt;
}

namespace {

BigNat apply_numeric(const std::string& op, const std::vector<BigNat>& a, std::size_t digit_guard) {
    if (op == "add")
        return a[0] + a[1];
    if (op == "sub") {
        if (a[0] < a[1])
            throw std::invalid_argument("subtraction below zero");
        return a[0] - a[1];
    }
    if (op == "mul") {
        BigNat v = a[0] * a[1];
        guard(v, digit_guard);
        return v;
    }
    if (op == "pow")
        return checked_pow(a[0], a[1], digit_guard);
    if (op == "alpha")
        return alpha(a[0], a[1], digit_guard);
    if (op == "beta")
        return beta(a[0], a[1], digit_guard);
    if (op == "gamma")
        return gamma(a[0], a[1], a[2], digit_guard);
    throw std::logic_error("not a closed-form op: " + op);
}

}  // namespace

ExprPtr simplify(const ExprPtr& e, std::size_t digit_guard) {
    if (e->op == "lit")
        return e;
    std::vector<ExprPtr> args;
    bool all_lit = true;
    for (const ExprPtr& a : e->args) {
        args.push_back(simplify(a, digit_guard));
        all_lit = all_lit && args.back()->op == "lit";
    }
    if (all_lit && e->op != "MT" && e->op != "h") {
        std::vector<BigNat> vals;
        for (const ExprPtr& a : args)
            vals.push_back(a->value);
        try {
            return lit(apply_numeric(e->op, vals, digit_guard));
        } catch (const TooLarge&) {
        }
    }
    return node(e->op, std::move(args));
}

std::string render(const ExprPtr& e) {
    if (e->op == "lit") {
        const std::string s = e->value.get_str();
        if (s.size() > 40)
            return s.substr(0, 12) + "...(" + std::to_string(s.size()) + " digits)";
        return s;
    }
    auto infix = [&](const char* sym) { return "(" + render(e->args[0]) + sym + render(e->args[1]) + ")"; };
    if (e->op == "add")
        return infix(" + ");
    if (e->op == "sub")
        return infix(" - ");
    if (e->op == "mul")
        return infix("*");
    if (e->op == "pow")
        return render(e->args[0]) + "^" + (e->args[1]->op == "lit" ? render(e->args[1]) : "{" + render(e->args[1]) + "}");
    std::string out = e->op + "(";
    for (std::size_t i = 0; i < e->args.size(); ++i)
        out += (i ? ", " : "") + render(e->args[i]);
    return out + ")";
}

nlohmann::json to_json(const ExprPtr& e) {
    if (e->op == "lit") {
        const std::string s = e->value.get_str();
        if (e->value.fits_slong_p())
            return {{"op", "lit"}, {"args", {e->value.get_si()}}};
        return {{"op", "lit"}, {"args", {s}}};
    }
    nlohmann::json args = nlohmann::json::array();
    for (const ExprPtr& a : e->args)
        args.push_back(to_json(a));
    return {{"op", e->op}, {"args", args}};
}

ExprPtr expr_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("op") || !j.contains("args") || !j["args"].is_array())
        throw std::invalid_argument("expression must be an object with 'op' and 'args'");
    const std::string op = j["op"].get<std::string>();
    if (op == "lit") {
        if (j["args"].size() != 1)
            throw std::invalid_argument("lit takes one argument");
        const auto& v = j["args"][0];
        BigNat value = v.is_string() ? BigNat(v.get<std::string>()) : BigNat(v.get<long>());
        if (value < 0)
            throw std::invalid_argument("literals are natural numbers");
        return lit(value);
    }
    std::vector<ExprPtr> args;
    for (const auto& a : j["args"])
        args.push_back(expr_from_json(a));
    return node(op, std::move(args));
}

// ---------------------------------------------------------------------------

std::string to_string(StrategyKind k) {
    switch (k) {
    case StrategyKind::ExactTiny:
        return "EXACT_TINY";
    case StrategyKind::Table:
        return "TABLE";
    case StrategyKind::Symbolic:
        return "SYMBOLIC";
    }
    return "?";
}

MTStrategy MTStrategy::exact_tiny() {
    MTStrategy s;
    s.kind = StrategyKind::ExactTiny;
    return s;
}

MTStrategy MTStrategy::symbolic() {
    return MTStrategy{};
}

MTStrategy MTStrategy::from_entries(const std::map<std::tuple<long, long, long>, BigNat>& entries) {
    for (const auto& [key, v] : entries) {
        if (v < 1)
            throw std::invalid_argument("MT table entries must be >= 1");
        for (const auto& [key2, v2] : entries) {
            const bool below = std::get<0>(key) <= std::get<0>(key2) && std::get<1>(key) <= std::get<1>(key2) &&
                               std::get<2>(key) <= std::get<2>(key2);
            if (below && v > v2)
                throw std::invalid_argument("MT table is not monotone");
        }
    }
    auto shared = std::make_shared<const std::map<std::tuple<long, long, long>, BigNat>>(entries);
    return from_function([shared](const BigNat& d, const BigNat& m, const BigNat& r) -> std::optional<BigNat> {
        if (!d.fits_slong_p() || !m.fits_slong_p() || !r.fits_slong_p())
            return std::nullopt;
        auto it = shared->find({d.get_si(), m.get_si(), r.get_si()});
        if (it == shared->end())
            return std::nullopt;
        return it->second;
    });
}

MTStrategy MTStrategy::from_function(MtTable fn) {
    MTStrategy s;
    s.kind = StrategyKind::Table;
    s.table = std::move(fn);
    return s;
}

std::pair<BigNat, bool> resolve_mt(const BigNat& d, const BigNat& m, const BigNat& r, const MTStrategy& strategy) {
    if (d < 1 || m < d || r < 1)
        throw std::invalid_argument("MT(d,m,r) needs 1 <= d <= m and r >= 1");
    switch (strategy.kind) {
    case StrategyKind::Symbolic:
        throw std::logic_error("symbolic strategy has no numeric MT");
    case StrategyKind::Table: {
        auto v = strategy.table(d, m, r);
        if (!v)
            throw std::out_of_range("MT table has no entry for (" + d.get_str() + "," + m.get_str() + "," +
                                    r.get_str() + ")");
        if (*v < 1)
            throw std::invalid_argument("MT table returned a value below 1");
        return {*v, true};
    }
    case StrategyKind::ExactTiny:
        break;
    }
    // One color, or m = d: any length-m sequence is a witness.
    if (r == 1 || d == m)
        return {m, true};
    if (!d.fits_slong_p() || !m.fits_slong_p() || !r.fits_slong_p() || m > 6 || r > 6)
        return {m, false};

    static std::mutex mu;
    static std::map<std::tuple<long, long, long>, std::pair<BigNat, bool>> cache;
    const auto key = std::make_tuple(d.get_si(), m.get_si(), r.get_si());
    {
        std::lock_guard<std::mutex> lock(mu);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
    }
    ExactQuery q;
    q.kind = ExactKind::MT;
    q.d = static_cast<std::size_t>(d.get_si());
    q.m = static_cast<std::size_t>(m.get_si());
    q.r = static_cast<int>(r.get_si());
    q.n_max = strategy.exact_n_max;
    VerifyOptions opts;
    opts.node_budget = strategy.exact_node_budget;
    const ExactReport rep = exact_number(q, opts);
    std::pair<BigNat, bool> out;
    if (rep.value)
        out = {BigNat(static_cast<unsigned long>(*rep.value)), true};
    else
        out = {std::max(m, BigNat(static_cast<unsigned long>(rep.refuted_below))), false};
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = out;
    return out;
}

// ---------------------------------------------------------------------------

namespace {

struct Val {
    BigNat v;
    bool exact;
};

// An MT leaf met under the symbolic strategy.
struct Unresolved {};

Val eval(const ExprPtr& e, const MTStrategy& s, GProvider provider);

Val eval_h(const std::vector<Val>& a, const MTStrategy& s, GProvider provider) {
    const BigNat& d = a[0].v;
    const BigNat& ell = a[1].v;
    const BigNat& r = a[2].v;
    const long k = as_long(a[3].v, "k");
    const BigNat& x = a[4].v;
    if (d < 1 || ell < 1 || r < 1 || k < 1 || x < 0)
        throw std::invalid_argument("h needs positive d, ell, r, k and x >= 0");
    if (x > 10'000'000)
        throw TooLarge("h recursion depth too large");
    const BigNat R = checked_pow(r, checked_pow(BigNat(k + 1), d * ell, s.digit_guard), s.digit_guard);
    bool exact = a[0].exact && a[1].exact && a[2].exact && a[3].exact && a[4].exact;
    BigNat v = 0;
    for (BigNat i = 0; i < x; ++i) {
        const BigNat mm = v + 1;
        if (provider == GProvider::ExactKnown && (mm == 1 || R == 1)) {
            v = mm == 1 ? BigNat(1) : mm;
            continue;
        }
        if (!mm.fits_slong_p() || !R.fits_slong_p())
            throw TooLarge("G arguments do not fit a machine word");
        Val g = eval(G_expr(k, mm.get_si(), R.get_si()), s, provider);
        exact = exact && g.exact;
        v = g.v;
    }
    return {v, exact};
}

Val eval(const ExprPtr& e, const MTStrategy& s, GProvider provider) {
    if (e->op == "lit")
        return {e->value, true};
    std::vector<Val> a;
    for (const ExprPtr& x : e->args)
        a.push_back(eval(x, s, provider));
    bool exact = true;
    for (const Val& x : a)
        exact = exact && x.exact;
    if (e->op == "MT") {
        if (s.kind == StrategyKind::Symbolic)
            throw Unresolved{};
        auto [v, ex] = resolve_mt(a[0].v, a[1].v, a[2].v, s);
        return {v, exact && ex};
    }
    if (e->op == "h")
        return eval_h(a, s, provider);
    std::vector<BigNat> vals;
    for (const Val& x : a)
        vals.push_back(x.v);
    return {apply_numeric(e->op, vals, s.digit_guard), exact};
}

}  // namespace

BoundResult evaluate(const ExprPtr& e, const MTStrategy& strategy) {
    BoundResult out;
    out.expr = simplify(e, strategy.digit_guard);
    if (strategy.kind == StrategyKind::Symbolic && !is_ground(out.expr))
        return out;
    try {
        Val v = eval(out.expr, strategy, GProvider::Bound);
        out.value = v.v;
        out.exact = v.exact;
    } catch (const TooLarge&) {
        out.too_large = true;
        out.exact = false;
    } catch (const Unresolved&) {
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

ExprPtr L(long v) {
    return lit(BigNat(v));
}

void require_positive(std::initializer_list<long> xs) {
    for (long x : xs)
        if (x < 1)
            throw std::invalid_argument("bound parameters must be positive");
}

}  // namespace

ExprPtr G_expr(long k, long m, long r) {
    require_positive({k, m, r});
    if (k == 1)
        return node("MT", {L(1), L(m), L(r)});
    const ExprPtr M = G_expr(k - 1, m, r);
    const ExprPtr width = node("mul", {M, L(2 * k - 1)});
    return node("MT", {width, node("sub", {node("mul", {L(2), width}), L(1)}),
                       node("pow", {L(r), node("alpha", {L(k), width})})});
}

ExprPtr G_pm_expr(long k, long m, long r) {
    require_positive({k, m, r});
    const ExprPtr M = G_expr(k, m, r);
    const ExprPtr len = node("mul", {L(2 * k), M});
    return node("MT", {len, node("sub", {node("mul", {L(4 * k), M}), L(1)}),
                       node("pow", {L(r), node("beta", {L(k), len})})});
}

ExprPtr MG_expr(long k, long d, long m, long r) {
    require_positive({k, d, m, r});
    if (d > m)
        throw std::invalid_argument("MG needs d <= m");
    if (d == 1)
        return G_expr(k, m, r);
    const long dp = d - 1;
    const ExprPtr M = MG_expr(k, dp, m - 1, r);
    const ExprPtr M1 = node("add", {M, L(1)});
    return node("add", {L(dp), node("h", {L(dp), M1, L(r), L(k), node("sub", {M1, L(dp)})})});
}

ExprPtr MG_pm_expr(long k, long d, long m, long r) {
    require_positive({k, d, m, r});
    if (d > m)
        throw std::invalid_argument("MG needs d <= m");
    const ExprPtr M = MG_expr(k, d, m, r);
    const ExprPtr len = node("mul", {L(2 * k), M});
    return node("MT", {len, node("sub", {node("mul", {L(4 * k), M}), L(1)}),
                       node("pow", {L(r), node("gamma", {L(k), L(d), len})})});
}

BoundResult bound_MT(long d, long m, long r, const MTStrategy& mt) {
    require_positive({d, m, r});
    if (d > m)
        throw std::invalid_argument("MT needs d <= m");
    return evaluate(node("MT", {L(d), L(m), L(r)}), mt);
}

BoundResult bound_G(long k, long m, long r, const MTStrategy& mt) {
    return evaluate(G_expr(k, m, r), mt);
}

BoundResult bound_G_pm(long k, long m, long r, const MTStrategy& mt) {
    return evaluate(G_pm_expr(k, m, r), mt);
}

BoundResult bound_MG(long k, long d, long m, long r, const MTStrategy& mt) {
    return evaluate(MG_expr(k, d, m, r), mt);
}

BoundResult bound_MG_pm(long k, long d, long m, long r, const MTStrategy& mt) {
    return evaluate(MG_pm_expr(k, d, m, r), mt);
}

BoundResult h_fn(const BigNat& d, const BigNat& ell, const BigNat& r, const BigNat& k, const BigNat& x,
                 const MTStrategy& mt, GProvider provider) {
    BoundResult out;
    out.expr = node("h", {lit(d), lit(ell), lit(r), lit(k), lit(x)});
    try {
        std::vector<Val> a = {{d, true}, {ell, true}, {r, true}, {k, true}, {x, true}};
        Val v = eval_h(a, mt, provider);
        out.value = v.v;
        out.exact = v.exact;
    } catch (const TooLarge&) {
        out.too_large = true;
        out.exact = false;
    } catch (const Unresolved&) {
    }
    return out;
}

}  // namespace gowers::bounds
