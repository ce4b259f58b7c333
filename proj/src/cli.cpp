#include "gowers/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gowers/blocks.hpp"
#include "gowers/bounds.hpp"
#include "gowers/coloring.hpp"
#include "gowers/core.hpp"
#include "gowers/extractor.hpp"
#include "gowers/json_io.hpp"
#include "gowers/types.hpp"
#include "gowers/verifier.hpp"
#include "gowers/witness_check.hpp"

namespace gowers {

namespace {

constexpr std::uint64_t kDefaultBudget = 50'000'000;

enum Exit { kProduced = 0, kAbsent = 1, kFailure = 2 };

struct Globals {
    std::string format = "text";
    unsigned jobs = 1;
    std::optional<std::uint64_t> budget;

    bool json() const { return format == "json"; }
};

std::uint64_t node_budget(const Globals& g) {
    if (g.budget)
        return *g.budget;
    if (const char* env = std::getenv("GOWERS_LAB_BUDGET")) {
        try {
            std::size_t used = 0;
            const unsigned long long v = std::stoull(env, &used);
            if (used == std::string(env).size())
                return v;
        } catch (const std::exception&) {
        }
        throw std::invalid_argument(std::string("GOWERS_LAB_BUDGET is not a number: ") + env);
    }
    return kDefaultBudget;
}

std::string upper(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char ch) {
        return ch == '-' ? '_' : static_cast<char>(std::toupper(ch));
    });
    return s;
}

std::vector<int> parse_ints(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        out.push_back(std::stoi(item, &used));
        if (used != item.size())
            throw std::invalid_argument("not an integer: " + item);
    }
    return out;
}

// --- bounds -----------------------------------------------------------------

struct BoundsArgs {
    std::string fn;
    long q = 0, n = 0, m = 1, k = 1, d = 1, r = 1, ell = 1, x = 0;
    std::string strategy = "EXACT_TINY";
    std::string table;
    std::string expr;
    std::string provider = "bound";
    std::size_t digit_guard = bounds::kDefaultDigitGuard;
};

bounds::MTStrategy make_strategy(const BoundsArgs& a, const Globals& g) {
    using bounds::MTStrategy;
    const std::string kind = upper(a.strategy);
    MTStrategy s;
    if (kind == "EXACT_TINY") {
        s = MTStrategy::exact_tiny();
        s.exact_node_budget = node_budget(g);
    } else if (kind == "SYMBOLIC") {
        s = MTStrategy::symbolic();
    } else if (kind == "TABLE") {
        if (a.table.empty())
            throw std::invalid_argument("--strategy TABLE needs --table FILE");
        const json j = read_json_file(a.table);
        if (!j.is_array())
            throw std::invalid_argument("MT table must be an array of {d, m, r, value}");
        std::map<std::tuple<long, long, long>, bounds::BigNat> entries;
        for (const auto& e : j)
            entries[{e.at("d").get<long>(), e.at("m").get<long>(), e.at("r").get<long>()}] =
                bounds::BigNat(e.at("value").is_string() ? e.at("value").get<std::string>()
                                                         : std::to_string(e.at("value").get<long>()));
        s = MTStrategy::from_entries(entries);
    } else {
        throw std::invalid_argument("unknown strategy " + a.strategy);
    }
    s.digit_guard = a.digit_guard;
    return s;
}

int emit_value(const Globals& g, std::ostream& out, const std::string& fn, const bounds::BigNat& v) {
    if (g.json())
        out << json{{"fn", fn}, {"value", v.get_str()}, {"exact", true}}.dump() << "\n";
    else
        out << v.get_str() << "\n";
    return kProduced;
}

int emit_bound(const Globals& g, std::ostream& out, std::ostream& err, const std::string& fn,
               const bounds::BoundResult& b) {
    if (g.json()) {
        json j = {{"fn", fn},
                  {"expr", bounds::render(b.expr)},
                  {"tree", bounds::to_json(b.expr)},
                  {"exact", b.exact},
                  {"too_large", b.too_large}};
        j["value"] = b.value ? json(b.value->get_str()) : json(nullptr);
        out << j.dump() << "\n";
    } else if (b.value) {
        out << b.value->get_str() << "\n";
        if (!b.exact)
            err << "note: some MT leaves used the floor MT >= m; the value is a lower bound\n";
    } else if (b.too_large) {
        out << bounds::render(b.expr) << "\n";
        err << "value exceeds the digit guard\n";
    } else {
        out << bounds::render(b.expr) << "\n";
    }
    return b.too_large ? kFailure : kProduced;
}

int run_bounds(const BoundsArgs& a, const Globals& g, std::ostream& out, std::ostream& err) {
    using bounds::BigNat;
    if (!a.expr.empty()) {
        const bounds::ExprPtr e = bounds::expr_from_json(read_json_file(a.expr));
        return emit_bound(g, out, err, "expr", bounds::evaluate(e, make_strategy(a, g)));
    }
    const std::string fn = a.fn;
    auto nonneg = [](long v, const char* name) {
        if (v < 0)
            throw std::invalid_argument(std::string("--") + name + " must be non-negative");
        return BigNat(v);
    };
    try {
        if (fn == "E") {
            if (a.q < 0)
                throw std::invalid_argument("--q must be non-negative");
            std::vector<BigNat> args{nonneg(a.n, "n")};
            if (a.q == 0)
                args.push_back(nonneg(a.m, "m"));
            return emit_value(g, out, fn, bounds::grzegorczyk_E(static_cast<unsigned>(a.q), args, a.digit_guard));
        }
        if (fn == "alpha")
            return emit_value(g, out, fn, bounds::alpha(nonneg(a.k, "k"), nonneg(a.m, "m"), a.digit_guard));
        if (fn == "beta")
            return emit_value(g, out, fn, bounds::beta(nonneg(a.k, "k"), nonneg(a.m, "m"), a.digit_guard));
        if (fn == "gamma")
            return emit_value(g, out, fn,
                              bounds::gamma(nonneg(a.k, "k"), nonneg(a.d, "d"), nonneg(a.m, "m"), a.digit_guard));
    } catch (const bounds::TooLarge& e) {
        if (g.json())
            out << json{{"fn", fn}, {"value", nullptr}, {"too_large", true}}.dump() << "\n";
        err << e.what() << "\n";
        return kFailure;
    }
    const bounds::MTStrategy s = make_strategy(a, g);
    if (fn == "MT")
        return emit_bound(g, out, err, fn, bounds::bound_MT(a.d, a.m, a.r, s));
    if (fn == "G")
        return emit_bound(g, out, err, fn, bounds::bound_G(a.k, a.m, a.r, s));
    if (fn == "G_PM")
        return emit_bound(g, out, err, fn, bounds::bound_G_pm(a.k, a.m, a.r, s));
    if (fn == "MG")
        return emit_bound(g, out, err, fn, bounds::bound_MG(a.k, a.d, a.m, a.r, s));
    if (fn == "MG_PM")
        return emit_bound(g, out, err, fn, bounds::bound_MG_pm(a.k, a.d, a.m, a.r, s));
    if (fn == "h") {
        bounds::GProvider p;
        if (a.provider == "bound")
            p = bounds::GProvider::Bound;
        else if (a.provider == "exact-known")
            p = bounds::GProvider::ExactKnown;
        else
            throw std::invalid_argument("unknown provider " + a.provider);
        return emit_bound(g, out, err, fn,
                          bounds::h_fn(nonneg(a.d, "d"), nonneg(a.ell, "ell"), nonneg(a.r, "r"), nonneg(a.k, "k"),
                                       nonneg(a.x, "x"), s, p));
    }
    throw std::invalid_argument("unknown bound function " + fn);
}

// --- exact ------------------------------------------------------------------

struct QueryArgs {
    std::string kind = "MT";
    int k = 1;
    std::size_t d = 1, m = 1, n_max = 8, n = 0;
    int r = 1;

    ExactQuery query() const {
        ExactQuery q;
        q.kind = exact_kind_from_string(upper(kind));
        q.k = k;
        q.d = d;
        q.m = m;
        q.r = r;
        q.n_max = n_max;
        validate(q);
        return q;
    }
};

VerifyOptions verify_options(const Globals& g) {
    VerifyOptions o;
    o.node_budget = node_budget(g);
    o.jobs = std::max(1u, g.jobs);
    return o;
}

int run_exact(const QueryArgs& a, const Globals& g, std::ostream& out) {
    const ExactQuery q = a.query();
    const ExactReport rep = exact_number(q, verify_options(g));
    if (g.json()) {
        json j = {{"query", query_key(q)},
                  {"refuted_below", rep.refuted_below},
                  {"budget_exhausted", rep.budget_exhausted},
                  {"nodes", rep.nodes},
                  {"n_max", q.n_max}};
        j["value"] = rep.value ? json(*rep.value) : json(nullptr);
        j["closure_holds"] = rep.closure_holds ? json(*rep.closure_holds) : json(nullptr);
        out << j.dump() << "\n";
    } else if (rep.value) {
        out << *rep.value << "\n";
    } else if (rep.budget_exhausted) {
        out << "budget exhausted (refuted below " << rep.refuted_below << ")\n";
    } else {
        out << "none up to n=" << q.n_max << "\n";
    }
    if (rep.value)
        return kProduced;
    return rep.budget_exhausted ? kFailure : kAbsent;
}

// --- oracles and witnesses ----------------------------------------------------

struct Params {
    std::string theorem;
    std::size_t n = 1, d = 1, m = 1;
    int k = 1;
};

Domain theorem_domain(const Params& p) {
    const std::string& t = p.theorem;
    if (t == "positive" || t == "direct" || t == "insensitive" || t == "canonize")
        return Domain::pos_sphere(p.n, p.k);
    if (t == "signed" || t == "canonize-signed")
        return Domain::signed_sphere(p.n, p.k);
    if (t == "multidim")
        return Domain::pos_blocks(p.n, p.k, p.d);
    if (t == "multidim-signed" || t == "canonize-blocks")
        return Domain::signed_blocks(p.n, p.k, p.d);
    if (t == "mt")
        return Domain::set_blocks(SetBlockSeq::singletons(p.n), p.d);
    throw std::invalid_argument("unknown theorem " + t);
}

// An oracle description as stored in witness files: either a built-in id
// with its domain and r, or a full table.
json oracle_source(const std::string& id, const Domain& dom, int r) {
    if (std::filesystem::exists(id))
        return {{"table", to_json(load_oracle_file(id))}};
    return {{"builtin", id}, {"domain", to_json(dom)}, {"r", r}};
}

template <class Element>
Coloring<Element> oracle_from_source(const json& src) {
    if (src.contains("table")) {
        OracleTable t = oracle_from_json(src.at("table"));
        return memoized(table_coloring<Element>(t.domain, t.r, std::move(t.table)));
    }
    const std::string id = src.at("builtin").get<std::string>();
    const Domain dom = domain_from_json(src.at("domain"));
    const int r = src.at("r").get<int>();
    if constexpr (std::is_same_v<Element, FiniteFunction>)
        return memoized(builtin_function_coloring(id, dom, r));
    else if constexpr (std::is_same_v<Element, FuncBlockSeq>)
        return memoized(builtin_sequence_coloring(id, dom, r));
    else
        return memoized(builtin_set_coloring(id, dom, r));
}

json params_json(const Params& p) {
    return {{"n", p.n}, {"k", p.k}, {"d", p.d}, {"m", p.m}};
}

struct ExtractArgs {
    Params p;
    std::string oracle = "random:0";
    int r = 2;
    std::string witness_out;
};

template <class Payload>
int finish_extract(const ExtractArgs& a, const json& source, const ExtractionReport<Payload>& rep,
                   const std::function<void(json&, const Payload&)>& put, const Globals& g, std::ostream& out) {
    json w;
    if (rep.found()) {
        w = {{"theorem", a.p.theorem}, {"params", params_json(a.p)}, {"oracle", source}, {"color", rep.color}};
        put(w, *rep.witness);
        if (!a.witness_out.empty())
            write_json_file(a.witness_out, w);
    }
    if (g.json()) {
        json j = {{"outcome", to_string(rep.outcome)}, {"candidates", rep.candidates}};
        if (rep.found()) {
            j["color"] = rep.color;
            j["witness"] = w;
        }
        out << j.dump() << "\n";
    } else {
        out << to_string(rep.outcome) << "\n";
        if (rep.found()) {
            out << "color " << rep.color << "\n";
            if (w.contains("s"))
                out << "s " << set_seq_from_json(w.at("s")).encode() << "\n";
            if (w.contains("F"))
                out << "F " << func_seq_from_json(w.at("F")).encode() << "\n";
        }
    }
    switch (rep.outcome) {
        case Outcome::Found: return kProduced;
        case Outcome::Absent: return kAbsent;
        case Outcome::BudgetExhausted: return kFailure;
    }
    return kFailure;
}

int run_extract(const ExtractArgs& a, const Globals& g, std::ostream& out) {
    const Params& p = a.p;
    const Domain dom = theorem_domain(p);
    const json source = oracle_source(a.oracle, dom, a.r);
    SearchOptions opts;
    opts.node_budget = node_budget(g);

    auto put_F = std::function<void(json&, const FuncBlockSeq&)>([](json& w, const FuncBlockSeq& F) {
        w["F"] = to_json(F);
    });
    auto put_s = std::function<void(json&, const SetBlockSeq&)>([](json& w, const SetBlockSeq& s) {
        w["s"] = to_json(s);
    });
    auto put_sw = std::function<void(json&, const SignedWitness&)>([](json& w, const SignedWitness& sw) {
        w["s"] = to_json(sw.s);
        w["F"] = to_json(sw.F);
    });

    const std::string& t = p.theorem;
    if (t == "positive" || t == "direct" || t == "insensitive" || t == "canonize" || t == "signed" ||
        t == "canonize-signed") {
        const FunctionColoring c = oracle_from_source<FiniteFunction>(source);
        if (t == "positive")
            return finish_extract(a, source, extract_positive(p.n, p.k, p.m, c, opts), put_F, g, out);
        if (t == "direct")
            return finish_extract(a, source, direct_search_positive(p.n, p.k, p.m, c, opts), put_F, g, out);
        if (t == "insensitive")
            return finish_extract(a, source, make_insensitive(p.n, p.k, p.m, c, opts), put_F, g, out);
        if (t == "canonize")
            return finish_extract(a, source, canonize_types(p.n, p.k, p.m, c, opts), put_s, g, out);
        if (t == "canonize-signed")
            return finish_extract(a, source, canonize_signed_types(p.n, p.k, p.m, c, opts), put_s, g, out);
        return finish_extract(a, source, extract_signed(p.n, p.k, p.m, c, opts), put_sw, g, out);
    }
    if (t == "mt") {
        const SetSeqColoring c = oracle_from_source<SetBlockSeq>(source);
        return finish_extract(a, source, mt_search(SetBlockSeq::singletons(p.n), p.d, p.m, c, opts), put_s, g, out);
    }
    const SequenceColoring c = oracle_from_source<FuncBlockSeq>(source);
    if (t == "multidim")
        return finish_extract(a, source, extract_multidim_positive(p.n, p.k, p.d, p.m, c, opts), put_F, g, out);
    if (t == "multidim-signed")
        return finish_extract(a, source, extract_multidim_signed(p.n, p.k, p.d, p.m, c, opts), put_sw, g, out);
    return finish_extract(a, source, canonize_block_types(p.n, p.k, p.d, p.m, c, opts), put_s, g, out);
}

bool fits(const Params& p, const FuncBlockSeq& F, bool is_signed) {
    return F.ambient() == p.n && F.k() == p.k && F.is_signed() == is_signed;
}

bool recheck_witness(const json& w) {
    Params p;
    p.theorem = w.at("theorem").get<std::string>();
    const json& pj = w.at("params");
    p.n = pj.at("n").get<std::size_t>();
    p.k = pj.at("k").get<int>();
    p.d = pj.at("d").get<std::size_t>();
    p.m = pj.at("m").get<std::size_t>();
    const Domain dom = theorem_domain(p);
    const json& source = w.at("oracle");
    const int color = w.at("color").get<int>();
    const std::string& t = p.theorem;

    if (t == "mt") {
        const SetSeqColoring c = oracle_from_source<SetBlockSeq>(source);
        require_domain(c, dom);
        return check_mt_witness(c, SetBlockSeq::singletons(p.n), p.d, p.m, set_seq_from_json(w.at("s")), color);
    }
    if (t == "canonize" || t == "canonize-signed") {
        const FunctionColoring c = oracle_from_source<FiniteFunction>(source);
        require_domain(c, dom);
        const SetBlockSeq s = set_seq_from_json(w.at("s"));
        return s.ambient() == p.n && s.size() == p.m && is_type_canonical(c, s, p.k, t == "canonize-signed");
    }
    if (t == "canonize-blocks") {
        const SequenceColoring c = oracle_from_source<FuncBlockSeq>(source);
        require_domain(c, dom);
        const SetBlockSeq s = set_seq_from_json(w.at("s"));
        return s.ambient() == p.n && s.size() == p.m && is_block_type_canonical(c, s, p.k, p.d, true);
    }
    if (t == "positive" || t == "direct" || t == "insensitive" || t == "signed") {
        const FunctionColoring c = oracle_from_source<FiniteFunction>(source);
        require_domain(c, dom);
        const FuncBlockSeq F = func_seq_from_json(w.at("F"));
        if (t == "signed") {
            const SetBlockSeq s = set_seq_from_json(w.at("s"));
            return fits(p, F, true) && s.ambient() == p.n && check_signed_witness(c, p.k, p.m, s, F, color);
        }
        if (!fits(p, F, false))
            return false;
        if (t == "insensitive")
            return F.size() == p.m && is_insensitive(c, F, p.k);
        return check_positive_witness(c, p.k, p.m, F, color);
    }
    const SequenceColoring c = oracle_from_source<FuncBlockSeq>(source);
    require_domain(c, dom);
    const FuncBlockSeq F = func_seq_from_json(w.at("F"));
    if (t == "multidim")
        return fits(p, F, false) && check_multidim_positive_witness(c, p.k, p.d, p.m, F, color);
    const SetBlockSeq s = set_seq_from_json(w.at("s"));
    return fits(p, F, true) && s.ambient() == p.n && check_multidim_signed_witness(c, p.k, p.d, p.m, s, F, color);
}

// --- verify -------------------------------------------------------------------

struct VerifyArgs {
    std::string witness;
    bool no_ramsey = false;
    bool holds = false;
    int K = 2;
    std::size_t n = 0;
    QueryArgs query;
};

int emit_bool(const Globals& g, std::ostream& out, bool value, json extra) {
    if (g.json()) {
        extra["result"] = value;
        out << extra.dump() << "\n";
    } else {
        out << (value ? "true" : "false") << "\n";
    }
    return value ? kProduced : kAbsent;
}

int run_verify(const VerifyArgs& a, const Globals& g, std::ostream& out) {
    const int modes = int(!a.witness.empty()) + int(a.no_ramsey) + int(a.holds);
    if (modes != 1)
        throw std::invalid_argument("verify needs exactly one of --witness, --no-ramsey-degree, --holds");
    if (!a.witness.empty()) {
        const json w = read_json_file(a.witness);
        bool ok;
        try {
            ok = recheck_witness(w);
        } catch (const json::exception& e) {
            throw std::invalid_argument(std::string("malformed witness file: ") + e.what());
        }
        return emit_bool(g, out, ok, {{"theorem", w.at("theorem")}});
    }
    if (a.no_ramsey) {
        if (a.K < 1 || a.n < 1)
            throw std::invalid_argument("--K and --n must be positive");
        const NoRamseyReport rep = verify_no_ramsey_degree(a.n, a.K, verify_options(g));
        if (rep.verdict == Verdict::BudgetExhausted) {
            if (g.json())
                out << json{{"result", nullptr}, {"verdict", to_string(rep.verdict)}}.dump() << "\n";
            else
                out << "budget exhausted\n";
            return kFailure;
        }
        return emit_bool(g, out, rep.verdict == Verdict::Holds && rep.witnesses_ok,
                         {{"K", a.K}, {"n", a.n}, {"sequences", rep.sequences}, {"witnesses_ok", rep.witnesses_ok}});
    }
    if (a.n < 1)
        throw std::invalid_argument("--holds needs --n >= 1");
    const ExactQuery q = a.query.query();
    const HoldsReport rep = holds_at(q, a.n, verify_options(g));
    if (rep.verdict == Verdict::BudgetExhausted) {
        if (g.json())
            out << json{{"result", nullptr}, {"verdict", to_string(rep.verdict)}, {"nodes", rep.nodes}}.dump() << "\n";
        else
            out << "budget exhausted\n";
        return kFailure;
    }
    json extra = {{"query", query_key(q)},
                  {"n", a.n},
                  {"nodes", rep.nodes},
                  {"domain_size", rep.domain_size},
                  {"witness_count", rep.witness_count}};
    if (!rep.counterexample.empty()) {
        json ce = json::object();
        for (const auto& [key, colour] : rep.counterexample)
            ce[key] = colour;
        extra["counterexample"] = ce;
    }
    return emit_bool(g, out, rep.verdict == Verdict::Holds, extra);
}

// --- types and span -------------------------------------------------------------

int run_types(int k, std::size_t d, bool is_signed, bool count_only, const Globals& g, std::ostream& out) {
    if (k < 1 || d < 1)
        throw std::invalid_argument("--k and --d must be positive");
    const std::vector<GType> types = enumerate_types(k, d, is_signed);
    if (g.json()) {
        json j = {{"k", k}, {"d", d}, {"signed", is_signed}, {"count", types.size()}};
        if (!count_only) {
            json words = json::array();
            for (const GType& t : types)
                words.push_back(t.word());
            j["types"] = words;
        }
        out << j.dump() << "\n";
    } else if (count_only) {
        out << types.size() << "\n";
    } else {
        for (const GType& t : types)
            out << t.encode() << "\n";
    }
    return kProduced;
}

struct SpanArgs {
    int k = 1;
    bool is_signed = false;
    std::string mode = "strict";
    std::vector<std::string> funcs;
    bool count_only = false;
};

int run_span(const SpanArgs& a, const Globals& g, std::ostream& out) {
    if (a.funcs.empty())
        throw std::invalid_argument("span needs at least one --f");
    std::vector<FiniteFunction> fs;
    for (const std::string& text : a.funcs)
        fs.emplace_back(a.k, a.is_signed, parse_ints(text));
    if (!is_block(fs))
        throw std::invalid_argument("the functions do not form a block sequence");
    SpanMode mode;
    if (a.mode == "strict")
        mode = a.is_signed ? SpanMode::SignedStrict : SpanMode::PosStrict;
    else if (a.mode == "all")
        mode = a.is_signed ? SpanMode::SignedAll : SpanMode::PosAll;
    else
        throw std::invalid_argument("unknown span mode " + a.mode);
    const std::vector<FiniteFunction> elems = span(FuncBlockSeq(fs), mode);
    if (g.json()) {
        json j = {{"count", elems.size()}};
        if (!a.count_only) {
            json list = json::array();
            for (const FiniteFunction& f : elems)
                list.push_back(std::vector<int>(f.values().begin(), f.values().end()));
            j["elements"] = list;
        }
        out << j.dump() << "\n";
    } else if (a.count_only) {
        out << elems.size() << "\n";
    } else {
        for (const FiniteFunction& f : elems)
            out << f.encode() << "\n";
    }
    return kProduced;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite Gowers c0 theorem laboratory", "gowers_lab"};
    app.require_subcommand(1);
    Globals g;
    std::uint64_t budget = 0;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "text"}));
    app.add_option("--jobs", g.jobs, "Worker threads for exhaustive searches")->check(CLI::PositiveNumber);
    auto* budget_opt = app.add_option("--budget", budget, "Node budget (overrides GOWERS_LAB_BUDGET)");

    BoundsArgs ba;
    auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate a bound function");
    bounds_cmd->add_option("--fn", ba.fn)->check(
        CLI::IsMember({"E", "alpha", "beta", "gamma", "MT", "G", "G_PM", "MG", "MG_PM", "h"}));
    bounds_cmd->add_option("--q", ba.q);
    bounds_cmd->add_option("--n", ba.n);
    bounds_cmd->add_option("--m", ba.m);
    bounds_cmd->add_option("--k", ba.k);
    bounds_cmd->add_option("--d", ba.d);
    bounds_cmd->add_option("--r", ba.r);
    bounds_cmd->add_option("--ell", ba.ell);
    bounds_cmd->add_option("--x", ba.x);
    bounds_cmd->add_option("--strategy", ba.strategy, "EXACT_TINY, TABLE or SYMBOLIC");
    bounds_cmd->add_option("--table", ba.table, "MT table file for --strategy TABLE");
    bounds_cmd->add_option("--expr", ba.expr, "Expression tree file to evaluate");
    bounds_cmd->add_option("--provider", ba.provider, "G values inside h: bound or exact-known");
    bounds_cmd->add_option("--digit-guard", ba.digit_guard);

    QueryArgs qa;
    auto* exact_cmd = app.add_subcommand("exact", "Compute a tiny exact threshold");
    auto add_query = [](CLI::App* cmd, QueryArgs& q) {
        cmd->add_option("--kind", q.kind, "MT, G, G_PM, MG or MG_PM");
        cmd->add_option("--k", q.k);
        cmd->add_option("--d", q.d);
        cmd->add_option("--m", q.m);
        cmd->add_option("--r", q.r);
        cmd->add_option("--n-max", q.n_max);
    };
    add_query(exact_cmd, qa);

    ExtractArgs ea;
    auto* extract_cmd = app.add_subcommand("extract", "Run a constructive extraction");
    extract_cmd->add_option("--theorem", ea.p.theorem)
        ->required()
        ->check(CLI::IsMember({"positive", "signed", "multidim", "multidim-signed", "canonize", "canonize-signed",
                               "canonize-blocks", "insensitive", "direct", "mt"}));
    extract_cmd->add_option("--n", ea.p.n)->required();
    extract_cmd->add_option("--k", ea.p.k);
    extract_cmd->add_option("--d", ea.p.d);
    extract_cmd->add_option("--m", ea.p.m);
    extract_cmd->add_option("--r", ea.r);
    extract_cmd->add_option("--oracle", ea.oracle, "Built-in oracle id or oracle file");
    extract_cmd->add_option("--witness-out", ea.witness_out);

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify", "Re-check a witness or run an exhaustive check");
    verify_cmd->add_option("--witness", va.witness);
    verify_cmd->add_flag("--no-ramsey-degree", va.no_ramsey);
    verify_cmd->add_flag("--holds", va.holds);
    verify_cmd->add_option("--K", va.K);
    verify_cmd->add_option("--n", va.n);
    add_query(verify_cmd, va.query);

    int tk = 1;
    std::size_t td = 1;
    bool t_signed = false, t_count = false;
    auto* types_cmd = app.add_subcommand("types", "Enumerate or count types");
    types_cmd->add_option("--k", tk);
    types_cmd->add_option("--d", td);
    types_cmd->add_flag("--signed", t_signed);
    types_cmd->add_flag("--count", t_count);

    SpanArgs sa;
    auto* span_cmd = app.add_subcommand("span", "Enumerate the span of a block sequence");
    span_cmd->add_option("--k", sa.k);
    span_cmd->add_flag("--signed", sa.is_signed);
    span_cmd->add_option("--mode", sa.mode, "strict or all");
    span_cmd->add_option("--f", sa.funcs, "Comma-separated values of one function")->allow_extra_args(false);
    span_cmd->add_flag("--count", sa.count_only);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kProduced : kFailure;
    }
    if (*budget_opt)
        g.budget = budget;

    try {
        if (*bounds_cmd) {
            if (ba.fn.empty() && ba.expr.empty())
                throw std::invalid_argument("bounds needs --fn or --expr");
            return run_bounds(ba, g, out, err);
        }
        if (*exact_cmd)
            return run_exact(qa, g, out);
        if (*extract_cmd)
            return run_extract(ea, g, out);
        if (*verify_cmd)
            return run_verify(va, g, out);
        if (*types_cmd)
            return run_types(tk, td, t_signed, t_count, g, out);
        return run_span(sa, g, out);
    } catch (const json::exception& e) {
        err << "error: malformed JSON: " << e.what() << "\n";
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
    } catch (const bounds::TooLarge& e) {
        err << "error: " << e.what() << "\n";
    }
    return kFailure;
}

}  // namespace gowers
