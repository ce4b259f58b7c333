#include "gowers/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace gowers {

namespace {

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        throw std::invalid_argument(std::string("missing field '") + name + "'");
    return j.at(name);
}

}  // namespace

json to_json(const FiniteFunction& f) {
    return {{"n", f.length()},
            {"k", f.k()},
            {"signed", f.is_signed()},
            {"values", std::vector<int>(f.values().begin(), f.values().end())}};
}

FiniteFunction function_from_json(const json& j) {
    const int k = field(j, "k").get<int>();
    const bool is_signed = field(j, "signed").get<bool>();
    std::vector<int> values = field(j, "values").get<std::vector<int>>();
    if (j.contains("n") && j.at("n").get<std::size_t>() != values.size())
        throw std::invalid_argument("function length does not match 'n'");
    return FiniteFunction(k, is_signed, std::move(values));
}

json to_json(const SetBlockSeq& s) {
    return {{"ambient", s.ambient()}, {"sets", s.sets()}};
}

SetBlockSeq set_seq_from_json(const json& j) {
    return SetBlockSeq(field(j, "sets").get<std::vector<IndexSet>>(), field(j, "ambient").get<std::size_t>());
}

json to_json(const FuncBlockSeq& F) {
    json funcs = json::array();
    for (const FiniteFunction& f : F.funcs())
        funcs.push_back(std::vector<int>(f.values().begin(), f.values().end()));
    return {{"n", F.ambient()}, {"k", F.k()}, {"signed", F.is_signed()}, {"funcs", funcs}};
}

FuncBlockSeq func_seq_from_json(const json& j) {
    const int k = field(j, "k").get<int>();
    const bool is_signed = field(j, "signed").get<bool>();
    std::vector<FiniteFunction> fs;
    for (const auto& v : field(j, "funcs"))
        fs.emplace_back(k, is_signed, v.get<std::vector<int>>());
    if (fs.empty())
        throw std::invalid_argument("a block sequence needs at least one function");
    return FuncBlockSeq(std::move(fs));
}

json to_json(const GType& t) {
    return {{"word", t.word()}, {"k", t.k()}, {"signed", t.is_signed()}};
}

json to_json(const Domain& d) {
    json j = {{"kind", to_string(d.kind)}, {"n", d.n}, {"k", d.k}, {"d", d.d}};
    if (d.base)
        j["base"] = to_json(*d.base);
    return j;
}

Domain domain_from_json(const json& j) {
    Domain d;
    d.kind = domain_kind_from_string(field(j, "kind").get<std::string>());
    d.n = field(j, "n").get<std::size_t>();
    d.k = j.value("k", 1);
    d.d = j.value("d", std::size_t{1});
    if (d.kind == DomainKind::SetBlocks) {
        d.base = set_seq_from_json(field(j, "base"));
        if (d.base->ambient() != d.n)
            throw std::invalid_argument("base sequence ambient does not match n");
    }
    if (d.n < 1 || d.k < 1 || d.d < 1)
        throw std::invalid_argument("domain parameters must be positive");
    return d;
}

json to_json(const OracleTable& t) {
    json table = json::object();
    for (const auto& [key, colour] : t.table)
        table[key] = colour;
    return {{"domain", to_json(t.domain)}, {"r", t.r}, {"table", table}};
}

OracleTable oracle_from_json(const json& j) {
    OracleTable t;
    t.domain = domain_from_json(field(j, "domain"));
    t.r = field(j, "r").get<int>();
    if (t.r < 1)
        throw std::invalid_argument("oracle needs r >= 1");
    const json& table = field(j, "table");
    if (!table.is_object())
        throw std::invalid_argument("oracle table must be an object");
    if (table.size() > kMaxOracleEntries)
        throw std::invalid_argument("oracle table exceeds " + std::to_string(kMaxOracleEntries) + " entries");
    for (const auto& [key, v] : table.items()) {
        const int colour = v.get<int>();
        if (colour < 1 || colour > t.r)
            throw std::invalid_argument("oracle color out of range for " + key);
        t.table.emplace(key, colour);
    }
    return t;
}

OracleTable load_oracle_file(const std::string& path) {
    return oracle_from_json(read_json_file(path));
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out)
        throw std::invalid_argument("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace gowers
