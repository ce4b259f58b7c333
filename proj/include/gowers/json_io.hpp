#pragma once

#include <map>
#include <string>

#include "gowers/blocks.hpp"
#include "gowers/coloring.hpp"
#include "gowers/core.hpp"
#include "gowers/types.hpp"
#include "json.hpp"

namespace gowers {

using nlohmann::json;

/// {"n", "k", "signed", "values"}; a bare integer array is accepted on input
/// when k and signedness are supplied.
json to_json(const FiniteFunction& f);
FiniteFunction function_from_json(const json& j);

/// {"ambient", "sets"}
json to_json(const SetBlockSeq& s);
SetBlockSeq set_seq_from_json(const json& j);

/// {"n", "k", "signed", "funcs": [[...], ...]}
json to_json(const FuncBlockSeq& F);
FuncBlockSeq func_seq_from_json(const json& j);

/// {"word", "k", "signed"}
json to_json(const GType& t);

/// {"kind", "n", "k", "d"} plus "base" for set-sequence domains.
json to_json(const Domain& d);
Domain domain_from_json(const json& j);

constexpr std::size_t kMaxOracleEntries = 1'000'000;

struct OracleTable {
    Domain domain;
    int r = 1;
    std::map<std::string, int> table;
};

/// {"domain": ..., "r": ..., "table": {encoding: color}}
json to_json(const OracleTable& t);
OracleTable oracle_from_json(const json& j);
OracleTable load_oracle_file(const std::string& path);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace gowers
