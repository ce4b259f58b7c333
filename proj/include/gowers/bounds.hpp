#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"

namespace gowers::bounds {

using BigNat = mpz_class;

/// Raised when a value would exceed the digit guard.
class TooLarge : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

constexpr std::size_t kDefaultDigitGuard = 1'000'000;

// ---------------------------------------------------------------------------
// Expression trees.

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// op is one of lit, add, sub, mul, pow, MT, alpha, beta, gamma, h.
struct Expr {
    std::string op;
    BigNat value;  // lit only
    std::vector<ExprPtr> args;
};

ExprPtr lit(const BigNat& v);
ExprPtr node(std::string op, std::vector<ExprPtr> args);

/// Folds arithmetic on literals; leaves MT and anything above it symbolic.
ExprPtr simplify(const ExprPtr& e, std::size_t digit_guard = kDefaultDigitGuard);

bool is_ground(const ExprPtr& e);  // contains no MT leaf
std::optional<BigNat> literal_value(const ExprPtr& e);
std::string render(const ExprPtr& e);

nlohmann::json to_json(const ExprPtr& e);
ExprPtr expr_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// MT strategies.

enum class StrategyKind { ExactTiny, Table, Symbolic };

std::string to_string(StrategyKind k);

using MtTable = std::function<std::optional<BigNat>(const BigNat& d, const BigNat& m, const BigNat& r)>;

struct MTStrategy {
    StrategyKind kind = StrategyKind::Symbolic;
    MtTable table;                         // Table only
    std::uint64_t exact_node_budget = 2'000'000;  // ExactTiny only
    std::size_t exact_n_max = 8;           // ExactTiny only
    std::size_t digit_guard = kDefaultDigitGuard;

    static MTStrategy exact_tiny();
    static MTStrategy symbolic();
    /// Explicit entries; entries must be >= 1 and monotone on the given keys.
    static MTStrategy from_entries(const std::map<std::tuple<long, long, long>, BigNat>& entries);
    static MTStrategy from_function(MtTable fn);
};

struct BoundResult {
    ExprPtr expr;                 // the bound with MT uninterpreted
    std::optional<BigNat> value;  // absent under Symbolic or when too large
    /// False when some MT leaf could only be replaced by the floor
    /// MT(d,m,r) >= m; `value` is then a lower bound for the true bound.
    bool exact = true;
    bool too_large = false;
};

/// Evaluates a tree under a strategy.
BoundResult evaluate(const ExprPtr& e, const MTStrategy& strategy);

/// MT(d,m,r) as the strategy resolves it: exact value, or floor when exact=false.
std::pair<BigNat, bool> resolve_mt(const BigNat& d, const BigNat& m, const BigNat& r, const MTStrategy& strategy);

// ---------------------------------------------------------------------------
// Closed-form helpers.

BigNat grzegorczyk_E(unsigned q, const std::vector<BigNat>& args, std::size_t digit_guard = kDefaultDigitGuard);
BigNat alpha(const BigNat& k, const BigNat& m, std::size_t digit_guard = kDefaultDigitGuard);
BigNat beta(const BigNat& k, const BigNat& m, std::size_t digit_guard = kDefaultDigitGuard);
BigNat gamma(const BigNat& k, const BigNat& d, const BigNat& m, std::size_t digit_guard = kDefaultDigitGuard);
BigNat checked_pow(const BigNat& base, const BigNat& exponent, std::size_t digit_guard = kDefaultDigitGuard);

// ---------------------------------------------------------------------------
// The bounds as expression trees.

ExprPtr G_expr(long k, long m, long r);
ExprPtr G_pm_expr(long k, long m, long r);
ExprPtr MG_expr(long k, long d, long m, long r);
ExprPtr MG_pm_expr(long k, long d, long m, long r);

BoundResult bound_MT(long d, long m, long r, const MTStrategy& mt);
BoundResult bound_G(long k, long m, long r, const MTStrategy& mt);
BoundResult bound_G_pm(long k, long m, long r, const MTStrategy& mt);
BoundResult bound_MG(long k, long d, long m, long r, const MTStrategy& mt);
BoundResult bound_MG_pm(long k, long d, long m, long r, const MTStrategy& mt);

/// Where h takes its G values from.
enum class GProvider {
    Bound,       // bound_G under the strategy
    ExactKnown,  // closed forms G(k,1,r)=1 and G(k,m,1)=m, otherwise bound_G
};

BoundResult h_fn(const BigNat& d, const BigNat& ell, const BigNat& r, const BigNat& k, const BigNat& x,
                 const MTStrategy& mt, GProvider provider = GProvider::Bound);

}  // namespace gowers::bounds
