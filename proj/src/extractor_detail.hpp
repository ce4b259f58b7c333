#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "gowers/blocks.hpp"
#include "gowers/coloring.hpp"
#include "gowers/core.hpp"
#include "gowers/extractor.hpp"

namespace gowers::detail {

struct BudgetExceeded {};

class Budget {
public:
    explicit Budget(std::optional<std::uint64_t> limit) : limit_(limit) {}

    void spend(std::uint64_t n = 1) {
        used_ += n;
        if (limit_ && used_ > *limit_)
            throw BudgetExceeded{};
    }
    std::uint64_t used() const { return used_; }

private:
    std::optional<std::uint64_t> limit_;
    std::uint64_t used_ = 0;
};

using FnColor = std::function<int(const FiniteFunction&)>;
using SeqColor = std::function<int(const FuncBlockSeq&)>;
using MaskColor = std::function<int(const std::vector<PositionMask>&)>;

/// Views an internal color function as an oracle for the checking routines.
inline FunctionColoring wrap(const FnColor& c, const Domain& dom) {
    return FunctionColoring(dom, std::numeric_limits<int>::max(), c);
}
inline SequenceColoring wrap(const SeqColor& c, const Domain& dom) {
    return SequenceColoring(dom, std::numeric_limits<int>::max(), c);
}

/// Assigns small ids to color vectors of derived colorings.
class Interner {
public:
    int operator()(const std::vector<int>& v) {
        auto [it, inserted] = ids_->try_emplace(v, static_cast<int>(ids_->size()) + 1);
        return it->second;
    }

private:
    std::shared_ptr<std::map<std::vector<int>, int>> ids_ = std::make_shared<std::map<std::vector<int>, int>>();
};

template <class Element>
std::function<int(const Element&)> cached(std::function<int(const Element&)> fn) {
    auto memo = std::make_shared<std::unordered_map<std::string, int>>();
    return [fn = std::move(fn), memo](const Element& e) {
        std::string key = e.encode();
        if (auto it = memo->find(key); it != memo->end())
            return it->second;
        const int v = fn(e);
        memo->emplace(std::move(key), v);
        return v;
    };
}

struct MtHit {
    std::vector<PositionMask> masks;  // target-many masks over {0..len-1}
    int color = 0;
};

/// Lexicographically first `target`-tuple of block masks over `len`
/// positions all of whose d-subsequences (in the NU sense) get one color.
std::optional<MtHit> mt_engine(std::size_t len, std::size_t d, std::size_t target, const MaskColor& color,
                               Budget& budget);

/// Exhaustive fallback: the first s in Block^m(n), in mask order, that `accept` takes.
std::optional<SetBlockSeq> first_block_seq(std::size_t n, std::size_t m,
                                           const std::function<bool(const SetBlockSeq&)>& accept, Budget& budget);
std::optional<SetBlockSeq> canonize_impl(std::size_t n, int k, std::size_t m, bool is_signed, const FnColor& c,
                                         Budget& budget);
std::optional<SetBlockSeq> canonize_block_impl(std::size_t n, int k, std::size_t d, std::size_t m,
                                               const SeqColor& c, Budget& budget);

std::optional<FuncBlockSeq> make_insensitive_impl(std::size_t n, int k, std::size_t m, const FnColor& c,
                                                  Budget& budget);

struct SeqHit {
    FuncBlockSeq F;
    int color;
};
struct SignedHit {
    SetBlockSeq s;
    FuncBlockSeq F;
    int color;
};

std::optional<SeqHit> extract_positive_impl(std::size_t n, int k, std::size_t m, const FnColor& c, Budget& budget);
std::optional<SignedHit> extract_signed_impl(std::size_t n, int k, std::size_t m, const FnColor& c, Budget& budget);
std::optional<FuncBlockSeq> canon_last_impl(std::size_t n, int k, std::size_t d, std::size_t ell, const SeqColor& c,
                                            Budget& budget);
std::optional<SeqHit> multidim_positive_impl(std::size_t n, int k, std::size_t d, std::size_t m, const SeqColor& c,
                                             Budget& budget);
std::optional<SignedHit> multidim_signed_impl(std::size_t n, int k, std::size_t d, std::size_t m,
                                              const SeqColor& c, Budget& budget);

/// Componentwise basis_embed.
FuncBlockSeq embed_seq(const FuncBlockSeq& basis, const FuncBlockSeq& H);

/// Runs `body` with a fresh budget and packages the outcome.
template <class Payload, class Hit, class Body, class Convert>
ExtractionReport<Payload> run_stage(const SearchOptions& opts, Body&& body, Convert&& convert) {
    Budget budget(opts.node_budget);
    ExtractionReport<Payload> report;
    try {
        std::optional<Hit> hit = body(budget);
        if (hit) {
            report.outcome = Outcome::Found;
            convert(*hit, report);
        } else {
            report.outcome = Outcome::Absent;
        }
    } catch (const BudgetExceeded&) {
        report.outcome = Outcome::BudgetExhausted;
    }
    report.candidates = budget.used();
    return report;
}

}  // namespace gowers::detail
