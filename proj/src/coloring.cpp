#include "gowers/coloring.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "gowers/types.hpp"

namespace gowers {

std::string to_string(DomainKind kind) {
    switch (kind) {
    case DomainKind::PosSphere: return "X_k";
    case DomainKind::SignedSphere: return "X_pm_k";
    case DomainKind::PosBlocks: return "Block_k";
    case DomainKind::SignedBlocks: return "Block_pm_k";
    case DomainKind::SetBlocks: return "Block_sets";
    }
    return "?";
}

DomainKind domain_kind_from_string(const std::string& name) {
    for (DomainKind k : {DomainKind::PosSphere, DomainKind::SignedSphere, DomainKind::PosBlocks,
                         DomainKind::SignedBlocks, DomainKind::SetBlocks})
        if (to_string(k) == name)
            return k;
    throw std::invalid_argument("unknown domain kind: " + name);
}

std::string describe(const Domain& d) {
    std::string out = to_string(d.kind) + "(n=" + std::to_string(d.n);
    if (d.kind != DomainKind::SetBlocks)
        out += ",k=" + std::to_string(d.k);
    if (d.kind == DomainKind::PosBlocks || d.kind == DomainKind::SignedBlocks || d.kind == DomainKind::SetBlocks)
        out += ",d=" + std::to_string(d.d);
    if (d.base)
        out += ",s=" + d.base->encode();
    return out + ")";
}

bool belongs(const Domain& d, const FiniteFunction& f) {
    if (d.kind != DomainKind::PosSphere && d.kind != DomainKind::SignedSphere)
        return false;
    return f.length() == d.n && f.k() == d.k && f.is_signed() == d.is_signed() && f.in_sphere();
}

bool belongs(const Domain& d, const FuncBlockSeq& F) {
    if (d.kind != DomainKind::PosBlocks && d.kind != DomainKind::SignedBlocks)
        return false;
    if (F.size() != d.d || F.ambient() != d.n || F.k() != d.k || F.is_signed() != d.is_signed())
        return false;
    for (const auto& f : F.funcs())
        if (!f.in_sphere())
            return false;
    return true;
}

bool belongs(const Domain& d, const SetBlockSeq& t) {
    if (d.kind != DomainKind::SetBlocks || !d.base || t.size() != d.d || t.ambient() != d.n)
        return false;
    const auto unions = nonempty_unions(*d.base);
    for (const auto& set : t.sets())
        if (std::find(unions.begin(), unions.end(), set) == unions.end())
            return false;
    return true;
}

std::vector<FiniteFunction> domain_functions(const Domain& d) {
    if (d.kind != DomainKind::PosSphere && d.kind != DomainKind::SignedSphere)
        throw std::invalid_argument("domain does not consist of functions");
    return enumerate_sphere(d.n, d.k, d.is_signed());
}

std::vector<FuncBlockSeq> domain_sequences(const Domain& d) {
    if (d.kind != DomainKind::PosBlocks && d.kind != DomainKind::SignedBlocks)
        throw std::invalid_argument("domain does not consist of block sequences");
    const auto elems = enumerate_sphere(d.n, d.k, d.is_signed());
    std::vector<int> lo, hi;
    for (const auto& e : elems) {
        lo.push_back(min_support(e));
        hi.push_back(max_support(e));
    }
    std::vector<FuncBlockSeq> out;
    std::vector<std::size_t> pick;
    auto rec = [&](auto&& self, int prev_max) -> void {
        if (pick.size() == d.d) {
            std::vector<FiniteFunction> fs;
            for (std::size_t p : pick)
                fs.push_back(elems[p]);
            out.emplace_back(std::move(fs));
            return;
        }
        for (std::size_t p = 0; p < elems.size(); ++p) {
            if (lo[p] <= prev_max)
                continue;
            pick.push_back(p);
            self(self, hi[p]);
            pick.pop_back();
        }
    };
    rec(rec, -1);
    return out;
}

std::vector<SetBlockSeq> domain_set_sequences(const Domain& d) {
    if (d.kind != DomainKind::SetBlocks || !d.base)
        throw std::invalid_argument("domain does not consist of set sequences");
    return enumerate_block_subseqs(*d.base, d.d);
}

std::map<std::string, int> tabulate(const FunctionColoring& c) {
    std::map<std::string, int> out;
    for (const auto& f : domain_functions(c.domain()))
        out.emplace(f.encode(), c(f));
    return out;
}

std::map<std::string, int> tabulate(const SequenceColoring& c) {
    std::map<std::string, int> out;
    for (const auto& F : domain_sequences(c.domain()))
        out.emplace(F.encode(), c(F));
    return out;
}

std::map<std::string, int> tabulate(const SetSeqColoring& c) {
    std::map<std::string, int> out;
    for (const auto& t : domain_set_sequences(c.domain()))
        out.emplace(t.encode(), c(t));
    return out;
}

std::uint64_t stable_hash(const std::string& text, std::uint64_t seed) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    // splitmix64 finalizer
    std::uint64_t z = h + seed * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {

int fold(long long c, int r) { return static_cast<int>(((c - 1) % r + r) % r) + 1; }

int hash_color(const std::string& text, std::uint64_t seed, int r) {
    return static_cast<int>(stable_hash(text, seed) % static_cast<std::uint64_t>(r)) + 1;
}

std::string type_word(const FiniteFunction& f) {
    const auto word = decompose(f).first;
    std::string out;
    for (int v : word)
        out += std::to_string(v) + ",";
    return out;
}

std::string type_words(const FuncBlockSeq& F) {
    std::string out;
    for (const auto& f : F.funcs())
        out += type_word(f) + "|";
    return out;
}

std::optional<std::uint64_t> parse_seed(const std::string& id, const std::string& prefix) {
    if (id.rfind(prefix, 0) != 0)
        return std::nullopt;
    const std::string rest = id.substr(prefix.size());
    std::size_t used = 0;
    const auto seed = std::stoull(rest, &used);
    if (used != rest.size())
        throw std::invalid_argument("malformed seed in oracle id " + id);
    return seed;
}

int sign_at_min(const FiniteFunction& f) { return f[static_cast<std::size_t>(min_support(f))] > 0 ? 1 : 2; }

long long value_sum(const FiniteFunction& f) {
    return std::accumulate(f.values().begin(), f.values().end(), 0LL);
}

}  // namespace

FunctionColoring builtin_function_coloring(const std::string& id, const Domain& domain, int r) {
    if (domain.kind != DomainKind::PosSphere && domain.kind != DomainKind::SignedSphere)
        throw DomainMismatch("function oracle on non-function domain " + describe(domain));
    if (id == "constant")
        return FunctionColoring(domain, r, [](const FiniteFunction&) { return 1; });
    if (id == "by-type")
        return FunctionColoring(domain, r, [r](const FiniteFunction& f) { return hash_color(type_word(f), 0, r); });
    if (id == "by-min-supp-sign")
        return FunctionColoring(domain, r, [r](const FiniteFunction& f) { return fold(sign_at_min(f), r); });
    if (id == "parity-of-sum")
        return FunctionColoring(domain, r, [r](const FiniteFunction& f) {
            return fold(((value_sum(f) % 2) + 2) % 2 + 1, r);
        });
    if (auto seed = parse_seed(id, "random-by-type:"))
        return FunctionColoring(domain, r, [r, s = *seed](const FiniteFunction& f) { return hash_color(type_word(f), s, r); });
    if (auto seed = parse_seed(id, "random:"))
        return FunctionColoring(domain, r, [r, s = *seed](const FiniteFunction& f) { return hash_color(f.encode(), s, r); });
    throw std::invalid_argument("unknown oracle id: " + id);
}

SequenceColoring builtin_sequence_coloring(const std::string& id, const Domain& domain, int r) {
    if (domain.kind != DomainKind::PosBlocks && domain.kind != DomainKind::SignedBlocks)
        throw DomainMismatch("sequence oracle on non-sequence domain " + describe(domain));
    if (id == "constant")
        return SequenceColoring(domain, r, [](const FuncBlockSeq&) { return 1; });
    if (id == "by-type")
        return SequenceColoring(domain, r, [r](const FuncBlockSeq& F) { return hash_color(type_words(F), 0, r); });
    if (id == "by-min-supp-sign")
        return SequenceColoring(domain, r, [r](const FuncBlockSeq& F) { return fold(sign_at_min(F[0]), r); });
    if (id == "parity-of-sum")
        return SequenceColoring(domain, r, [r](const FuncBlockSeq& F) {
            long long total = 0;
            for (const auto& f : F.funcs())
                total += value_sum(f);
            return fold(((total % 2) + 2) % 2 + 1, r);
        });
    if (auto seed = parse_seed(id, "random-by-type:"))
        return SequenceColoring(domain, r, [r, s = *seed](const FuncBlockSeq& F) { return hash_color(type_words(F), s, r); });
    if (auto seed = parse_seed(id, "random:"))
        return SequenceColoring(domain, r, [r, s = *seed](const FuncBlockSeq& F) { return hash_color(F.encode(), s, r); });
    throw std::invalid_argument("unknown oracle id: " + id);
}

SetSeqColoring builtin_set_coloring(const std::string& id, const Domain& domain, int r) {
    if (domain.kind != DomainKind::SetBlocks)
        throw DomainMismatch("set-sequence oracle on domain " + describe(domain));
    if (id == "constant")
        return SetSeqColoring(domain, r, [](const SetBlockSeq&) { return 1; });
    if (id == "parity-of-sum")
        return SetSeqColoring(domain, r, [r](const SetBlockSeq& t) {
            std::size_t total = 0;
            for (const auto& set : t.sets())
                total += set.size();
            return fold(static_cast<long long>(total % 2) + 1, r);
        });
    if (auto seed = parse_seed(id, "random:"))
        return SetSeqColoring(domain, r, [r, s = *seed](const SetBlockSeq& t) { return hash_color(t.encode(), s, r); });
    throw std::invalid_argument("oracle id " + id + " is not available on set sequences");
}

}  // namespace gowers
