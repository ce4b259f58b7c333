#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "gowers/blocks.hpp"
#include "gowers/core.hpp"

namespace gowers {

enum class DomainKind {
    PosSphere,     // X_k(n)
    SignedSphere,  // X_{+-k}(n)
    PosBlocks,     // Block^d_k(n)
    SignedBlocks,  // Block^d_{+-k}(n)
    SetBlocks,     // Block^d(s)
};

struct Domain {
    DomainKind kind = DomainKind::PosSphere;
    std::size_t n = 1;
    int k = 1;
    std::size_t d = 1;
    std::optional<SetBlockSeq> base;  // only for SetBlocks

    static Domain pos_sphere(std::size_t n, int k) { return {DomainKind::PosSphere, n, k, 1, std::nullopt}; }
    static Domain signed_sphere(std::size_t n, int k) { return {DomainKind::SignedSphere, n, k, 1, std::nullopt}; }
    static Domain pos_blocks(std::size_t n, int k, std::size_t d) { return {DomainKind::PosBlocks, n, k, d, std::nullopt}; }
    static Domain signed_blocks(std::size_t n, int k, std::size_t d) {
        return {DomainKind::SignedBlocks, n, k, d, std::nullopt};
    }
    static Domain set_blocks(const SetBlockSeq& s, std::size_t d) { return {DomainKind::SetBlocks, s.ambient(), 1, d, s}; }

    bool is_signed() const { return kind == DomainKind::SignedSphere || kind == DomainKind::SignedBlocks; }

    friend bool operator==(const Domain&, const Domain&) = default;
};

std::string to_string(DomainKind kind);
DomainKind domain_kind_from_string(const std::string& name);
std::string describe(const Domain& d);

bool belongs(const Domain& d, const FiniteFunction& f);
bool belongs(const Domain& d, const FuncBlockSeq& F);
bool belongs(const Domain& d, const SetBlockSeq& t);

/// Thrown when an oracle is applied to a domain it was not declared on.
class DomainMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A total, pure map from a finite domain to colors {1..r}.
template <class Element>
class Coloring {
public:
    using Fn = std::function<int(const Element&)>;

    Coloring(Domain domain, int r, Fn fn) : domain_(std::move(domain)), r_(r), fn_(std::move(fn)) {
        if (r_ < 1)
            throw std::invalid_argument("a coloring needs at least one color");
    }

    int operator()(const Element& e) const {
        const int c = fn_(e);
        if (c < 1 || c > r_)
            throw std::logic_error("oracle returned color " + std::to_string(c) + " outside 1.." + std::to_string(r_));
        return c;
    }

    const Domain& domain() const { return domain_; }
    int colors() const { return r_; }

private:
    Domain domain_;
    int r_;
    Fn fn_;
};

using FunctionColoring = Coloring<FiniteFunction>;
using SequenceColoring = Coloring<FuncBlockSeq>;
using SetSeqColoring = Coloring<SetBlockSeq>;

template <class Element>
void require_domain(const Coloring<Element>& c, const Domain& expected) {
    if (!(c.domain() == expected))
        throw DomainMismatch("oracle declared on " + describe(c.domain()) + " but used on " + describe(expected));
}

/// Caches an oracle's answers by canonical encoding. The cache is not
/// synchronized; use one memoized copy per worker.
template <class Element>
Coloring<Element> memoized(const Coloring<Element>& c) {
    auto cache = std::make_shared<std::unordered_map<std::string, int>>();
    return Coloring<Element>(c.domain(), c.colors(), [c, cache](const Element& e) {
        const std::string key = e.encode();
        if (auto it = cache->find(key); it != cache->end())
            return it->second;
        const int v = c(e);
        cache->emplace(key, v);
        return v;
    });
}

/// Table-backed oracle: encoding -> color. Lookups outside the table throw.
template <class Element>
Coloring<Element> table_coloring(Domain domain, int r, std::map<std::string, int> table) {
    auto shared = std::make_shared<const std::map<std::string, int>>(std::move(table));
    for (const auto& [key, color] : *shared)
        if (color < 1 || color > r)
            throw std::invalid_argument("table color out of range for " + key);
    return Coloring<Element>(std::move(domain), r, [shared](const Element& e) {
        auto it = shared->find(e.encode());
        if (it == shared->end())
            throw std::out_of_range("element " + e.encode() + " missing from oracle table");
        return it->second;
    });
}

/// Every element of a (small) domain, in canonical order.
std::vector<FiniteFunction> domain_functions(const Domain& d);
std::vector<FuncBlockSeq> domain_sequences(const Domain& d);
std::vector<SetBlockSeq> domain_set_sequences(const Domain& d);

/// Materializes a coloring over its whole domain.
std::map<std::string, int> tabulate(const FunctionColoring& c);
std::map<std::string, int> tabulate(const SequenceColoring& c);
std::map<std::string, int> tabulate(const SetSeqColoring& c);

/// Stable 64-bit hashing used by the seeded oracle families.
std::uint64_t stable_hash(const std::string& text, std::uint64_t seed);

// Built-in families, addressable by id:
//   "constant", "by-type", "by-min-supp-sign", "parity-of-sum",
//   "random:<seed>", "random-by-type:<seed>".
FunctionColoring builtin_function_coloring(const std::string& id, const Domain& domain, int r);
SequenceColoring builtin_sequence_coloring(const std::string& id, const Domain& domain, int r);
SetSeqColoring builtin_set_coloring(const std::string& id, const Domain& domain, int r);

}  // namespace gowers
