#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bvm/algebra.hpp"
#include "bvm/hf.hpp"

/** @file universe.hpp
 *  Boolean-valued sets and the recursive truth values of = and ∈.
 *
 *  A boolean-valued set u over an algebra B is a finite function from
 *  previously built boolean-valued sets (its quasi-elements) into B. The two
 *  defining clauses computed here are
 *
 *      [[u ∈ v]] = ⋁_{y ∈ dom(v)} ( v(y) ∧ [[y = u]] )
 *      [[u = v]] = ⋀_{y ∈ dom(v)} ( v(y) ⇒ [[y ∈ u]] )
 *                ∧ ⋀_{y ∈ dom(u)} ( u(y) ⇒ [[y ∈ v]] )
 *
 *  with empty meets 1 and empty joins 0. The mutual recursion is exponential
 *  when evaluated naively, so sets are hash-consed per algebra (structural
 *  equality coincides with node identity) and both clauses are memoized on
 *  node pairs. Uncached entry points exist so the memoization can itself be
 *  checked. Hash-consing is exact: interning compares full entry lists, never
 *  digests alone.
 */

namespace bvm {

class BVSet;

namespace detail {

struct BVNode {
    const AlgebraBody* algebra;
    std::vector<std::pair<const BVNode*, std::uint64_t>> entries; // key node, value mask; canonically sorted
    int rank;          // 0 for the empty function, else 1 + max key rank
    std::uint64_t digest;
};

inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t node_digest(const std::vector<std::pair<const BVNode*, std::uint64_t>>& entries) {
    std::uint64_t h = 0x42564d5345540551ull; // arbitrary fixed seed
    for (const auto& [key, mask] : entries) {
        h = mix64(h ^ key->digest);
        h = mix64(h ^ mask);
    }
    return mix64(h ^ entries.size());
}

/// Deterministic total order on interned nodes of one algebra: by rank, then
/// digest, with a structural tiebreak so digest collisions cannot perturb it.
inline bool node_less(const BVNode* x, const BVNode* y) {
    if (x == y) return false;
    if (x->rank != y->rank) return x->rank < y->rank;
    if (x->digest != y->digest) return x->digest < y->digest;
    if (x->entries.size() != y->entries.size()) return x->entries.size() < y->entries.size();
    for (std::size_t i = 0; i < x->entries.size(); ++i) {
        if (x->entries[i].first != y->entries[i].first)
            return node_less(x->entries[i].first, y->entries[i].first);
        if (x->entries[i].second != y->entries[i].second) return x->entries[i].second < y->entries[i].second;
    }
    return false; // structurally equal: interning makes this unreachable for x != y
}

struct NodePairHash {
    std::size_t operator()(const std::pair<const BVNode*, const BVNode*>& p) const {
        return static_cast<std::size_t>(
            mix64(reinterpret_cast<std::uintptr_t>(p.first) ^ mix64(reinterpret_cast<std::uintptr_t>(p.second))));
    }
};

/// Per-algebra intern table and memo caches. Nodes live exactly as long as
/// their algebra body; cached node pointers can therefore never dangle.
struct UniverseStore {
    std::mutex mu;
    std::unordered_map<std::uint64_t, std::vector<std::unique_ptr<const BVNode>>> interned;
    std::unordered_map<std::pair<const BVNode*, const BVNode*>, std::uint64_t, NodePairHash> eq_cache;
    std::unordered_map<std::pair<const BVNode*, const BVNode*>, std::uint64_t, NodePairHash> mem_cache;
};

inline UniverseStore& store_for(const AlgebraBody* body) {
    std::lock_guard<std::mutex> lock(body->mu);
    if (!body->universe_store) body->universe_store = std::make_shared<UniverseStore>();
    return *static_cast<UniverseStore*>(body->universe_store.get());
}

const BVNode* node_of(const BVSet& s);
BVSet wrap_node(const BoolAlgebra& algebra, const BVNode* node);

/// Interns a canonically sorted entry list, returning the unique node for it.
inline const BVNode* intern_node(const AlgebraBody* body,
                                 std::vector<std::pair<const BVNode*, std::uint64_t>> entries) {
    const std::uint64_t digest = node_digest(entries);
    int rank = 0;
    for (const auto& [key, mask] : entries) rank = std::max(rank, key->rank + 1);

    UniverseStore& store = store_for(body);
    std::lock_guard<std::mutex> lock(store.mu);
    auto& bucket = store.interned[digest];
    for (const auto& node : bucket)
        if (node->entries == entries) return node.get();
    auto fresh = std::make_unique<BVNode>(BVNode{body, std::move(entries), rank, digest});
    bucket.push_back(std::move(fresh));
    return bucket.back().get();
}

} // namespace detail

/** Handle to a boolean-valued set. Immutable and freely shareable; two handles
 *  over the same algebra are structurally equal iff they compare equal.
 */
class BVSet {
public:
    BVSet() = delete;

    /// The set with no quasi-elements (the canonical name of ∅).
    static BVSet empty(const BoolAlgebra& algebra) {
        return BVSet(algebra, detail::intern_node(detail::body_of(algebra), {}));
    }

    /** Builds a boolean-valued set from (quasi-element, value) entries.
     *  Zero-valued entries are kept as given; see normalize(). Duplicate
     *  quasi-elements and mixed-algebra entries are errors.
     */
    static BVSet make(const BoolAlgebra& algebra, std::vector<std::pair<BVSet, BoolElement>> entries) {
        std::vector<std::pair<const detail::BVNode*, std::uint64_t>> raw;
        raw.reserve(entries.size());
        for (const auto& [key, value] : entries) {
            detail::require_same_algebra(key.algebra(), algebra, "bvset entry key");
            detail::require_same_algebra(value.algebra(), algebra, "bvset entry value");
            raw.emplace_back(key.node_, value.mask());
        }
        std::sort(raw.begin(), raw.end(),
                  [](const auto& a, const auto& b) { return detail::node_less(a.first, b.first); });
        for (std::size_t i = 1; i < raw.size(); ++i)
            detail::require(raw[i].first != raw[i - 1].first, "duplicate quasi-element in boolean-valued set");
        return BVSet(algebra, detail::intern_node(detail::body_of(algebra), std::move(raw)));
    }

    const BoolAlgebra& algebra() const { return algebra_; }
    int rank() const { return node_->rank; }
    std::uint64_t digest() const { return node_->digest; }
    std::size_t size() const { return node_->entries.size(); }
    bool domain_empty() const { return node_->entries.empty(); }

    std::vector<std::pair<BVSet, BoolElement>> entries() const {
        std::vector<std::pair<BVSet, BoolElement>> out;
        out.reserve(node_->entries.size());
        for (const auto& [key, mask] : node_->entries)
            out.emplace_back(BVSet(algebra_, key), algebra_.element(mask));
        return out;
    }

    /// u(key), with 0 for sets outside the domain.
    BoolElement value_of(const BVSet& key) const {
        detail::require_same_algebra(key.algebra(), algebra_, "value_of");
        for (const auto& [k, mask] : node_->entries)
            if (k == key.node_) return algebra_.element(mask);
        return algebra_.zero();
    }

    bool operator==(const BVSet& other) const {
        return algebra_.same(other.algebra_) && node_ == other.node_;
    }
    bool operator!=(const BVSet& other) const { return !(*this == other); }

    /// Deterministic structural order (the enumeration and serialization order).
    bool before(const BVSet& other) const {
        detail::require_same_algebra(algebra_, other.algebra_, "before");
        return detail::node_less(node_, other.node_);
    }

private:
    BVSet(BoolAlgebra algebra, const detail::BVNode* node) : algebra_(std::move(algebra)), node_(node) {}

    BoolAlgebra algebra_;
    const detail::BVNode* node_;

    friend const detail::BVNode* detail::node_of(const BVSet&);
    friend BVSet detail::wrap_node(const BoolAlgebra&, const detail::BVNode*);
};

namespace detail {
inline const BVNode* node_of(const BVSet& s) { return s.node_; }
inline BVSet wrap_node(const BoolAlgebra& algebra, const BVNode* node) { return BVSet(algebra, node); }
} // namespace detail

/// Drops all zero-valued entries. Truth values of = and ∈ against any partner
/// are unchanged (a tested property, not an assumption).
inline BVSet normalize(const BVSet& u) {
    bool has_zero = false;
    for (const auto& [key, mask] : detail::node_of(u)->entries)
        if (mask == 0) { has_zero = true; break; }
    if (!has_zero) return u;
    std::vector<std::pair<const detail::BVNode*, std::uint64_t>> kept;
    for (const auto& [key, mask] : detail::node_of(u)->entries)
        if (mask != 0) kept.emplace_back(key, mask);
    return detail::wrap_node(u.algebra(), detail::intern_node(detail::body_of(u.algebra()), std::move(kept)));
}

/// The canonical name x̂ of a hereditarily finite set: x̂ maps ŷ ↦ 1 for each
/// y ∈ x. Embeds the classical sets into the boolean-valued universe.
inline BVSet canonical_name(const BoolAlgebra& algebra, const HFSet& x) {
    std::vector<std::pair<BVSet, BoolElement>> entries;
    entries.reserve(x.elements().size());
    for (const auto& y : x.elements()) entries.emplace_back(canonical_name(algebra, y), algebra.one());
    return BVSet::make(algebra, std::move(entries));
}

namespace detail {

inline std::uint64_t eval_eq(UniverseStore& store, const AlgebraBody* body, const BVNode* u, const BVNode* v,
                             bool use_cache);

inline std::uint64_t eval_mem(UniverseStore& store, const AlgebraBody* body, const BVNode* u, const BVNode* v,
                              bool use_cache) {
    if (use_cache) {
        std::lock_guard<std::mutex> lock(store.mu);
        auto it = store.mem_cache.find({u, v});
        if (it != store.mem_cache.end()) return it->second;
    }
    const std::uint64_t full = body->full_mask();
    std::uint64_t acc = 0;
    for (const auto& [y, vy] : v->entries) {
        acc |= vy & eval_eq(store, body, y, u, use_cache);
        if (acc == full) break;
    }
    if (use_cache) {
        std::lock_guard<std::mutex> lock(store.mu);
        store.mem_cache.emplace(std::make_pair(u, v), acc);
    }
    return acc;
}

inline std::uint64_t eval_eq(UniverseStore& store, const AlgebraBody* body, const BVNode* u, const BVNode* v,
                             bool use_cache) {
    if (use_cache) {
        std::lock_guard<std::mutex> lock(store.mu);
        auto it = store.eq_cache.find({u, v});
        if (it != store.eq_cache.end()) return it->second;
    }
    const std::uint64_t full = body->full_mask();
    std::uint64_t acc = full;
    for (const auto& [y, vy] : v->entries) {
        acc &= (~vy & full) | eval_mem(store, body, y, u, use_cache);
        if (acc == 0) break;
    }
    if (acc != 0)
        for (const auto& [y, uy] : u->entries) {
            acc &= (~uy & full) | eval_mem(store, body, y, v, use_cache);
            if (acc == 0) break;
        }
    if (use_cache) {
        std::lock_guard<std::mutex> lock(store.mu);
        store.eq_cache.emplace(std::make_pair(u, v), acc);
    }
    return acc;
}

inline std::uint64_t eval_pair(const BVSet& u, const BVSet& v, bool eq, bool use_cache, const char* op) {
    require_same_algebra(u.algebra(), v.algebra(), op);
    const AlgebraBody* body = body_of(u.algebra());
    UniverseStore& store = store_for(body);
    return eq ? eval_eq(store, body, node_of(u), node_of(v), use_cache)
              : eval_mem(store, body, node_of(u), node_of(v), use_cache);
}

} // namespace detail

/// [[u ∈ v]], memoized.
inline BoolElement bv_mem(const BVSet& u, const BVSet& v) {
    return u.algebra().element(detail::eval_pair(u, v, false, true, "bv_mem"));
}

/// [[u = v]], memoized.
inline BoolElement bv_eq(const BVSet& u, const BVSet& v) {
    return u.algebra().element(detail::eval_pair(u, v, true, true, "bv_eq"));
}

/// Same clauses evaluated without touching the memo cache (for soundness checks).
inline BoolElement bv_mem_uncached(const BVSet& u, const BVSet& v) {
    return u.algebra().element(detail::eval_pair(u, v, false, false, "bv_mem"));
}
inline BoolElement bv_eq_uncached(const BVSet& u, const BVSet& v) {
    return u.algebra().element(detail::eval_pair(u, v, true, false, "bv_eq"));
}

/** Enumerates the finite truncation of the boolean-valued universe.
 *
 *  Levels are indexed cumulatively: levels 0 and 1 hold only the empty set,
 *  and level k+1 holds every normalized set whose quasi-elements lie in level
 *  k. Equivalently, enumerate_universe(B, N) returns all normalized sets of
 *  rank ≤ max(0, N−1). With c(1) = 1 the level sizes obey c(k+1) = |B|^c(k),
 *  and the call fails fast with a BudgetError when the final level would
 *  exceed `budget`. Output is sorted by (rank, digest) and is deterministic.
 */
inline std::vector<BVSet> enumerate_universe(const BoolAlgebra& algebra, int rank_bound,
                                             std::size_t budget = 100000) {
    detail::require(rank_bound >= 0, "rank bound must be non-negative");
    const auto* body = detail::body_of(algebra);
    const int atom_bits = algebra.atom_count();
    const std::uint64_t full = body->full_mask();

    std::vector<const detail::BVNode*> level = {detail::node_of(BVSet::empty(algebra))};
    for (int k = 2; k <= rank_bound; ++k) {
        // next level size = |B| ^ |level|  =  2 ^ (atom_bits * |level|)
        const std::size_t exponent_bits = static_cast<std::size_t>(atom_bits) * level.size();
        if (exponent_bits >= 63)
            throw BudgetError("universe enumeration too large", "2^" + std::to_string(exponent_bits), budget);
        const std::uint64_t count = std::uint64_t{1} << exponent_bits;
        if (count > budget)
            throw BudgetError("universe enumeration exceeds budget", std::to_string(count), budget);

        std::vector<const detail::BVNode*> next;
        next.reserve(count);
        std::vector<std::uint64_t> values(level.size(), 0); // odometer; 0 = key absent
        while (true) {
            std::vector<std::pair<const detail::BVNode*, std::uint64_t>> entries;
            for (std::size_t i = 0; i < level.size(); ++i)
                if (values[i] != 0) entries.emplace_back(level[i], values[i]);
            std::sort(entries.begin(), entries.end(),
                      [](const auto& a, const auto& b) { return detail::node_less(a.first, b.first); });
            next.push_back(detail::intern_node(body, std::move(entries)));
            std::size_t i = 0;
            for (; i < values.size(); ++i) {
                if (values[i] == full) {
                    values[i] = 0;
                } else {
                    ++values[i];
                    break;
                }
            }
            if (i == values.size()) break;
        }
        level = std::move(next);
    }

    std::sort(level.begin(), level.end(), detail::node_less);
    std::vector<BVSet> out;
    out.reserve(level.size());
    for (const auto* node : level) out.push_back(detail::wrap_node(algebra, node));
    return out;
}

} // namespace bvm
