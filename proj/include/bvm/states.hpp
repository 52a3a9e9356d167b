#pragma once

#include <unordered_map>
#include <vector>

#include "bvm/universe.hpp"

/** @file states.hpp
 *  Boolean-valued sets as arbitrary objects: restriction to a situation,
 *  the situation-indexed star profile, mixtures along partitions of unity,
 *  and two-valued quotients at an atom.
 *
 *  A situation is a nonzero element a of the algebra. In situation a the set
 *  u "is" the restricted set u_a over the restricted algebra B_a: entries with
 *  u(s) ∧ a = 0 vanish, the rest keep value u(s) ∧ a. Restriction here also
 *  recurses into the quasi-elements so that u_a is a bona fide set over B_a;
 *  the literal one-level clause is available separately as
 *  restrict_set_toplevel for comparison.
 */

namespace bvm {

namespace detail {

struct RestrictCtx {
    const AlgebraRestriction& r;
    std::unordered_map<const BVNode*, BVSet> memo;
};

inline BVSet restrict_rec(RestrictCtx& ctx, const BVSet& u) {
    auto it = ctx.memo.find(node_of(u));
    if (it != ctx.memo.end()) return it->second;

    // Distinct quasi-elements can collapse under restriction; their surviving
    // values are then joined.
    std::unordered_map<const BVNode*, std::uint64_t> merged;
    std::vector<const BVNode*> order;
    for (const auto& [key, value] : u.entries()) {
        const auto kept = value & ctx.r.window;
        if (kept.is_zero()) continue;
        BVSet sub_key = restrict_rec(ctx, key);
        auto [slot, inserted] = merged.emplace(node_of(sub_key), 0);
        if (inserted) order.push_back(node_of(sub_key));
        slot->second |= ctx.r.to_sub(kept).mask();
    }
    std::vector<std::pair<BVSet, BoolElement>> entries;
    entries.reserve(order.size());
    for (const auto* key : order)
        entries.emplace_back(wrap_node(ctx.r.sub, key), ctx.r.sub.element(merged.at(key)));
    BVSet out = BVSet::make(ctx.r.sub, std::move(entries));
    ctx.memo.emplace(node_of(u), out);
    return out;
}

} // namespace detail

/// u_a over the restricted algebra B_a (quasi-elements restricted recursively,
/// result normalized). restrict_set(u, 1) is normalize(u) over the same algebra.
inline BVSet restrict_set(const BVSet& u, const BoolElement& a) {
    detail::require_same_algebra(u.algebra(), a.algebra(), "restrict_set");
    detail::require(!a.is_zero(), "cannot restrict a set to the situation 0");
    if (a.is_one()) return normalize(u);
    AlgebraRestriction r = restrict_algebra(u.algebra(), a);
    detail::RestrictCtx ctx{r, {}};
    return detail::restrict_rec(ctx, u);
}

/// The literal one-level clause: keeps quasi-elements untouched and meets the
/// top-level values with a, dropping entries that vanish. Stays over the
/// parent algebra.
inline BVSet restrict_set_toplevel(const BVSet& u, const BoolElement& a) {
    detail::require_same_algebra(u.algebra(), a.algebra(), "restrict_set_toplevel");
    detail::require(!a.is_zero(), "cannot restrict a set to the situation 0");
    std::vector<std::pair<BVSet, BoolElement>> entries;
    for (const auto& [key, value] : u.entries()) {
        const auto kept = value & a;
        if (!kept.is_zero()) entries.emplace_back(key, kept);
    }
    return BVSet::make(u.algebra(), std::move(entries));
}

/** The situation-indexed profile a ↦ u_a: the representation of u as an
 *  arbitrary object (a function from the state space into sets). Entries are
 *  kept in increasing situation-mask order; the entry at 1 is always present
 *  and equals normalize(u).
 */
struct StarProfile {
    BVSet base;
    std::vector<std::pair<BoolElement, BVSet>> entries;

    const BVSet* at(const BoolElement& situation) const {
        for (const auto& [a, ua] : entries)
            if (a == situation) return &ua;
        return nullptr;
    }
};

/// Tabulates u_a for every nonzero situation a. The algebra must have at most
/// `max_situations` nonzero elements; for larger algebras use the span overload.
inline StarProfile star_profile(const BVSet& u, std::size_t max_situations = 4096) {
    const int n = u.algebra().atom_count();
    if (n >= 63 || ((std::uint64_t{1} << n) - 1) > max_situations)
        throw BudgetError("star profile tabulation too large",
                          n >= 63 ? "2^" + std::to_string(n) : std::to_string((std::uint64_t{1} << n) - 1),
                          max_situations);
    StarProfile p{u, {}};
    const std::uint64_t full = (std::uint64_t{1} << n) - 1;
    p.entries.reserve(full);
    for (std::uint64_t m = 1; m <= full; ++m) {
        BoolElement a = u.algebra().element(m);
        p.entries.emplace_back(a, restrict_set(u, a));
    }
    return p;
}

/// Profile over caller-chosen situations; the top situation is added if missing.
inline StarProfile star_profile(const BVSet& u, std::span<const BoolElement> situations) {
    StarProfile p{u, {}};
    bool has_top = false;
    for (const auto& a : situations) {
        detail::require(!a.is_zero(), "star profile situations must be nonzero");
        p.entries.emplace_back(a, restrict_set(u, a));
        has_top = has_top || a.is_one();
    }
    if (!has_top) p.entries.emplace_back(u.algebra().one(), restrict_set(u, u.algebra().one()));
    std::sort(p.entries.begin(), p.entries.end(),
              [](const auto& x, const auto& y) { return x.first.mask() < y.first.mask(); });
    return p;
}

/// Recovers the set from its profile: u = u_1. Structurally equal to
/// normalize(base).
inline BVSet reconstruct(const StarProfile& p) {
    const BVSet* top = p.at(p.base.algebra().one());
    detail::require(top != nullptr, "star profile has no entry at the top situation");
    return *top;
}

/** The mixture of `pieces` along a partition of unity: the set w with
 *  w(y) = ⋁_i (a_i ∧ u_i(y)) over the union of the piece domains. It agrees
 *  with piece i at least to degree a_i: bv_eq(w, u_i) ≥ a_i (tested, not
 *  assumed).
 */
inline BVSet mix(const Partition& partition, std::span<const BVSet> pieces) {
    detail::require(partition.size() == pieces.size(), "mix: need exactly one piece per partition part");
    std::unordered_map<const detail::BVNode*, std::uint64_t> merged;
    std::vector<const detail::BVNode*> order;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        detail::require_same_algebra(pieces[i].algebra(), partition.algebra(), "mix");
        const std::uint64_t part = partition.parts()[i].mask();
        for (const auto& [key, value] : pieces[i].entries()) {
            const std::uint64_t contrib = part & value.mask();
            if (!contrib) continue;
            auto [slot, inserted] = merged.emplace(detail::node_of(key), 0);
            if (inserted) order.push_back(detail::node_of(key));
            slot->second |= contrib;
        }
    }
    std::vector<std::pair<BVSet, BoolElement>> entries;
    entries.reserve(order.size());
    const auto& algebra = partition.algebra();
    for (const auto* key : order)
        entries.emplace_back(detail::wrap_node(algebra, key), algebra.element(merged.at(key)));
    return BVSet::make(algebra, std::move(entries));
}

/** A classical two-valued structure obtained by collapsing at an ultrafilter.
 *  Carrier elements are identified when the atom lies below their equality
 *  value; membership between classes holds when the atom lies below the
 *  membership value of representatives.
 */
struct ClassicalModel {
    std::vector<BVSet> reps;                     // one representative per class, in carrier order
    std::vector<std::size_t> class_of;           // carrier index -> class index
    std::vector<std::vector<bool>> membership;   // membership[i][j]: class i ∈ class j
    bool extensional;                            // distinct classes have distinct member sets

    std::size_t class_count() const { return reps.size(); }
};

/** Quotients a carrier of sets by the ultrafilter of `atom` (u ~ v iff
 *  atom ≤ [[u = v]]). Membership is induced from representatives and checked
 *  to be independent of the choice (guaranteed by the substitution law).
 *  Extensionality on the carrier is reported, not enforced: truncated
 *  carriers can identify member sets accidentally.
 */
inline ClassicalModel quotient_by_atom(const BoolElement& atom, std::span<const BVSet> carrier) {
    detail::require(atom.is_atom(), "quotient requires an atom (a principal ultrafilter generator)");
    ClassicalModel model;
    model.class_of.reserve(carrier.size());
    for (const auto& u : carrier) {
        detail::require_same_algebra(u.algebra(), atom.algebra(), "quotient_by_atom");
        std::size_t cls = model.reps.size();
        for (std::size_t c = 0; c < model.reps.size(); ++c)
            if (leq(atom, bv_eq(u, model.reps[c]))) { cls = c; break; }
        if (cls == model.reps.size()) model.reps.push_back(u);
        model.class_of.push_back(cls);
    }

    const std::size_t k = model.reps.size();
    model.membership.assign(k, std::vector<bool>(k, false));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            model.membership[i][j] = leq(atom, bv_mem(model.reps[i], model.reps[j]));

    // Membership must not depend on representatives.
    for (std::size_t x = 0; x < carrier.size(); ++x)
        for (std::size_t y = 0; y < carrier.size(); ++y) {
            const bool via_members = leq(atom, bv_mem(carrier[x], carrier[y]));
            if (via_members != model.membership[model.class_of[x]][model.class_of[y]])
                throw Error("quotient membership is not well-defined on classes");
        }

    model.extensional = true;
    for (std::size_t i = 0; i < k && model.extensional; ++i)
        for (std::size_t j = i + 1; j < k && model.extensional; ++j) {
            bool same_members = true;
            for (std::size_t m = 0; m < k; ++m)
                if (model.membership[m][i] != model.membership[m][j]) { same_members = false; break; }
            if (same_members) model.extensional = false;
        }
    return model;
}

} // namespace bvm
