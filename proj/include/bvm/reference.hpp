#pragma once

#include <functional>

#include "bvm/universe.hpp"

/** @file reference.hpp
 *  Straight-line expansion of the = and ∈ clauses, used to cross-check the
 *  memoized evaluator. This deliberately shares nothing with the production
 *  path beyond the algebra operations themselves: no interning shortcuts, no
 *  memo cache, no normalization, no early exit — every subterm of the two
 *  defining clauses is expanded and combined exactly as written.
 */

namespace bvm {

/// Called on entry (value == nullptr) and exit (value set) of each expansion
/// step; `op` is "eq" or "mem". Lets callers print a full expansion trace.
using ExpansionObserver =
    std::function<void(const char* op, const BVSet& lhs, const BVSet& rhs, const BoolElement* value, int depth)>;

namespace detail {

inline BoolElement ref_eq_impl(const BVSet& u, const BVSet& v, const ExpansionObserver& observe, int depth);

inline BoolElement ref_mem_impl(const BVSet& u, const BVSet& v, const ExpansionObserver& observe, int depth) {
    if (observe) observe("mem", u, v, nullptr, depth);
    BoolElement acc = u.algebra().zero();
    for (const auto& [y, vy] : v.entries())
        acc = join(acc, meet(vy, ref_eq_impl(y, u, observe, depth + 1)));
    if (observe) observe("mem", u, v, &acc, depth);
    return acc;
}

inline BoolElement ref_eq_impl(const BVSet& u, const BVSet& v, const ExpansionObserver& observe, int depth) {
    if (observe) observe("eq", u, v, nullptr, depth);
    BoolElement acc = u.algebra().one();
    for (const auto& [y, vy] : v.entries())
        acc = meet(acc, implies(vy, ref_mem_impl(y, u, observe, depth + 1)));
    for (const auto& [y, uy] : u.entries())
        acc = meet(acc, implies(uy, ref_mem_impl(y, v, observe, depth + 1)));
    if (observe) observe("eq", u, v, &acc, depth);
    return acc;
}

} // namespace detail

inline BoolElement ref_eq(const BVSet& u, const BVSet& v, const ExpansionObserver& observe = {}) {
    detail::require_same_algebra(u.algebra(), v.algebra(), "ref_eq");
    return detail::ref_eq_impl(u, v, observe, 0);
}

inline BoolElement ref_mem(const BVSet& u, const BVSet& v, const ExpansionObserver& observe = {}) {
    detail::require_same_algebra(u.algebra(), v.algebra(), "ref_mem");
    return detail::ref_mem_impl(u, v, observe, 0);
}

} // namespace bvm
