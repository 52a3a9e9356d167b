#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "bvm/universe.hpp"

/** @file laws.hpp
 *  The congruence-law suite for = and ∈ over an enumerated universe:
 *  reflexivity, symmetry, the transitivity inequality
 *  [[u=v]] ∧ [[v=w]] ≤ [[u=w]], and the substitution inequality
 *  [[u=v]] ∧ [[u∈w]] ≤ [[v∈w]]. These are the desk-scale stand-ins for the
 *  axiom-level claims that cannot be checked by quantifying over a proper
 *  class. All checks are exact in the algebra order.
 */

namespace bvm {

struct LawOptions {
    std::size_t budget = 100000; // enumeration budget
    bool use_cache = true;       // evaluate =/∈ with the memo cache
};

struct LawCounts {
    std::size_t universe_size = 0;
    std::size_t reflexivity_pass = 0, reflexivity_total = 0;
    std::size_t symmetry_pass = 0, symmetry_total = 0;
    std::size_t transitivity_pass = 0, transitivity_total = 0;
    std::size_t substitution_pass = 0, substitution_total = 0;

    bool all_pass() const {
        return reflexivity_pass == reflexivity_total && symmetry_pass == symmetry_total &&
               transitivity_pass == transitivity_total && substitution_pass == substitution_total;
    }

    std::string summary() const {
        auto part = [](const char* name, std::size_t pass, std::size_t total) {
            return std::string(name) + " " + std::to_string(pass) + "/" + std::to_string(total);
        };
        return part("reflexivity", reflexivity_pass, reflexivity_total) + ", " +
               part("symmetry", symmetry_pass, symmetry_total) + ", " +
               part("transitivity", transitivity_pass, transitivity_total) + ", " +
               part("substitution", substitution_pass, substitution_total) + (all_pass() ? " pass" : " FAIL");
    }
};

namespace detail {
inline BoolElement law_eq(const BVSet& u, const BVSet& v, bool cache) {
    return cache ? bv_eq(u, v) : bv_eq_uncached(u, v);
}
inline BoolElement law_mem(const BVSet& u, const BVSet& v, bool cache) {
    return cache ? bv_mem(u, v) : bv_mem_uncached(u, v);
}
} // namespace detail

/// Runs the four laws over every element/pair/ordered-triple of the carrier.
inline LawCounts run_congruence_laws(std::span<const BVSet> carrier, const LawOptions& options = {}) {
    LawCounts counts;
    counts.universe_size = carrier.size();
    const bool cache = options.use_cache;

    for (const auto& u : carrier) {
        ++counts.reflexivity_total;
        if (detail::law_eq(u, u, cache).is_one()) ++counts.reflexivity_pass;
    }
    for (const auto& u : carrier)
        for (const auto& v : carrier) {
            ++counts.symmetry_total;
            if (detail::law_eq(u, v, cache) == detail::law_eq(v, u, cache)) ++counts.symmetry_pass;
        }
    for (const auto& u : carrier)
        for (const auto& v : carrier)
            for (const auto& w : carrier) {
                ++counts.transitivity_total;
                if (leq(meet(detail::law_eq(u, v, cache), detail::law_eq(v, w, cache)),
                        detail::law_eq(u, w, cache)))
                    ++counts.transitivity_pass;
                ++counts.substitution_total;
                if (leq(meet(detail::law_eq(u, v, cache), detail::law_mem(u, w, cache)),
                        detail::law_mem(v, w, cache)))
                    ++counts.substitution_pass;
            }
    return counts;
}

/// Laws over the enumerated universe of the algebra at the given rank bound.
inline LawCounts run_congruence_laws(const BoolAlgebra& algebra, int rank_bound, const LawOptions& options = {}) {
    const auto universe = enumerate_universe(algebra, rank_bound, options.budget);
    return run_congruence_laws(universe, options);
}

} // namespace bvm
