#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bvm/algebra.hpp"
#include "bvm/rational.hpp"

/** @file scott.hpp
 *  A finite analogue of the random-real model: probability spaces with exact
 *  rational weights, the measure algebra obtained by killing the null worlds,
 *  and random reals as rational-valued functions on the space. The boolean
 *  value of an atomic comparison between random reals is the quotient image of
 *  the set of worlds where it holds pointwise.
 */

namespace bvm {

class ProbSpace;
struct MeasureAlgebra;
MeasureAlgebra measure_algebra(const ProbSpace&);

namespace detail {
struct ProbSpaceBody {
    std::vector<std::string> worlds;
    std::vector<Rational> weights;
    std::uint64_t positive_mask = 0; // worlds of nonzero weight

    mutable std::mutex mu;
    mutable std::shared_ptr<const AlgebraBody> measure_algebra; // lazily built

    std::size_t world_count() const { return worlds.size(); }
};
} // namespace detail

/// Finite probability space with exact rational weights summing to 1.
/// Handle semantics match BoolAlgebra: copies share one immutable body, and
/// random reals are compatible only within one space object.
class ProbSpace {
public:
    ProbSpace() = delete;

    static ProbSpace make(std::vector<std::pair<std::string, Rational>> worlds) {
        detail::require(!worlds.empty(), "a probability space needs at least one world");
        detail::require(worlds.size() <= 64, "at most 64 worlds are supported");
        auto body = std::make_shared<detail::ProbSpaceBody>();
        Rational total(0);
        for (std::size_t i = 0; i < worlds.size(); ++i) {
            auto& [name, weight] = worlds[i];
            detail::require(detail::is_identifier(name), "world name '" + name + "' is not a valid identifier");
            for (const auto& seen : body->worlds)
                detail::require(seen != name, "duplicate world name '" + name + "'");
            detail::require(!weight.is_negative(), "world '" + name + "' has negative weight");
            if (!weight.is_zero()) body->positive_mask |= std::uint64_t{1} << i;
            total = total + weight;
            body->worlds.push_back(name);
            body->weights.push_back(weight);
        }
        detail::require(total == Rational(1), "world weights must sum to exactly 1 (got " + total.to_string() + ")");
        return ProbSpace(std::move(body));
    }

    const std::vector<std::string>& worlds() const { return body_->worlds; }
    const std::vector<Rational>& weights() const { return body_->weights; }
    std::size_t world_count() const { return body_->world_count(); }
    bool same(const ProbSpace& other) const { return body_ == other.body_; }

    std::size_t world_index(std::string_view name) const {
        for (std::size_t i = 0; i < body_->worlds.size(); ++i)
            if (body_->worlds[i] == name) return i;
        throw Error("unknown world '" + std::string(name) + "'");
    }

private:
    explicit ProbSpace(std::shared_ptr<const detail::ProbSpaceBody> body) : body_(std::move(body)) {}
    std::shared_ptr<const detail::ProbSpaceBody> body_;

    friend struct MeasureAlgebra;
    friend MeasureAlgebra measure_algebra(const ProbSpace&);
};

/** The measure algebra B = events / (probability = 0): a Boolean algebra whose
 *  atoms are exactly the positive-weight worlds. `quotient` maps an event
 *  (set of worlds) to its class by dropping the null worlds. The finite case
 *  is trivially complete and every antichain has at most atom_count elements.
 */
struct MeasureAlgebra {
    ProbSpace space;
    BoolAlgebra algebra;

    /// Event given by world names.
    BoolElement quotient(std::span<const std::string> event_worlds) const {
        std::uint64_t event = 0;
        for (const auto& w : event_worlds) event |= std::uint64_t{1} << space.world_index(w);
        return quotient_mask(event);
    }

    /// Event given as a bitmask over all worlds (including null ones).
    BoolElement quotient_mask(std::uint64_t event) const {
        const auto* body = space.body_.get();
        detail::require((event >> body->world_count()) == 0, "event mentions worlds outside the space");
        std::uint64_t out = 0, pos = 0;
        for (std::size_t i = 0; i < body->world_count(); ++i) {
            if (!(body->positive_mask & (std::uint64_t{1} << i))) continue;
            if (event & (std::uint64_t{1} << i)) out |= std::uint64_t{1} << pos;
            ++pos;
        }
        return algebra.element(out);
    }
};

/// Builds (once per space) the measure algebra of a probability space.
/// Repeated calls return the same algebra object, so elements interoperate.
inline MeasureAlgebra measure_algebra(const ProbSpace& space) {
    const auto* body = space.body_.get();
    std::shared_ptr<const detail::AlgebraBody> algebra_body;
    {
        std::lock_guard<std::mutex> lock(body->mu);
        if (!body->measure_algebra) {
            std::vector<std::string> names;
            for (std::size_t i = 0; i < body->world_count(); ++i)
                if (body->positive_mask & (std::uint64_t{1} << i)) names.push_back(body->worlds[i]);
            // sum = 1 guarantees a positive world, so `names` is nonempty
            body->measure_algebra = detail::share_body(make_algebra(std::move(names)));
        }
        algebra_body = body->measure_algebra;
    }
    return MeasureAlgebra{space, detail::wrap_body(std::move(algebra_body))};
}

/// A random real at desk scale: a total rational-valued function on the worlds
/// of a finite space. Every such function is trivially measurable.
class RandomReal {
public:
    RandomReal() = delete;

    static RandomReal make(const ProbSpace& space, std::vector<Rational> values) {
        detail::require(values.size() == space.world_count(),
                        "random real needs exactly one value per world");
        return RandomReal(space, std::move(values));
    }

    const ProbSpace& space() const { return space_; }
    const std::vector<Rational>& values() const { return values_; }
    const Rational& at(std::size_t world) const { return values_.at(world); }

private:
    RandomReal(ProbSpace space, std::vector<Rational> values)
        : space_(std::move(space)), values_(std::move(values)) {}

    ProbSpace space_;
    std::vector<Rational> values_;
};

/// The constant function r̂ — the canonical embedding of the rationals.
inline RandomReal embed_const(const ProbSpace& space, const Rational& r) {
    return RandomReal::make(space, std::vector<Rational>(space.world_count(), r));
}

namespace detail {
template <typename Pred>
inline BoolElement rr_event(const RandomReal& xi, const RandomReal& eta, const char* op, Pred holds) {
    require(xi.space().same(eta.space()), std::string(op) + ": operands belong to different spaces");
    MeasureAlgebra m = measure_algebra(xi.space());
    std::uint64_t event = 0;
    for (std::size_t w = 0; w < xi.space().world_count(); ++w)
        if (holds(xi.at(w), eta.at(w))) event |= std::uint64_t{1} << w;
    return m.quotient_mask(event);
}
} // namespace detail

/// Boolean value of ξ = η: the class of the coincidence set {ω : ξ(ω) = η(ω)}.
inline BoolElement rr_eq(const RandomReal& xi, const RandomReal& eta) {
    return detail::rr_event(xi, eta, "rr_eq", [](const Rational& a, const Rational& b) { return a == b; });
}

/// Boolean value of ξ ≤ η, pointwise.
inline BoolElement rr_leq(const RandomReal& xi, const RandomReal& eta) {
    return detail::rr_event(xi, eta, "rr_leq", [](const Rational& a, const Rational& b) { return a <= b; });
}

/// Boolean value of ξ ≤ r for a rational constant r.
inline BoolElement rr_leq_const(const RandomReal& xi, const Rational& r) {
    return rr_leq(xi, embed_const(xi.space(), r));
}

} // namespace bvm
