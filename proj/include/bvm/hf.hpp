#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <vector>

#include "bvm/error.hpp"

namespace bvm {

/** A pure hereditarily finite set, kept in canonical form: elements are
 *  duplicate-free and sorted by the structural order below. Well-foundedness
 *  is automatic since values are built bottom-up.
 */
class HFSet {
public:
    /// The empty set.
    HFSet() = default;

    /// Builds a set from elements; duplicates are merged.
    static HFSet of(std::vector<HFSet> elements) {
        std::sort(elements.begin(), elements.end());
        elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
        HFSet s;
        s.elements_ = std::move(elements);
        return s;
    }

    const std::vector<HFSet>& elements() const { return elements_; }
    bool empty() const { return elements_.empty(); }

    /// Set-theoretic rank: 0 for the empty set, else 1 + max rank of elements.
    int rank() const {
        int r = 0;
        for (const auto& e : elements_) r = std::max(r, e.rank() + 1);
        return r;
    }

    bool contains(const HFSet& x) const {
        return std::binary_search(elements_.begin(), elements_.end(), x);
    }

    // Structural total order: shorter element list first, then lexicographic.
    std::strong_ordering operator<=>(const HFSet& other) const {
        if (elements_.size() != other.elements_.size())
            return elements_.size() <=> other.elements_.size();
        for (std::size_t i = 0; i < elements_.size(); ++i)
            if (auto c = elements_[i] <=> other.elements_[i]; c != 0) return c;
        return std::strong_ordering::equal;
    }
    bool operator==(const HFSet& other) const { return (*this <=> other) == 0; }

private:
    std::vector<HFSet> elements_;
};

/// All hereditarily finite sets of rank ≤ rank_bound, in structural order.
/// Counts grow as iterated powersets (1, 2, 4, 16, 65536, ...); bounds above 4
/// are rejected outright.
inline std::vector<HFSet> all_hf_upto(int rank_bound) {
    detail::require(rank_bound >= 0, "rank bound must be non-negative");
    detail::require(rank_bound <= 4, "HF enumeration beyond rank 4 is not desk-scale");
    std::vector<HFSet> level = {HFSet{}};
    for (int r = 1; r <= rank_bound; ++r) {
        std::vector<HFSet> next;
        next.reserve(std::size_t{1} << level.size());
        for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << level.size()); ++subset) {
            std::vector<HFSet> members;
            for (std::size_t i = 0; i < level.size(); ++i)
                if (subset & (std::uint64_t{1} << i)) members.push_back(level[i]);
            next.push_back(HFSet::of(std::move(members)));
        }
        level = std::move(next);
    }
    std::sort(level.begin(), level.end());
    return level;
}

} // namespace bvm
