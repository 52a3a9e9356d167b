#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bvm/error.hpp"

/** @file algebra.hpp
 *  Finite complete Boolean algebras in Stone (powerset-of-atoms) form.
 *
 *  Every finite Boolean algebra is atomic, so it is isomorphic to the powerset
 *  of its atoms. Elements are therefore stored as atom sets (one bit per atom),
 *  which makes meet/join/complement single word operations and meets/joins over
 *  arbitrary finite collections exact. Algebras presented as explicit operation
 *  tables are converted to this form by import_algebra_table.
 *
 *  An algebra is an immutable shared body; two algebras are compatible only if
 *  they are the same object. Elements carry a handle to their algebra, and all
 *  operations reject operands from different algebras.
 */

namespace bvm {

class BoolAlgebra;
class BoolElement;
class Partition;
struct AlgebraRestriction;

namespace detail {

/// Identifier usable in the textual formats: [A-Za-z_][A-Za-z0-9_]*, not a keyword.
inline bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto head = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto tail = [&](char c) { return head(c) || (c >= '0' && c <= '9'); };
    if (!head(s[0])) return false;
    for (char c : s.substr(1))
        if (!tail(c)) return false;
    static const char* const keywords[] = {"algebra", "atoms", "let", "env",  "over",   "space",  "family",
                                           "rr",      "bv",    "name", "forall", "exists", "in",     "rank"};
    for (const char* k : keywords)
        if (s == k) return false;
    return true;
}

struct AlgebraBody {
    std::vector<std::string> atom_names;
    std::map<std::string, std::uint64_t, std::less<>> named_elements;

    // Lazily populated, guarded by mu. universe_store is owned by universe.hpp.
    mutable std::mutex mu;
    mutable std::shared_ptr<void> universe_store;
    mutable std::map<std::uint64_t, std::shared_ptr<const AlgebraBody>> sub_algebras;

    std::uint64_t full_mask() const {
        const auto n = atom_names.size();
        return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    }
};

const AlgebraBody* body_of(const BoolAlgebra& a);
std::shared_ptr<const AlgebraBody> share_body(const BoolAlgebra& a);
BoolAlgebra wrap_body(std::shared_ptr<const AlgebraBody> body);

} // namespace detail

/// Handle to a finite Boolean algebra. Cheap to copy; compares by object identity.
class BoolAlgebra {
public:
    BoolAlgebra() = delete;

    int atom_count() const { return static_cast<int>(body_->atom_names.size()); }
    const std::vector<std::string>& atom_names() const { return body_->atom_names; }

    /// Same underlying algebra object (the compatibility relation for elements).
    bool same(const BoolAlgebra& other) const { return body_ == other.body_; }

    BoolElement zero() const;
    BoolElement one() const;
    BoolElement atom(int index) const;
    /// Element from a raw atom-set bitmask (bit i = atom i). Checked.
    BoolElement element(std::uint64_t mask) const;
    /// Element from a list of atom names. Checked; duplicates tolerated.
    BoolElement element_from_atom_names(std::span<const std::string> names) const;
    /// Looks up an element bound by name at construction ("let" bindings); null if absent.
    std::optional<BoolElement> named(std::string_view name) const;
    const std::map<std::string, std::uint64_t, std::less<>>& named_element_masks() const {
        return body_->named_elements;
    }

    /// All 2^atom_count elements in increasing mask order.
    std::vector<BoolElement> all_elements() const;

private:
    explicit BoolAlgebra(std::shared_ptr<const detail::AlgebraBody> body) : body_(std::move(body)) {}

    std::shared_ptr<const detail::AlgebraBody> body_;

    friend BoolAlgebra make_algebra(std::vector<std::string>, std::vector<std::pair<std::string, std::vector<std::string>>>);
    friend AlgebraRestriction restrict_algebra(const BoolAlgebra&, const BoolElement&);
    friend class BoolElement;
    friend const detail::AlgebraBody* detail::body_of(const BoolAlgebra& a);
    friend std::shared_ptr<const detail::AlgebraBody> detail::share_body(const BoolAlgebra& a);
    friend BoolAlgebra detail::wrap_body(std::shared_ptr<const detail::AlgebraBody> body);
};

/// One element of a finite Boolean algebra, represented by its atom set.
class BoolElement {
public:
    BoolElement() = delete;

    const BoolAlgebra& algebra() const { return algebra_; }
    std::uint64_t mask() const { return mask_; }

    bool is_zero() const { return mask_ == 0; }
    bool is_one() const { return mask_ == full(); }
    /// Minimal nonzero element, i.e. a single possible world.
    bool is_atom() const { return std::popcount(mask_) == 1; }
    int atom_count() const { return std::popcount(mask_); }

    /// Names of the atoms below this element, in algebra order.
    std::vector<std::string> atom_names() const {
        std::vector<std::string> out;
        const auto& names = algebra_.atom_names();
        for (std::size_t i = 0; i < names.size(); ++i)
            if (mask_ & (std::uint64_t{1} << i)) out.push_back(names[i]);
        return out;
    }

    bool operator==(const BoolElement& other) const {
        return algebra_.same(other.algebra_) && mask_ == other.mask_;
    }
    bool operator!=(const BoolElement& other) const { return !(*this == other); }

private:
    BoolElement(BoolAlgebra algebra, std::uint64_t mask) : algebra_(std::move(algebra)), mask_(mask) {}

    std::uint64_t full() const { return detail::body_of(algebra_)->full_mask(); }

    BoolAlgebra algebra_;
    std::uint64_t mask_;

    friend class BoolAlgebra;
};

namespace detail {
inline const AlgebraBody* body_of(const BoolAlgebra& a) { return a.body_ ? a.body_.get() : nullptr; }
inline std::shared_ptr<const AlgebraBody> share_body(const BoolAlgebra& a) { return a.body_; }
inline BoolAlgebra wrap_body(std::shared_ptr<const AlgebraBody> body) { return BoolAlgebra(std::move(body)); }

inline void require_same_algebra(const BoolAlgebra& a, const BoolAlgebra& b, const char* op) {
    if (!a.same(b)) throw Error(std::string(op) + ": operands belong to different algebras");
}
inline void require_same_algebra(const BoolElement& x, const BoolElement& y, const char* op) {
    require_same_algebra(x.algebra(), y.algebra(), op);
}
} // namespace detail

inline BoolElement BoolAlgebra::zero() const { return BoolElement(*this, 0); }
inline BoolElement BoolAlgebra::one() const { return BoolElement(*this, body_->full_mask()); }

inline BoolElement BoolAlgebra::atom(int index) const {
    detail::require(index >= 0 && index < atom_count(), "atom index out of range");
    return BoolElement(*this, std::uint64_t{1} << index);
}

inline BoolElement BoolAlgebra::element(std::uint64_t mask) const {
    detail::require((mask & ~body_->full_mask()) == 0, "element mask has bits outside the algebra's atoms");
    return BoolElement(*this, mask);
}

inline BoolElement BoolAlgebra::element_from_atom_names(std::span<const std::string> names) const {
    std::uint64_t mask = 0;
    for (const auto& n : names) {
        auto it = std::find(body_->atom_names.begin(), body_->atom_names.end(), n);
        if (it == body_->atom_names.end()) throw Error("unknown atom '" + n + "'");
        mask |= std::uint64_t{1} << (it - body_->atom_names.begin());
    }
    return BoolElement(*this, mask);
}

inline std::optional<BoolElement> BoolAlgebra::named(std::string_view name) const {
    auto it = body_->named_elements.find(name);
    if (it == body_->named_elements.end()) return std::nullopt;
    return BoolElement(*this, it->second);
}

inline std::vector<BoolElement> BoolAlgebra::all_elements() const {
    detail::require(atom_count() <= 20, "algebra too large to enumerate all elements");
    std::vector<BoolElement> out;
    out.reserve(std::size_t{1} << atom_count());
    for (std::uint64_t m = 0; m <= body_->full_mask(); ++m) out.push_back(BoolElement(*this, m));
    return out;
}

/** Builds the powerset algebra on the given atoms.
 *
 *  Atom names must be distinct textual identifiers; `named_elements` installs
 *  "let" bindings (name -> atom subset) resolvable via BoolAlgebra::named.
 *  The degenerate one-element algebra (no atoms, 0 = 1) is rejected.
 */
inline BoolAlgebra make_algebra(std::vector<std::string> atom_names,
                                std::vector<std::pair<std::string, std::vector<std::string>>> named_elements = {}) {
    detail::require(!atom_names.empty(), "an algebra needs at least one atom (0 must differ from 1)");
    detail::require(atom_names.size() <= 64, "at most 64 atoms are supported");
    for (const auto& n : atom_names)
        detail::require(detail::is_identifier(n), "atom name '" + n + "' is not a valid identifier");
    auto sorted = atom_names;
    std::sort(sorted.begin(), sorted.end());
    detail::require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "duplicate atom name");

    auto body = std::make_shared<detail::AlgebraBody>();
    body->atom_names = std::move(atom_names);
    BoolAlgebra algebra(body);
    for (auto& [name, atoms] : named_elements) {
        detail::require(detail::is_identifier(name), "element name '" + name + "' is not a valid identifier");
        detail::require(!body->named_elements.count(name), "duplicate element name '" + name + "'");
        body->named_elements.emplace(name, algebra.element_from_atom_names(atoms).mask());
    }
    return algebra;
}

// Lattice operations. All binary operations require operands from the same algebra.

inline BoolElement meet(const BoolElement& x, const BoolElement& y) {
    detail::require_same_algebra(x, y, "meet");
    return x.algebra().element(x.mask() & y.mask());
}

inline BoolElement join(const BoolElement& x, const BoolElement& y) {
    detail::require_same_algebra(x, y, "join");
    return x.algebra().element(x.mask() | y.mask());
}

inline BoolElement complement(const BoolElement& x) {
    return x.algebra().element(~x.mask() & detail::body_of(x.algebra())->full_mask());
}

/// x ⇒ y, defined as complement(x) ∨ y.
inline BoolElement implies(const BoolElement& x, const BoolElement& y) {
    detail::require_same_algebra(x, y, "implies");
    return join(complement(x), y);
}

inline bool leq(const BoolElement& x, const BoolElement& y) {
    detail::require_same_algebra(x, y, "leq");
    return (x.mask() & ~y.mask()) == 0;
}

inline BoolElement operator&(const BoolElement& x, const BoolElement& y) { return meet(x, y); }
inline BoolElement operator|(const BoolElement& x, const BoolElement& y) { return join(x, y); }

inline bool disjoint(const BoolElement& x, const BoolElement& y) { return meet(x, y).is_zero(); }

/// True iff parts are nonzero, pairwise disjoint, and join to 1.
inline bool is_partition_of_unity(const BoolAlgebra& algebra, std::span<const BoolElement> parts) {
    std::uint64_t seen = 0;
    for (const auto& p : parts) {
        detail::require_same_algebra(p.algebra(), algebra, "is_partition_of_unity");
        if (p.is_zero()) return false;
        if (seen & p.mask()) return false; // overlaps an earlier part
        seen |= p.mask();
    }
    return seen == detail::body_of(algebra)->full_mask();
}

/// A partition of unity: mutually exclusive, jointly exhaustive situations.
class Partition {
public:
    Partition(BoolAlgebra algebra, std::vector<BoolElement> parts)
        : algebra_(std::move(algebra)), parts_(std::move(parts)) {
        detail::require(is_partition_of_unity(algebra_, parts_),
                        "parts are not a partition of unity (nonzero, disjoint, join = 1)");
    }

    const BoolAlgebra& algebra() const { return algebra_; }
    const std::vector<BoolElement>& parts() const { return parts_; }
    std::size_t size() const { return parts_.size(); }

private:
    BoolAlgebra algebra_;
    std::vector<BoolElement> parts_;
};

/** The restricted algebra B_a: atoms are exactly the parent atoms below a.
 *
 *  to_sub realizes the surjection y ↦ y ∧ a of the parent onto B_a;
 *  to_parent embeds B_a elements back as parent elements below a. Meets and
 *  joins are inherited, and the B_a-complement of x corresponds to x^c ∧ a in
 *  the parent, which to_sub/to_parent translate for free.
 */
struct AlgebraRestriction {
    BoolAlgebra parent;
    BoolAlgebra sub;
    BoolElement window; // the element a, in the parent

    BoolElement to_sub(const BoolElement& y) const {
        detail::require_same_algebra(y.algebra(), parent, "restriction map");
        std::uint64_t kept = y.mask() & window.mask(), out = 0, pos = 0;
        for (std::uint64_t w = window.mask(); w; w &= w - 1) {
            const std::uint64_t bit = w & ~(w - 1);
            if (kept & bit) out |= std::uint64_t{1} << pos;
            ++pos;
        }
        return sub.element(out);
    }

    BoolElement to_parent(const BoolElement& x) const {
        detail::require_same_algebra(x.algebra(), sub, "restriction map");
        std::uint64_t out = 0, pos = 0;
        for (std::uint64_t w = window.mask(); w; w &= w - 1) {
            const std::uint64_t bit = w & ~(w - 1);
            if (x.mask() & (std::uint64_t{1} << pos)) out |= bit;
            ++pos;
        }
        return parent.element(out);
    }
};

/** Restricts an algebra to the situation a (which must be nonzero).
 *
 *  Results are canonical per (algebra, a): restricting twice to the same
 *  element yields the same sub-algebra object, so their elements and
 *  boolean-valued sets interoperate. Restricting to 1 returns the algebra
 *  itself with identity maps.
 */
inline AlgebraRestriction restrict_algebra(const BoolAlgebra& algebra, const BoolElement& a) {
    detail::require_same_algebra(a.algebra(), algebra, "restrict_algebra");
    detail::require(!a.is_zero(), "cannot restrict to 0: the restricted algebra would have 0 = 1");
    if (a.is_one()) return AlgebraRestriction{algebra, algebra, a};

    const auto* body = detail::body_of(algebra);
    std::shared_ptr<const detail::AlgebraBody> sub_body;
    {
        std::lock_guard<std::mutex> lock(body->mu);
        auto it = body->sub_algebras.find(a.mask());
        if (it != body->sub_algebras.end()) {
            sub_body = it->second;
        } else {
            auto fresh = std::make_shared<detail::AlgebraBody>();
            for (std::size_t i = 0; i < body->atom_names.size(); ++i)
                if (a.mask() & (std::uint64_t{1} << i)) fresh->atom_names.push_back(body->atom_names[i]);
            body->sub_algebras.emplace(a.mask(), fresh);
            sub_body = fresh;
        }
    }
    return AlgebraRestriction{algebra, BoolAlgebra(sub_body), a};
}

/// In a finite Boolean algebra the ultrafilters are exactly the principal
/// filters of atoms; this returns their generators. x lies in the ultrafilter
/// generated by atom t iff t ≤ x.
inline std::vector<BoolElement> ultrafilters(const BoolAlgebra& algebra) {
    std::vector<BoolElement> out;
    out.reserve(algebra.atom_count());
    for (int i = 0; i < algebra.atom_count(); ++i) out.push_back(algebra.atom(i));
    return out;
}

/// Result of importing an explicitly tabulated algebra: the Stone-represented
/// algebra plus the isomorphism sending each input element index to an element.
struct ImportedAlgebra {
    BoolAlgebra algebra;
    std::vector<BoolElement> elements;
};

/** Stone-represents a finite Boolean algebra given by operation tables.
 *
 *  Tables are indexed by position in `element_names`; meet/join are n×n index
 *  matrices, comp an index vector. Validates the Boolean algebra axioms by
 *  exhaustive check (commutativity, associativity, absorption, distributivity,
 *  complement and identity laws), extracts the atoms as the minimal nonzero
 *  elements, and requires x ↦ {atoms ≤ x} to be a bijection onto the powerset
 *  of atoms. Any failure is reported as an Error naming the violated law.
 */
inline ImportedAlgebra import_algebra_table(const std::vector<std::string>& element_names,
                                            const std::vector<std::vector<std::size_t>>& meet_table,
                                            const std::vector<std::vector<std::size_t>>& join_table,
                                            const std::vector<std::size_t>& comp_table,
                                            std::size_t zero, std::size_t one) {
    const std::size_t n = element_names.size();
    detail::require(n >= 2, "import: need at least the two elements 0 and 1");
    detail::require(n <= 256, "import: at most 256 elements are supported");
    detail::require(meet_table.size() == n && join_table.size() == n && comp_table.size() == n,
                    "import: tables must cover every element");
    detail::require(zero < n && one < n, "import: 0/1 indices out of range");
    detail::require(zero != one, "import: 0 and 1 must be distinct");
    for (std::size_t i = 0; i < n; ++i) {
        detail::require(meet_table[i].size() == n && join_table[i].size() == n,
                        "import: tables must cover every element");
        detail::require(comp_table[i] < n, "import: table entry out of range");
        for (std::size_t j = 0; j < n; ++j)
            detail::require(meet_table[i][j] < n && join_table[i][j] < n, "import: table entry out of range");
    }

    auto fail = [&](const char* law, std::size_t i) {
        throw Error(std::string("import: ") + law + " fails at element '" + element_names[i] + "'");
    };
    const auto& mt = meet_table;
    const auto& jt = join_table;

    for (std::size_t i = 0; i < n; ++i) {
        if (mt[i][comp_table[i]] != zero) fail("complement law x ∧ x^c = 0", i);
        if (jt[i][comp_table[i]] != one) fail("complement law x ∨ x^c = 1", i);
        if (mt[i][one] != i) fail("identity law x ∧ 1 = x", i);
        if (jt[i][zero] != i) fail("identity law x ∨ 0 = x", i);
        for (std::size_t j = 0; j < n; ++j) {
            if (mt[i][j] != mt[j][i]) fail("commutativity of ∧", i);
            if (jt[i][j] != jt[j][i]) fail("commutativity of ∨", i);
            if (mt[i][jt[i][j]] != i) fail("absorption x ∧ (x ∨ y) = x", i);
            if (jt[i][mt[i][j]] != i) fail("absorption x ∨ (x ∧ y) = x", i);
            for (std::size_t k = 0; k < n; ++k) {
                if (mt[mt[i][j]][k] != mt[i][mt[j][k]]) fail("associativity of ∧", i);
                if (jt[jt[i][j]][k] != jt[i][jt[j][k]]) fail("associativity of ∨", i);
                if (mt[i][jt[j][k]] != jt[mt[i][j]][mt[i][k]]) fail("distributivity x ∧ (y ∨ z)", i);
                if (jt[i][mt[j][k]] != mt[jt[i][j]][jt[i][k]]) fail("distributivity x ∨ (y ∧ z)", i);
            }
        }
    }

    // Order: x ≤ y iff x ∧ y = x. Atoms are the minimal nonzero elements.
    auto below = [&](std::size_t x, std::size_t y) { return mt[x][y] == x; };
    std::vector<std::size_t> atoms;
    for (std::size_t i = 0; i < n; ++i) {
        if (i == zero) continue;
        bool minimal = true;
        for (std::size_t j = 0; j < n && minimal; ++j)
            if (j != zero && j != i && below(j, i)) minimal = false;
        if (minimal) atoms.push_back(i);
    }
    detail::require(!atoms.empty(), "import: no atoms found");
    detail::require(atoms.size() <= 64, "import: more than 64 atoms");
    detail::require(n == (std::size_t{1} << atoms.size()),
                    "import: element count is not 2^(number of atoms); not a Boolean algebra");

    std::vector<std::string> atom_names;
    for (std::size_t a : atoms) atom_names.push_back(element_names[a]);
    BoolAlgebra algebra = make_algebra(std::move(atom_names));

    // The Stone map x ↦ {atoms ≤ x} must be a bijection that transports the tables.
    std::vector<BoolElement> iso;
    std::vector<bool> hit(n, false);
    iso.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t mask = 0;
        for (std::size_t k = 0; k < atoms.size(); ++k)
            if (below(atoms[k], i)) mask |= std::uint64_t{1} << k;
        const auto idx = static_cast<std::size_t>(mask);
        detail::require(!hit[idx], "import: atom map is not injective; not a Boolean algebra");
        hit[idx] = true;
        iso.push_back(algebra.element(mask));
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            detail::require(iso[mt[i][j]] == meet(iso[i], iso[j]), "import: meet table disagrees with atom structure");
            detail::require(iso[jt[i][j]] == join(iso[i], iso[j]), "import: join table disagrees with atom structure");
        }

    return ImportedAlgebra{algebra, std::move(iso)};
}

} // namespace bvm
