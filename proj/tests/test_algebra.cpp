#include "doctest.h"

#include "bvm/algebra.hpp"

using namespace bvm;

namespace {

// The two-atom algebra of the worked example: B0 = {0, a, b, 1}, a ⊥ b.
BoolAlgebra b0() { return make_algebra({"a", "b"}); }

} // namespace

TEST_SUITE("algebra") {

TEST_CASE("make_algebra accepts atoms and rejects degenerate input") {
    auto B = b0();
    CHECK(B.atom_count() == 2);
    CHECK(B.zero().is_zero());
    CHECK(B.one().is_one());
    CHECK(meet(B.atom(0), B.atom(1)).is_zero()); // a ⊥ b

    auto single = make_algebra({"w1"});
    CHECK(single.atom_count() == 1);
    CHECK(single.atom(0) == single.one());

    CHECK_THROWS_AS(make_algebra({}), Error);
    CHECK_THROWS_AS(make_algebra({"a", "a"}), Error);
    CHECK_THROWS_AS(make_algebra({"not an ident!"}), Error);
    CHECK_THROWS_AS(make_algebra({"forall"}), Error); // reserved word
}

TEST_CASE("named elements resolve") {
    auto B = make_algebra({"a", "b"}, {{"left", {"a"}}});
    REQUIRE(B.named("left").has_value());
    CHECK(*B.named("left") == B.atom(0));
    CHECK(!B.named("right").has_value());
    CHECK_THROWS_AS(make_algebra({"a"}, {{"x", {"zzz"}}}), Error);
}

TEST_CASE("lattice operations on B0") {
    auto B = b0();
    auto a = B.atom(0), b = B.atom(1);
    CHECK(meet(a, b) == B.zero());
    CHECK(implies(a, B.zero()) == b); // a^c ∨ 0 = b in the two-atom algebra
    CHECK(join(a, complement(a)) == B.one());
    CHECK(leq(a, B.one()));
    CHECK(!leq(B.one(), a));
    CHECK(leq(B.zero(), b));
}

TEST_CASE("mixed-algebra operands are rejected") {
    auto B = b0();
    auto C = b0(); // distinct object, same shape
    CHECK_THROWS_AS(meet(B.atom(0), C.atom(0)), Error);
    CHECK_THROWS_AS(leq(B.atom(0), C.atom(0)), Error);
}

TEST_CASE("Boolean laws hold exhaustively up to 4 atoms") {
    for (int n = 1; n <= 4; ++n) {
        std::vector<std::string> names;
        for (int i = 0; i < n; ++i) names.push_back("t" + std::to_string(i + 1));
        auto B = make_algebra(names);
        auto elems = B.all_elements();
        for (const auto& x : elems) {
            CHECK(complement(complement(x)) == x);
            CHECK(meet(x, complement(x)).is_zero());
            CHECK(join(x, complement(x)).is_one());
            for (const auto& y : elems) {
                CHECK(complement(meet(x, y)) == join(complement(x), complement(y)));
                CHECK(complement(join(x, y)) == meet(complement(x), complement(y)));
                for (const auto& z : elems) {
                    CHECK(meet(x, join(y, z)) == join(meet(x, y), meet(x, z)));
                    CHECK(join(x, meet(y, z)) == meet(join(x, y), join(x, z)));
                }
            }
        }
    }
}

TEST_CASE("partition of unity recognition") {
    auto B = b0();
    auto a = B.atom(0), b = B.atom(1);
    std::vector<BoolElement> both = {a, b};
    std::vector<BoolElement> only_a = {a};
    std::vector<BoolElement> overlapping = {B.one(), a};
    std::vector<BoolElement> with_zero = {B.zero(), B.one()};
    CHECK(is_partition_of_unity(B, both));
    CHECK(!is_partition_of_unity(B, only_a));        // join ≠ 1
    CHECK(!is_partition_of_unity(B, overlapping));   // not disjoint
    CHECK(!is_partition_of_unity(B, with_zero));
    CHECK_NOTHROW(Partition(B, both));
    CHECK_THROWS_AS(Partition(B, only_a), Error);
}

TEST_CASE("restrict_algebra builds B_a with the y ∧ a map") {
    auto B = b0();
    auto a = B.atom(0);
    auto r = restrict_algebra(B, a);
    CHECK(r.sub.atom_count() == 1);
    CHECK(r.sub.atom_names() == std::vector<std::string>{"a"});
    // map sends {0, a, b, 1} to {0, a, 0, a}
    for (const auto& y : B.all_elements())
        CHECK(r.to_parent(r.to_sub(y)) == meet(y, a));
    // complement in B_a is x^c ∧ a in the parent
    for (const auto& x : r.sub.all_elements())
        CHECK(r.to_parent(complement(x)) == meet(complement(r.to_parent(x)), a));

    SUBCASE("restricting to 1 is the identity") {
        auto id = restrict_algebra(B, B.one());
        CHECK(id.sub.same(B));
        for (const auto& y : B.all_elements()) CHECK(id.to_sub(y) == y);
    }
    SUBCASE("restricting to 0 is rejected") {
        CHECK_THROWS_AS(restrict_algebra(B, B.zero()), Error);
    }
    SUBCASE("restriction is canonical per situation") {
        auto again = restrict_algebra(B, a);
        CHECK(again.sub.same(r.sub));
    }
    SUBCASE("atom counts follow the window") {
        auto C = make_algebra({"t1", "t2", "t3"});
        for (const auto& w : C.all_elements()) {
            if (w.is_zero()) continue;
            CHECK(restrict_algebra(C, w).sub.atom_count() == w.atom_count());
        }
    }
}

namespace {

struct Tables {
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> meet, join;
    std::vector<std::size_t> comp;
    std::size_t zero = 0, one = 0;
};

// Exports an algebra back to tables through an element list.
Tables export_tables(const std::vector<BoolElement>& elems, const std::vector<std::string>& names) {
    const std::size_t n = elems.size();
    Tables t;
    t.names = names;
    t.meet.assign(n, std::vector<std::size_t>(n, 0));
    t.join.assign(n, std::vector<std::size_t>(n, 0));
    t.comp.assign(n, 0);
    auto index_of = [&](const BoolElement& x) -> std::size_t {
        for (std::size_t i = 0; i < n; ++i)
            if (elems[i] == x) return i;
        throw Error("element not in list");
    };
    for (std::size_t i = 0; i < n; ++i) {
        t.comp[i] = index_of(complement(elems[i]));
        if (elems[i].is_zero()) t.zero = i;
        if (elems[i].is_one()) t.one = i;
        for (std::size_t j = 0; j < n; ++j) {
            t.meet[i][j] = index_of(meet(elems[i], elems[j]));
            t.join[i][j] = index_of(join(elems[i], elems[j]));
        }
    }
    return t;
}

} // namespace

TEST_CASE("import_algebra_table Stone-represents the four-element algebra") {
    // elements 0, a, b, 1 with a ⊥ b
    std::vector<std::string> names = {"zero", "a", "b", "one"};
    std::vector<std::vector<std::size_t>> mt = {
        {0, 0, 0, 0}, {0, 1, 0, 1}, {0, 0, 2, 2}, {0, 1, 2, 3}};
    std::vector<std::vector<std::size_t>> jt = {
        {0, 1, 2, 3}, {1, 1, 3, 3}, {2, 3, 2, 3}, {3, 3, 3, 3}};
    std::vector<std::size_t> comp = {3, 2, 1, 0};

    auto imported = import_algebra_table(names, mt, jt, comp, 0, 3);
    CHECK(imported.algebra.atom_count() == 2);
    CHECK(imported.elements[0].is_zero());
    CHECK(imported.elements[3].is_one());
    CHECK(imported.elements[1].is_atom());
    CHECK(imported.elements[2].is_atom());
    CHECK(imported.elements[1] != imported.elements[2]);

    SUBCASE("re-export reproduces the input tables through the isomorphism") {
        auto t = export_tables(imported.elements, names);
        CHECK(t.meet == mt);
        CHECK(t.join == jt);
        CHECK(t.comp == comp);
        CHECK(t.zero == 0);
        CHECK(t.one == 3);
    }
}

TEST_CASE("import_algebra_table accepts the two-element algebra") {
    auto imported = import_algebra_table({"bot", "top"}, {{0, 0}, {0, 1}}, {{0, 1}, {1, 1}}, {1, 0}, 0, 1);
    CHECK(imported.algebra.atom_count() == 1);
    CHECK(imported.elements[1].is_one());
}

TEST_CASE("import_algebra_table rejects the three-element chain") {
    // 0 < m < 1; m has no complement, so whatever comp table is supplied
    // violates a law.
    std::vector<std::string> names = {"zero", "m", "one"};
    std::vector<std::vector<std::size_t>> mt = {{0, 0, 0}, {0, 1, 1}, {0, 1, 2}};
    std::vector<std::vector<std::size_t>> jt = {{0, 1, 2}, {1, 1, 2}, {2, 2, 2}};
    for (std::size_t m_comp : {0u, 1u, 2u}) {
        std::vector<std::size_t> comp = {2, m_comp, 0};
        CHECK_THROWS_AS(import_algebra_table(names, mt, jt, comp, 0, 2), Error);
    }
}

TEST_CASE("import_algebra_table rejects malformed tables") {
    CHECK_THROWS_AS(import_algebra_table({"x"}, {{0}}, {{0}}, {0}, 0, 0), Error); // 0 = 1
    // out-of-range entry
    CHECK_THROWS_AS(import_algebra_table({"z", "o"}, {{0, 0}, {0, 9}}, {{0, 1}, {1, 1}}, {1, 0}, 0, 1), Error);
}

TEST_CASE("ultrafilters are the atoms") {
    auto B = b0();
    auto ufs = ultrafilters(B);
    REQUIRE(ufs.size() == 2);
    CHECK(ufs[0] == B.atom(0));
    CHECK(ufs[1] == B.atom(1));
    CHECK(ultrafilters(make_algebra({"w"})).size() == 1);
    CHECK(ultrafilters(make_algebra({"w"}))[0].is_one());

    auto C = make_algebra({"t1", "t2", "t3"});
    CHECK(ultrafilters(C).size() == 3);
    // every nonzero x lies in some ultrafilter
    for (const auto& x : C.all_elements()) {
        if (x.is_zero()) continue;
        bool in_some = false;
        for (const auto& t : ultrafilters(C)) in_some = in_some || leq(t, x);
        CHECK(in_some);
    }
}

} // TEST_SUITE
