#include "doctest.h"

#include <atomic>
#include <thread>

#include "test_support.hpp"

#include "bvm/reference.hpp"
#include "bvm/universe.hpp"

using namespace bvm;
using testing_support::denormalize;

namespace {

struct PaperSets {
    BoolAlgebra B;
    BoolElement a, b;
    BVSet empty, singleton, xi, u, v, eta;
};

// The worked example over B0: ξ = {∅̂↦1, {∅}̂↦1}, u = {∅̂↦a, {∅}̂↦b},
// v = {∅̂↦b, {∅}̂↦a}, η = {u↦1, v↦1}.
PaperSets paper_sets() {
    auto B = make_algebra({"a", "b"});
    auto a = B.atom(0), b = B.atom(1);
    auto empty = BVSet::empty(B);
    auto singleton = BVSet::make(B, {{empty, B.one()}});
    auto xi = BVSet::make(B, {{empty, B.one()}, {singleton, B.one()}});
    auto u = BVSet::make(B, {{empty, a}, {singleton, b}});
    auto v = BVSet::make(B, {{empty, b}, {singleton, a}});
    auto eta = BVSet::make(B, {{u, B.one()}, {v, B.one()}});
    return {B, a, b, empty, singleton, xi, u, v, eta};
}

} // namespace

TEST_SUITE("universe") {

TEST_CASE("hash consing: structural equality is identity") {
    auto B = make_algebra({"a", "b"});
    auto e1 = BVSet::empty(B);
    auto e2 = BVSet::make(B, {});
    CHECK(e1 == e2);
    CHECK(e1.digest() == e2.digest());
    auto s1 = BVSet::make(B, {{e1, B.atom(0)}});
    auto s2 = BVSet::make(B, {{e2, B.atom(0)}});
    CHECK(s1 == s2);
    CHECK(s1 != e1);
    CHECK(s1.rank() == 1);
    CHECK(e1.rank() == 0);
}

TEST_CASE("make rejects duplicates and mixed algebras") {
    auto B = make_algebra({"a", "b"});
    auto C = make_algebra({"a", "b"});
    auto e = BVSet::empty(B);
    CHECK_THROWS_AS(BVSet::make(B, {{e, B.one()}, {e, B.atom(0)}}), Error);
    CHECK_THROWS_AS(BVSet::make(C, {{e, C.one()}}), Error);
    CHECK_THROWS_AS(BVSet::make(B, {{e, C.one()}}), Error);
}

TEST_CASE("canonical names of hereditarily finite sets") {
    auto p = paper_sets();
    const auto& B = p.B;
    CHECK(canonical_name(B, HFSet{}) == BVSet::empty(B));

    auto one = canonical_name(B, HFSet::of({HFSet{}}));
    CHECK(one.size() == 1);
    CHECK(one.value_of(BVSet::empty(B)).is_one());

    // ξ is the canonical name of {∅, {∅}}
    auto two = HFSet::of({HFSet{}, HFSet::of({HFSet{}})});
    CHECK(canonical_name(B, two) == p.xi);
    CHECK(canonical_name(B, two).rank() == two.rank());
}

TEST_CASE("membership values match hand expansion") {
    auto p = paper_sets();
    CHECK(bv_mem(p.empty, p.singleton).is_one());
    CHECK(bv_mem(p.empty, BVSet::make(p.B, {{p.empty, p.a}})) == p.a);
    CHECK(bv_mem(p.u, p.xi) == p.a); // ⋁ {1 ∧ [[∅̂=u]], 1 ∧ [[{∅}̂=u]]} = 0 ∨ a
    CHECK(bv_mem(p.singleton, p.empty).is_zero());
}

TEST_CASE("equality values match hand expansion") {
    auto p = paper_sets();
    for (const auto& s : {p.empty, p.singleton, p.xi, p.u, p.v, p.eta}) CHECK(bv_eq(s, s).is_one());

    CHECK(bv_eq(BVSet::make(p.B, {{p.empty, p.a}}), BVSet::make(p.B, {{p.empty, p.b}})).is_zero());

    SUBCASE("the literal pair gives 0, agreeing with the reference expansion") {
        auto value = bv_eq(p.xi, p.eta);
        CHECK(value == ref_eq(p.xi, p.eta));
        CHECK(value.is_zero());
        // the reason: neither u nor v ever coincides with ∅̂
        CHECK(bv_mem(p.empty, p.eta).is_zero());
    }
    SUBCASE("the adjusted anti-correlated pair gives 1") {
        auto u1 = BVSet::make(p.B, {{p.empty, p.a}});
        auto v1 = BVSet::make(p.B, {{p.empty, p.b}});
        auto eta1 = BVSet::make(p.B, {{u1, p.B.one()}, {v1, p.B.one()}});
        CHECK(bv_mem(u1, p.xi).is_one()); // b ∨ a = 1
        CHECK(bv_mem(p.empty, eta1).is_one());
        CHECK(bv_eq(p.xi, eta1).is_one());
        CHECK(ref_eq(p.xi, eta1).is_one());
    }
}

TEST_CASE("normalize drops zero entries without changing truth values") {
    auto B = make_algebra({"a", "b"});
    auto e = BVSet::empty(B);
    auto s = BVSet::make(B, {{e, B.one()}});
    CHECK(normalize(BVSet::make(B, {{e, B.zero()}})) == e);
    CHECK(normalize(BVSet::make(B, {{e, B.atom(0)}, {s, B.zero()}})) == BVSet::make(B, {{e, B.atom(0)}}));
    auto already = BVSet::make(B, {{e, B.atom(0)}});
    CHECK(normalize(already) == already);

    SUBCASE("invariance of =/∈ under normalization and denormalization") {
        auto universe = enumerate_universe(B, 2);
        for (const auto& u : universe)
            for (const auto& v : universe) {
                auto du = denormalize(u), dv = denormalize(v);
                CHECK(bv_eq(du, v) == bv_eq(u, v));
                CHECK(bv_eq(u, dv) == bv_eq(u, v));
                CHECK(bv_mem(du, dv) == bv_mem(u, v));
                CHECK(bv_eq(normalize(du), v) == bv_eq(u, v));
            }
    }
}

TEST_CASE("enumerate_universe counts and determinism") {
    auto B = make_algebra({"a", "b"});
    CHECK(enumerate_universe(B, 0).size() == 1);
    CHECK(enumerate_universe(B, 0)[0] == BVSet::empty(B));
    CHECK(enumerate_universe(B, 1).size() == 1);

    auto two = make_algebra({"w"});
    auto level2 = enumerate_universe(two, 2);
    REQUIRE(level2.size() == 2);
    CHECK(level2[0] == BVSet::empty(two));
    CHECK(level2[1] == BVSet::make(two, {{BVSet::empty(two), two.one()}}));

    auto b0_level2 = enumerate_universe(B, 2);
    REQUIRE(b0_level2.size() == 4); // ∅̂, {∅̂↦a}, {∅̂↦b}, {∅̂↦1}

    SUBCASE("counts match the combinatorial recurrence c(k+1) = |B|^c(k)") {
        for (int atoms = 1; atoms <= 3; ++atoms) {
            std::vector<std::string> names;
            for (int i = 0; i < atoms; ++i) names.push_back("t" + std::to_string(i + 1));
            auto A = make_algebra(names);
            const std::size_t cardinality = std::size_t{1} << atoms;
            std::size_t expected = 1;
            for (int bound = 0; bound <= 3; ++bound) {
                if (bound >= 2) {
                    std::size_t next = 1;
                    for (std::size_t i = 0; i < expected; ++i) next *= cardinality;
                    expected = next;
                }
                if (expected > 100000) continue; // over budget by design
                CHECK(enumerate_universe(A, bound).size() == expected);
            }
        }
    }
    SUBCASE("ordering is by rank, then canonical digest order") {
        auto universe = enumerate_universe(B, 3);
        CHECK(universe.size() == 256);
        for (std::size_t i = 1; i < universe.size(); ++i) {
            CHECK(!universe[i].before(universe[i - 1]));
            CHECK(universe[i - 1].rank() <= universe[i].rank());
        }
    }
    SUBCASE("budget violations report the computed count") {
        try {
            enumerate_universe(make_algebra({"t1", "t2", "t3"}), 3, 1000);
            FAIL("expected BudgetError");
        } catch (const BudgetError& e) {
            CHECK(e.computed_count() == "16777216");
            CHECK(e.budget() == 1000);
        }
    }
    SUBCASE("negative bound is rejected") {
        CHECK_THROWS_AS(enumerate_universe(B, -1), Error);
    }
}

TEST_CASE("congruence laws on small universes") {
    for (const auto& A : testing_support::small_algebras()) {
        auto universe = enumerate_universe(A, 2);
        for (const auto& u : universe) {
            CHECK(bv_eq(u, u).is_one());
            for (const auto& v : universe) {
                CHECK(bv_eq(u, v) == bv_eq(v, u));
                for (const auto& w : universe) {
                    CHECK(leq(meet(bv_eq(u, v), bv_eq(v, w)), bv_eq(u, w)));
                    CHECK(leq(meet(bv_eq(u, v), bv_mem(u, w)), bv_mem(v, w)));
                }
            }
        }
    }
}

TEST_CASE("canonical-name faithfulness at small rank") {
    auto B = make_algebra({"a", "b"});
    auto hf = all_hf_upto(2);
    for (const auto& x : hf)
        for (const auto& y : hf) {
            auto eq = bv_eq(canonical_name(B, x), canonical_name(B, y));
            auto mem = bv_mem(canonical_name(B, x), canonical_name(B, y));
            CHECK(eq == (x == y ? B.one() : B.zero()));
            CHECK(mem == (y.contains(x) ? B.one() : B.zero()));
        }
}

TEST_CASE("bounded extensionality is definitional") {
    // [[u = v]] is exactly the meet of the two implication meets of the
    // defining clause, recomputed here from scratch.
    auto B = make_algebra({"a", "b"});
    auto universe = enumerate_universe(B, 2);
    for (const auto& u : universe)
        for (const auto& v : universe) {
            BoolElement expected = B.one();
            for (const auto& [y, vy] : v.entries()) expected = meet(expected, implies(vy, bv_mem(y, u)));
            for (const auto& [y, uy] : u.entries()) expected = meet(expected, implies(uy, bv_mem(y, v)));
            CHECK(bv_eq(u, v) == expected);
        }
}

TEST_CASE("concurrent evaluation sees one function table") {
    auto A = make_algebra({"t1", "t2", "t3"});
    auto universe = enumerate_universe(A, 2);
    // reference values, single-threaded and uncached
    std::vector<std::uint64_t> expected;
    for (const auto& u : universe)
        for (const auto& v : universe) expected.push_back(bv_eq_uncached(u, v).mask());

    std::atomic<bool> ok{true};
    std::vector<std::thread> workers;
    for (int t = 0; t < 4; ++t)
        workers.emplace_back([&] {
            std::size_t i = 0;
            for (const auto& u : universe)
                for (const auto& v : universe) {
                    if (bv_eq(u, v).mask() != expected[i] || bv_mem(u, v) != bv_mem_uncached(u, v))
                        ok = false;
                    ++i;
                }
        });
    for (auto& w : workers) w.join();
    CHECK(ok.load());
}

TEST_CASE("memoization is sound") {
    auto p = paper_sets();
    auto universe = enumerate_universe(p.B, 2);
    std::vector<BVSet> carrier = universe;
    carrier.push_back(p.xi);
    carrier.push_back(p.u);
    carrier.push_back(p.v);
    carrier.push_back(p.eta);
    for (const auto& x : carrier)
        for (const auto& y : carrier) {
            CHECK(bv_eq(x, y) == bv_eq_uncached(x, y));
            CHECK(bv_mem(x, y) == bv_mem_uncached(x, y));
            CHECK(bv_eq(x, y) == ref_eq(x, y));
            CHECK(bv_mem(x, y) == ref_mem(x, y));
        }
}

} // TEST_SUITE
