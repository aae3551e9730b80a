#include <catch2/catch_amalgamated.hpp>

#include "addperc/poset.hpp"

using namespace addperc;

TEST_CASE("two-chain from a single pair") {
    Poset p = Poset::from_pairs({"0", "1"}, {{"0", "1"}});
    REQUIRE(p.size() == 2);
    CHECK(p.leq(0, 1));
    CHECK_FALSE(p.leq(1, 0));
    CHECK(p.leq(0, 0));
}

TEST_CASE("singleton poset") {
    Poset p = Poset::from_pairs({"a"}, {});
    REQUIRE(p.size() == 1);
    CHECK(p.leq(0, 0));
}

TEST_CASE("antisymmetry violation is a cycle") {
    CHECK_THROWS_AS(Poset::from_pairs({"a", "b"}, {{"a", "b"}, {"b", "a"}}), CycleError);
    CHECK_THROWS_AS(Poset::from_pairs({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}}),
                    CycleError);
}

TEST_CASE("duplicate elements rejected") {
    CHECK_THROWS_AS(Poset::from_pairs({"a", "a"}, {}), DuplicateElement);
}

TEST_CASE("stored relation is the transitive closure") {
    Poset p = Poset::from_pairs({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}});
    CHECK(p.leq(0, 2));
    auto covers = p.cover_pairs();
    REQUIRE(covers.size() == 2);  // a<b, b<c; a<c is derived
}

TEST_CASE("order dual reverses the relation") {
    Poset p = Poset::chain(3);
    Poset d = p.dual();
    CHECK(d.leq(2, 0));
    CHECK_FALSE(d.leq(0, 2));
    CHECK(d.dual() == p);
}

TEST_CASE("two-chain is self-dual via the swap") {
    auto iso = Poset::chain(2).self_dual_iso();
    REQUIRE(iso.has_value());
    CHECK((*iso)[0] == 1);
    CHECK((*iso)[1] == 0);
}

TEST_CASE("antichain is self-dual via the identity") {
    auto iso = Poset::antichain(3).self_dual_iso();
    REQUIRE(iso.has_value());
}

TEST_CASE("V poset has no order-reversing self-bijection") {
    // one bottom, two tops: 6 permutations, none reverses the order
    Poset v = Poset::from_pairs({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}});
    CHECK_FALSE(v.self_dual_iso().has_value());
}

TEST_CASE("self_dual_iso guard") {
    CHECK_THROWS_AS(Poset::chain(9).self_dual_iso(), TooLarge);
}

TEST_CASE("poset isomorphism search") {
    Poset a = Poset::from_pairs({"x", "y", "z"}, {{"x", "y"}, {"x", "z"}});
    Poset b = Poset::from_pairs({"p", "q", "r"}, {{"q", "p"}, {"q", "r"}});
    auto iso = find_poset_isomorphism(a, b);
    REQUIRE(iso.has_value());
    CHECK((*iso)[0] == 1);  // the unique bottom maps to the unique bottom
    CHECK_FALSE(find_poset_isomorphism(a, Poset::chain(3)).has_value());
}
