#include <doctest.h>

#include <algorithm>

#include "hybridmknf/interp.hpp"
#include "hybridmknf/oracle.hpp"
#include "support/random_kb.hpp"

using namespace hmknf;

namespace {

std::vector<Mask> randomSet(testing::Gen& gen, std::size_t width) {
    std::vector<Mask> out;
    for (Mask m = 0; m < (Mask{1} << width); ++m)
        if (gen.chance(0.4)) out.push_back(m);
    if (out.empty()) out.push_back(gen.below(std::size_t{1} << width));
    return out;
}

}  // namespace

TEST_CASE("normalisation splits off fixed and free atoms") {
    // Atom 0 fixed true, atom 1 free, atoms 2 and 3 correlated.
    std::vector<Mask> parts = {0b0001, 0b0011, 0b1101, 0b1111};
    ModelSet m = fromExplicit({10, 11, 12, 13}, parts);
    REQUIRE(m.components().size() == 2);
    CHECK(m.components()[0] == Component{{10}, {1}});
    CHECK(m.components()[1] == Component{{12, 13}, {0b00, 0b11}});
    CHECK(m.componentOf(11) == -1);
    CHECK(m.contains({10, 12, 13}));
    CHECK_FALSE(m.contains({10, 12}));
}

TEST_CASE("full set and up-sets") {
    CHECK(ModelSet::full().isFull());
    ModelSet up = ModelSet::upSet({3, 5});
    CHECK(up.contains({3, 5, 7}));
    CHECK_FALSE(up.contains({3}));
    CHECK(up.size() == doctest::Approx(1.0));
}

TEST_CASE("intersection of disjoint sets raises") {
    ModelSet a = fromExplicit({1}, {1});
    ModelSet b = fromExplicit({1}, {0});
    CHECK_THROWS_AS(intersect(a, b), Error);
    try {
        intersect(a, b);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::EmptyIntersection);
    }
}

TEST_CASE("explicit round trip, intersection and restriction agree with set operations") {
    testing::Gen gen(11);
    std::vector<AtomId> atoms = {2, 4, 6, 8, 9};
    for (int round = 0; round < 200; ++round) {
        auto x = randomSet(gen, atoms.size());
        auto y = randomSet(gen, atoms.size());
        ModelSet mx = fromExplicit(atoms, x);
        ModelSet my = fromExplicit(atoms, y);
        CHECK(oracle::toExplicit(mx, atoms) == x);

        std::vector<Mask> both;
        std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(both));
        if (both.empty()) {
            CHECK_THROWS_AS(intersect(mx, my), Error);
        } else {
            CHECK(oracle::toExplicit(intersect(mx, my), atoms) == both);
        }

        // Restricting to the first three atoms keeps the projection and frees the rest.
        std::vector<AtomId> kept(atoms.begin(), atoms.begin() + 3);
        std::vector<Mask> projected;
        for (Mask p : x) projected.push_back(p & 0b111);
        std::sort(projected.begin(), projected.end());
        projected.erase(std::unique(projected.begin(), projected.end()), projected.end());
        std::vector<Mask> saturated;
        for (Mask p = 0; p < 32; ++p)
            if (std::binary_search(projected.begin(), projected.end(), p & 0b111)) saturated.push_back(p);
        CHECK(oracle::toExplicit(restrict(mx, kept), atoms) == saturated);
        CHECK(sameDenotation(mx, fromExplicit(atoms, x)));
    }
}

TEST_CASE("knowledge and default queries over factored sets") {
    // p fixed true; q, r correlated (q <-> r).
    ModelSet m = fromExplicit({0, 1, 2}, {0b001, 0b111});
    CHECK(holdsK(m, atomF(0)));
    CHECK_FALSE(holdsK(m, atomF(1)));
    CHECK(holdsNot(m, atomF(1)));
    CHECK(satisfiesSentence(m, know(iff(atomF(1), atomF(2)))));
    CHECK(satisfiesSentence(m, implies(know(atomF(0)), notD(atomF(2)))));
    CHECK_FALSE(satisfiesSentence(m, know(atomF(2))));
}

TEST_CASE("S5 satisfaction matches explicit evaluation") {
    testing::Gen gen(5);
    std::vector<AtomId> atoms = {0, 1, 2};
    for (int round = 0; round < 200; ++round) {
        auto set = randomSet(gen, atoms.size());
        ModelSet m = fromExplicit(atoms, set);
        Formula f = gen.formula(atoms, 2);
        bool everywhere = std::all_of(set.begin(), set.end(), [&](Mask i) {
            return evalObjective(f, [&](AtomId a) { return (i >> a & 1u) != 0; });
        });
        CHECK(satisfiesSentence(m, know(f)) == everywhere);
        CHECK(satisfiesSentence(m, notD(f)) == !everywhere);
    }
}
