#include <doctest.h>

#include "hybridmknf/oracle.hpp"
#include "hybridmknf/winslett.hpp"
#include "support/random_kb.hpp"

using namespace hmknf;

TEST_CASE("closeness compares diffs predicate by predicate") {
    auto w = testing::makeWorld(2, 2);
    AtomId p0 = w.atom(0, 0), p1 = w.atom(0, 1), q0 = w.atom(1, 0);
    std::vector<AtomId> scope = w.atoms;
    Interpretation base{scope, {}};
    Interpretation j{scope, {p0}};
    Interpretation k{scope, {p0, p1}};
    Interpretation l{scope, {q0}};
    CHECK(diff(w.preds[0], base, k, *w.sig) == std::vector<AtomId>{p0, p1});
    CHECK(diff(w.preds[1], base, k, *w.sig).empty());
    CHECK(atLeastAsClose(base, j, k, *w.sig));
    CHECK_FALSE(atLeastAsClose(base, k, j, *w.sig));
    CHECK_FALSE(atLeastAsClose(base, j, l, *w.sig));
    CHECK_FALSE(atLeastAsClose(base, l, j, *w.sig));
    auto best = pointUpdate(base, {j, k, l}, *w.sig);
    CHECK(best == std::vector<Interpretation>{j, l});
}

TEST_CASE("mask point update keeps the minimal diffs") {
    CHECK(pointUpdate(0b000, {0b011, 0b001, 0b110}) == std::vector<Mask>{0b001, 0b110});
    CHECK(pointUpdate(0b101, {0b101, 0b100}) == std::vector<Mask>{0b101});
}

TEST_CASE("inertia: the classical counterpart of a rule update") {
    // {q -> p, q} updated by {~q}: p survives by inertia.
    Theory first = {implies(atomF(1), atomF(0)), atomF(1)};
    Theory second = {neg(atomF(1))};
    ModelSet m = sequenceUpdateModel({first, second});
    CHECK(oracle::toExplicit(m, {0, 1}) == oracle::ExplicitSet{0b01});
}

TEST_CASE("an unsatisfiable theory empties the update") {
    CHECK_THROWS_AS(sequenceUpdateModel({Theory{atomF(0)}, Theory{atomF(1), neg(atomF(1))}}), Error);
    CHECK_THROWS_AS(allModels({conj({atomF(0), neg(atomF(0))})}), Error);
}

TEST_CASE("stored factors respect the component cap") {
    // A chain of equivalences ties 24 atoms into one factor with two parts.
    Theory t;
    for (AtomId a = 0; a + 1 < 24; ++a) t.push_back(iff(atomF(a), atomF(a + 1)));
    Limits tight;
    tight.maxComponentAtoms = 8;
    CHECK_THROWS_AS(allModels(t, tight), Error);
    Limits wide;
    wide.maxComponentAtoms = 24;
    auto m = allModels(t, wide);
    REQUIRE(m.components().size() == 1);
    CHECK(m.components()[0].parts.size() == 2);
}

TEST_CASE("factored update equals the exhaustive operator") {
    testing::Gen gen(77);
    for (int round = 0; round < 150; ++round) {
        auto w = testing::makeWorld(2 + gen.below(3), 1 + gen.below(2));
        Theory a = gen.theory(w.atoms, 3, 2);
        Theory b = gen.theory(w.atoms, 3, 2);
        auto ma = oracle::bruteFoModels(a, w.atoms);
        auto mb = oracle::bruteFoModels(b, w.atoms);
        if (ma.empty() || mb.empty()) continue;
        auto expected = oracle::bruteWinslett(ma, mb, w.atoms, *w.sig);
        CHECK(oracle::toExplicit(setUpdate(allModels(a), allModels(b)), w.atoms) == expected);
    }
}

TEST_CASE("three-step folds match the exhaustive fold") {
    testing::Gen gen(78);
    for (int round = 0; round < 150; ++round) {
        auto w = testing::makeWorld(3 + gen.below(4));
        std::vector<Theory> seq;
        for (int k = 0; k < 3; ++k) seq.push_back(gen.theory(w.atoms, 3, 2));
        auto expected = oracle::bruteWinslettFold(seq, w.atoms, *w.sig);
        if (expected.empty()) {
            CHECK_THROWS_AS(sequenceUpdateModel(seq), Error);
            continue;
        }
        auto actual = sequenceUpdateModel(seq);
        CHECK(oracle::toExplicit(actual, w.atoms) == expected);
        // Primacy: the newest theory holds throughout.
        for (const auto& f : seq.back()) CHECK(satisfiesSentence(actual, know(f)));
    }
}
