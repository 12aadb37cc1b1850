#include <doctest.h>

#include "hybridmknf/oracle.hpp"
#include "support/random_kb.hpp"

using namespace hmknf;
using oracle::ExplicitSet;

// Hand-checked values for the reference procedures themselves.

TEST_CASE("classical models") {
    CHECK(oracle::bruteFoModels({implies(atomF(0), atomF(1))}, {0, 1}) == ExplicitSet{0b00, 0b10, 0b11});
    CHECK(oracle::bruteFoModels({bot()}, {0}).empty());
    CHECK_THROWS_AS(oracle::bruteFoModels({}, std::vector<AtomId>(23)), Error);
}

TEST_CASE("MKNF models of small theories") {
    // K p: the single model is every interpretation with p.
    CHECK(oracle::bruteMknfModels(Theory{know(atomF(0))}, {0, 1}) ==
          std::vector<ExplicitSet>{{0b01, 0b11}});
    // not q -> K p, the rule p :- not q.
    CHECK(oracle::bruteMknfModels(Theory{implies(notD(atomF(1)), know(atomF(0)))}, {0, 1}) ==
          std::vector<ExplicitSet>{{0b01, 0b11}});
    // Even loop: two models.
    Theory loop = {implies(notD(atomF(1)), know(atomF(0))), implies(notD(atomF(0)), know(atomF(1)))};
    CHECK(oracle::bruteMknfModels(loop, {0, 1}) == std::vector<ExplicitSet>{{0b01, 0b11}, {0b10, 0b11}});
    // Odd loop: none.
    CHECK(oracle::bruteMknfModels(Theory{implies(notD(atomF(0)), know(atomF(0)))}, {0}).empty());
    // Empty theory: the set of all interpretations.
    CHECK(oracle::bruteMknfModels(Theory{}, {0}) == std::vector<ExplicitSet>{{0, 1}});
}

TEST_CASE("Winslett by per-predicate diffs") {
    auto w = testing::makeWorld(2, 2);
    // atoms: P0(c0), P0(c1), P1(c0), P1(c1) as bits 0..3.
    // From the empty interpretation, {P0(c0)} beats {P0(c0), P0(c1)} but not {P1(c0)}.
    ExplicitSet updated = oracle::bruteWinslett({0b0000}, {0b0001, 0b0011, 0b0100}, w.atoms, *w.sig);
    CHECK(updated == ExplicitSet{0b0001, 0b0100});
    // Inertia: from {q, p}, learning ~q keeps p.
    ExplicitSet kept = oracle::bruteWinslett({0b11}, {0b00, 0b01}, {0, 1}, *testing::makeWorld(2).sig);
    CHECK(kept == ExplicitSet{0b01});
}

TEST_CASE("stable and dynamic stable models") {
    Program p = {makeRule({0, false}, {{1, false}}), makeRule({1, false}, {})};
    CHECK(oracle::bruteStable(p, {0, 1}) == ExplicitSet{0b11});
    Dlp update = {p, {makeRule({1, true}, {})}};
    CHECK(oracle::bruteDynStable(update, {0, 1}) == ExplicitSet{0b00});
    CHECK(oracle::upSet(0b01, 2) == ExplicitSet{0b01, 0b11});
}

TEST_CASE("explicit conversion round trip") {
    std::vector<AtomId> atoms = {3, 4, 7};
    ExplicitSet set = {0b001, 0b011, 0b110};
    CHECK(oracle::toExplicit(oracle::fromExplicitSet(set, atoms), atoms) == set);
}
