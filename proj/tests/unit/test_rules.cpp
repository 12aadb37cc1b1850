#include <doctest.h>

#include <numeric>

#include "hybridmknf/oracle.hpp"
#include "hybridmknf/rules.hpp"
#include "support/random_kb.hpp"

using namespace hmknf;

namespace {

Literal pos(AtomId a) { return {a, false}; }
Literal negl(AtomId a) { return {a, true}; }

}  // namespace

TEST_CASE("least literal model treats default literals as atoms") {
    Program p = {makeRule(pos(0), {}), makeRule(negl(1), {pos(0)}), makeRule(pos(2), {negl(1)}),
                 makeRule(pos(3), {pos(4)})};
    LiteralModel m = leastModel(p);
    CHECK(m.positive == std::vector<AtomId>{0, 2});
    CHECK(m.defaults == std::vector<AtomId>{1});
}

TEST_CASE("a newer conflicting rule with a true body rejects the older one") {
    // <{p :- q. q.}, {not q.}>
    Dlp dlp = {{makeRule(pos(0), {pos(1)}), makeRule(pos(1), {})}, {makeRule(negl(1), {})}};
    auto rej = rejected(dlp, {});
    REQUIRE(rej.size() == 1);
    CHECK(rej[0].first == 0);
    CHECK(rej[0].second == makeRule(pos(1), {}));
    CHECK(conflicts(makeRule(pos(1), {}), makeRule(negl(1), {})));
    CHECK_FALSE(conflicts(makeRule(pos(1), {}), makeRule(pos(1), {pos(0)})));

    auto def = defaults(dlp, {}, {0, 1});
    CHECK(def == std::vector<Literal>{negl(0)});
    CHECK(isDynamicStableModel(dlp, {}, {0, 1}));
    CHECK_FALSE(isDynamicStableModel(dlp, {0, 1}, {0, 1}));
    CHECK(dynamicStableModels(dlp, {0, 1}) == std::vector<std::vector<AtomId>>{{}});
}

TEST_CASE("rejection also works within one layer") {
    // p.  not p :- not q.  Within one program the two rules reject each other
    // when q is false, leaving no dynamic stable model with p.
    Dlp dlp = {{makeRule(pos(0), {}), makeRule(negl(0), {negl(1)})}};
    std::vector<AtomId> scope = {0, 1};
    auto brute = oracle::bruteDynStable(dlp, scope);
    std::vector<std::vector<AtomId>> expected;
    for (Mask m : brute) expected.push_back(maskToAtoms(m, scope));
    CHECK(dynamicStableModels(dlp, scope) == expected);
}

TEST_CASE("stable models of even and odd loops") {
    Program even = {makeRule(pos(0), {negl(1)}), makeRule(pos(1), {negl(0)})};
    CHECK(stableModels(even, {0, 1}) == std::vector<std::vector<AtomId>>{{0}, {1}});
    Program odd = {makeRule(pos(0), {negl(0)})};
    CHECK(stableModels(odd, {0}).empty());
    CHECK(isStableModel(even, {1}, {0, 1}));
    CHECK_FALSE(isStableModel(even, {0, 1}, {0, 1}));
}

TEST_CASE("classical satisfaction reads not as negation") {
    Rule r = makeRule(negl(0), {pos(1)});
    CHECK(satisfiesClassically(r, {}));
    CHECK(satisfiesClassically(r, {1}));
    CHECK_FALSE(satisfiesClassically(r, {0, 1}));
}

TEST_CASE("dynamic stable models agree with the exhaustive reference") {
    testing::Gen gen(21);
    for (int round = 0; round < 300; ++round) {
        std::size_t width = 1 + gen.below(7);
        std::vector<AtomId> atoms(width);
        std::iota(atoms.begin(), atoms.end(), AtomId{0});
        Dlp dlp;
        std::size_t layers = 1 + gen.below(3);
        for (std::size_t l = 0; l < layers; ++l) dlp.push_back(gen.program(atoms, 4, 0.3, 2));
        std::vector<std::vector<AtomId>> expected;
        for (Mask m : oracle::bruteDynStable(dlp, atoms)) expected.push_back(maskToAtoms(m, atoms));
        auto actual = dynamicStableModels(dlp, atoms);
        std::sort(actual.begin(), actual.end());
        std::sort(expected.begin(), expected.end());
        CHECK(actual == expected);
        for (const auto& m : actual) {
            // Every model satisfies the newest program classically.
            for (const auto& r : dlp.back()) CHECK(satisfiesClassically(r, m));
        }
    }
}
