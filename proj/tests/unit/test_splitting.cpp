#include <doctest.h>

#include "hybridmknf/oracle.hpp"
#include "hybridmknf/parser.hpp"
#include "hybridmknf/splitting.hpp"
#include "support/random_kb.hpp"

using namespace hmknf;

namespace {

HybridKb kbFrom(const std::string& text) {
    auto doc = parseDocument(text);
    return toKb(doc, buildSignature({doc}));
}

PredSet named(const HybridKb& kb, std::initializer_list<const char*> names) {
    PredSet out;
    for (const char* n : names) out.insert(*kb.sig->findPredicate(n));
    return out;
}

const char* kLayered = R"(
pred a. pred b. pred c. pred d.
*** O ***
a [= b.
top [= a.
*** P ***
c :- b, not d.
d :- not c.
)";

}  // namespace

TEST_CASE("splitting set conditions") {
    HybridKb kb = kbFrom(kLayered);
    CHECK(isSplittingSet(named(kb, {"a", "b"}), kb).ok());
    CHECK(isSplittingSet(named(kb, {}), kb).ok());
    // An axiom straddling the boundary.
    auto straddle = isSplittingSet(named(kb, {"a"}), kb);
    REQUIRE_FALSE(straddle.ok());
    CHECK(straddle.violations[0].inside == *kb.sig->findPredicate("a"));
    CHECK(straddle.violations[0].outside == *kb.sig->findPredicate("b"));
    // A rule head inside U with a body predicate outside.
    CHECK_FALSE(isSplittingSet(named(kb, {"a", "b", "c"}), kb).ok());
    CHECK(isSplittingSet(named(kb, {"a", "b", "c", "d"}), kb).ok());
}

TEST_CASE("bottom, top and reduct") {
    HybridKb kb = kbFrom(kLayered);
    PredSet u = named(kb, {"a", "b"});
    HybridKb lower = bottom(kb, u);
    HybridKb upper = top(kb, u);
    CHECK(lower.ontology.size() == 2);
    CHECK(lower.program.empty());
    CHECK(upper.ontology.empty());
    CHECK(upper.program.size() == 2);

    AtomId b = kb.sig->atomByName("b");
    HybridKb kept = reduct(kb, u, fromExplicit({b}, {1}));
    REQUIRE(kept.program.size() == 2);
    for (const auto& r : kept.program)
        for (const auto& l : r.body) CHECK(kb.sig->predicateOf(l.atom) != *kb.sig->findPredicate("b"));
    HybridKb dropped = reduct(kb, u, ModelSet::full());
    CHECK(dropped.program.size() == 1);
}

TEST_CASE("layer kinds of a plan") {
    HybridKb kb = kbFrom(kLayered);
    DynamicHybridKb dkb{kb.sig, {kb}};
    LayerPlan plan{{named(kb, {"a", "b"}), named(kb, {"a", "b", "c", "d"})}, {}};
    plan = classifyLayers(plan, dkb);
    CHECK(plan.kinds == std::vector<LayerKind>{LayerKind::Ontology, LayerKind::Program});
    CHECK(layerPrefix(plan, 1) == named(kb, {"a", "b"}));
    CHECK(layerSlice(kb, plan, 1).program.size() == 2);

    LayerPlan trivial = classifyLayers(trivialPlan(dkb), dkb);
    std::string witness;
    CHECK(reducibility(kb, {}, &witness) == LayerKind::Mixed);
    CHECK_FALSE(witness.empty());
    CHECK(trivial.kinds == std::vector<LayerKind>{LayerKind::Mixed});

    LayerPlan notMonotone{{named(kb, {"a", "b", "c", "d"}), named(kb, {"a", "b"})}, {}};
    CHECK_THROWS_AS(validatePlan(notMonotone, dkb), Error);
    LayerPlan notCovering{{named(kb, {"a", "b"})}, {}};
    CHECK_THROWS_AS(validatePlan(notCovering, dkb), Error);
}

TEST_CASE("suggested plans are valid and solve the kb") {
    HybridKb kb = kbFrom(kLayered);
    LayerPlan plan = suggestPlan(kb);
    DynamicHybridKb dkb{kb.sig, {kb}};
    CHECK_NOTHROW(validatePlan(plan, dkb));
    auto solutions = staticSolutions(kb, plan);
    // b is known, so c and d form an even loop: two models.
    CHECK(solutions.size() == 2);
    std::vector<AtomId> atoms = {0, 1, 2, 3};
    auto expected = oracle::bruteMknfModels(kb, atoms);
    std::vector<oracle::ExplicitSet> actual;
    for (const auto& s : solutions) actual.push_back(oracle::toExplicit(s.combined, atoms));
    std::sort(actual.begin(), actual.end());
    CHECK(actual == expected);
}

TEST_CASE("a mixed layer needs a solver") {
    HybridKb kb = kbFrom("pred a. pred b.\n*** O ***\na [= b.\n*** P ***\na :- not b.\n");
    DynamicHybridKb dkb{kb.sig, {kb}};
    try {
        staticSolutions(kb, trivialPlan(dkb));
        FAIL("expected MixedLayer");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MixedLayer);
    }
    auto solutions = staticSolutions(kb, trivialPlan(dkb), {}, oracle::mixedLayerSolver());
    auto expected = oracle::bruteMknfModels(kb, {0, 1});
    CHECK(solutions.size() == expected.size());
}

TEST_CASE("every valid plan yields the MKNF models") {
    auto w = testing::makeWorld(3);
    testing::Gen gen(99);
    for (int round = 0; round < 120; ++round) {
        HybridKb kb = gen.hybridKb(w, 2, 3);
        DynamicHybridKb dkb{w.sig, {kb}};
        auto expected = oracle::bruteMknfModels(kb, w.atoms);
        testing::forEachChain(w.preds, [&](const std::vector<PredSet>& chain) {
            LayerPlan plan{chain, {}};
            try {
                validatePlan(plan, dkb);
            } catch (const Error&) {
                return;
            }
            std::vector<oracle::ExplicitSet> actual;
            for (const auto& s : staticSolutions(kb, plan, {}, oracle::mixedLayerSolver()))
                actual.push_back(oracle::toExplicit(s.combined, w.atoms));
            std::sort(actual.begin(), actual.end());
            actual.erase(std::unique(actual.begin(), actual.end()), actual.end());
            CHECK(actual == expected);
        });
    }
}
