#include <doctest.h>

#include "hybridmknf/dynmknf.hpp"
#include "hybridmknf/oracle.hpp"
#include "hybridmknf/parser.hpp"
#include "support/random_kb.hpp"

using namespace hmknf;

namespace {

DynamicHybridKb dkbFrom(const std::vector<std::string>& texts) {
    std::vector<KbDocument> docs;
    for (const auto& t : texts) docs.push_back(parseDocument(t));
    return toDynamicKb(docs);
}

}  // namespace

TEST_CASE("basic kinds") {
    auto ontologyBased = dkbFrom({"pred a.\n*** O ***\ntop [= a.\n*** P ***\na.\n"});
    CHECK(classifyBasic(ontologyBased) == BasicKind::OntologyBased);
    auto programBased = dkbFrom({"pred a. pred b.\n*** P ***\na :- not b.\n", "*** P ***\nb.\n"});
    CHECK(classifyBasic(programBased) == BasicKind::ProgramBased);
    auto neither = dkbFrom({"pred a. pred b.\n*** O ***\na [= b.\n*** P ***\na :- not b.\n"});
    CHECK(classifyBasic(neither) == BasicKind::NotBasic);
    CHECK(std::string(basicKindName(BasicKind::OntologyBased)) != basicKindName(BasicKind::ProgramBased));
}

TEST_CASE("a rule update withdraws derived knowledge") {
    auto dkb = dkbFrom({"pred p. pred q.\n*** P ***\np :- q.\nq.\n", "*** P ***\nnot q.\n"});
    auto models = dynamicMknfModels(dkb);
    REQUIRE(models.size() == 1);
    CHECK(entails(models[0], notD(atomF(dkb.sig->atomByName("p")))));
    CHECK(entails(models[0], notD(atomF(dkb.sig->atomByName("q")))));
}

TEST_CASE("a classical update keeps the consequence by inertia") {
    auto dkb = dkbFrom({"pred p. pred q.\n*** O ***\nq [= p.\ntop [= q.\n", "*** O ***\ntop [= ~q.\n"});
    auto models = dynamicMknfModels(dkb);
    REQUIRE(models.size() == 1);
    CHECK(entails(models[0], know(atomF(dkb.sig->atomByName("p")))));
    CHECK(entails(models[0], know(neg(atomF(dkb.sig->atomByName("q"))))));
}

TEST_CASE("update-enabling plans and their reports") {
    auto dkb = dkbFrom({"pred a. pred b.\n*** O ***\ntop [= a.\n*** P ***\nb :- not a.\n",
                        "*** P ***\nnot b :- a.\n"});
    auto a = *dkb.sig->findPredicate("a");
    auto b = *dkb.sig->findPredicate("b");
    LayerPlan good{{{a}, {a, b}}, {}};
    auto report = isUpdateEnabling(good, dkb);
    CHECK(report.enabling);
    REQUIRE(report.layers.size() == 2);
    CHECK(report.layers[0].kind == LayerKind::Ontology);
    CHECK(report.layers[1].kind == LayerKind::Program);

    LayerPlan single{{{a, b}}, {}};
    auto bad = isUpdateEnabling(single, dkb);
    CHECK_FALSE(bad.enabling);
    CHECK_FALSE(bad.layers[0].witness.empty());
    CHECK_THROWS_AS(dynamicMknfModels(dkb, single), Error);

    LayerPlan invalid{{{b}, {a, b}}, {}};
    CHECK_FALSE(isUpdateEnabling(invalid, dkb).planError.empty());

    auto models = dynamicMknfModels(dkb, good);
    REQUIRE(models.size() == 1);
    CHECK(entails(models[0], know(atomF(dkb.sig->atomByName("a")))));
    CHECK(entails(models[0], notD(atomF(dkb.sig->atomByName("b")))));
}

TEST_CASE("a dkb without a reducible layering is not updatable") {
    auto dkb = dkbFrom({"pred a. pred b.\n*** O ***\na [= b.\n*** P ***\nb :- not a.\n"});
    try {
        suggestPlan(dkb);
        FAIL("expected NotUpdatable");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NotUpdatable);
    }
}

TEST_CASE("basic program sequences match dynamic stable models") {
    testing::Gen gen(123);
    for (int round = 0; round < 200; ++round) {
        auto w = testing::makeWorld(1 + gen.below(6));
        DynamicHybridKb dkb{w.sig, {}};
        Dlp dlp;
        std::size_t layers = 1 + gen.below(3);
        for (std::size_t l = 0; l < layers; ++l) {
            Program p = gen.program(w.atoms, 4, 0.3, 2);
            dlp.push_back(p);
            dkb.kbs.push_back({w.sig, {}, p});
        }
        std::vector<oracle::ExplicitSet> expected;
        for (Mask m : oracle::bruteDynStable(dlp, w.atoms)) expected.push_back(oracle::upSet(m, w.atoms.size()));
        std::sort(expected.begin(), expected.end());
        std::vector<oracle::ExplicitSet> actual;
        for (const auto& m : dynamicMknfBasic(dkb)) actual.push_back(oracle::toExplicit(m, w.atoms));
        std::sort(actual.begin(), actual.end());
        CHECK(actual == expected);
    }
}

TEST_CASE("layered updates do not depend on the chosen plan") {
    auto w = testing::makeWorld(3);
    testing::Gen gen(321);
    int compared = 0;
    for (int round = 0; round < 400 && compared < 40; ++round) {
        DynamicHybridKb dkb{w.sig, {gen.hybridKb(w, 2, 2), gen.hybridKb(w, 1, 2)}};
        std::vector<LayerPlan> plans;
        testing::forEachChain(w.preds, [&](const std::vector<PredSet>& chain) {
            LayerPlan plan{chain, {}};
            if (isUpdateEnabling(plan, dkb).enabling) plans.push_back(plan);
        });
        if (plans.size() < 2) continue;
        ++compared;
        auto reference = dynamicMknfModels(dkb, plans[0]);
        for (std::size_t k = 1; k < plans.size(); ++k) {
            auto other = dynamicMknfModels(dkb, plans[k]);
            REQUIRE(other.size() == reference.size());
            for (const auto& m : other)
                CHECK(std::any_of(reference.begin(), reference.end(),
                                  [&](const ModelSet& r) { return sameDenotation(m, r); }));
        }
    }
    CHECK(compared > 10);
}
