#include <doctest.h>

#include "hybridmknf/kb.hpp"
#include "hybridmknf/oracle.hpp"
#include "hybridmknf/signature.hpp"

using namespace hmknf;

namespace {

struct Shop {
    SignaturePtr sig;
    SortId item, person;
    ConstId apple, pear, ann;
    PredId fruit, cheap, buys, likes;
};

Shop makeShop() {
    Signature::Builder b;
    Shop s{};
    s.item = b.addSort("item");
    s.person = b.addSort("person");
    s.apple = b.addConstant("apple", s.item);
    s.pear = b.addConstant("pear", s.item);
    s.ann = b.addConstant("ann", s.person);
    s.fruit = b.addPredicate("Fruit", {s.item});
    s.cheap = b.addPredicate("Cheap", {s.item});
    s.buys = b.addPredicate("Buys", {s.person, s.item});
    s.likes = b.addPredicate("Likes", {s.person});
    s.sig = b.build();
    return s;
}

bool holdsUnder(const Formula& f, const std::vector<AtomId>& trueAtoms) {
    return evalObjective(f, [&](AtomId a) { return std::binary_search(trueAtoms.begin(), trueAtoms.end(), a); });
}

}  // namespace

TEST_CASE("signature indexes exactly the well-sorted ground atoms") {
    Shop s = makeShop();
    CHECK(s.sig->atomCount() == 2 + 2 + 2 + 1);
    AtomId a = s.sig->atom(s.buys, {s.ann, s.pear});
    CHECK(s.sig->predicateOf(a) == s.buys);
    CHECK(s.sig->argumentsOf(a) == std::vector<ConstId>{s.ann, s.pear});
    CHECK(s.sig->atomName(a) == "Buys(ann,pear)");
    CHECK(s.sig->atomByName("Buys(ann,pear)") == a);
    CHECK(s.sig->atomsOf(s.fruit).size() == 2);
    CHECK_THROWS_AS(s.sig->atom(s.buys, {s.pear, s.ann}), Error);
    CHECK_THROWS_AS(s.sig->atomByName("Sells(ann)"), Error);
}

TEST_CASE("redeclaring a constant with another sort is a sort mismatch") {
    Signature::Builder b;
    auto x = b.addSort("x");
    auto y = b.addSort("y");
    b.addConstant("k", x);
    CHECK(b.addConstant("k", x) == *b.findConstant("k"));
    try {
        b.addConstant("k", y);
        FAIL("expected SortMismatch");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SortMismatch);
    }
}

TEST_CASE("subsumption grounds over the concept's sort") {
    Shop s = makeShop();
    auto ax = OntologyAxiom::subsumption(Concept::atomic(s.cheap), Concept::atomic(s.fruit));
    Formula f = tau(ax, *s.sig);
    AtomId cheapApple = s.sig->atom(s.cheap, {s.apple}), fruitApple = s.sig->atom(s.fruit, {s.apple});
    AtomId cheapPear = s.sig->atom(s.cheap, {s.pear});
    std::vector<AtomId> ok = {cheapApple, fruitApple};
    std::sort(ok.begin(), ok.end());
    CHECK(holdsUnder(f, ok));
    CHECK_FALSE(holdsUnder(f, {cheapPear}));
}

TEST_CASE("existential restriction and nominal fillers") {
    Shop s = makeShop();
    // Likes == exists Buys.Fruit
    auto eq = OntologyAxiom::equivalence(Concept::atomic(s.likes),
                                         Concept::exists(s.buys, Concept::atomic(s.fruit)));
    Formula f = tau(eq, *s.sig);
    AtomId likes = s.sig->atom(s.likes, {s.ann});
    AtomId buysPear = s.sig->atom(s.buys, {s.ann, s.pear});
    AtomId fruitPear = s.sig->atom(s.fruit, {s.pear});
    std::vector<AtomId> model = {likes, buysPear, fruitPear};
    std::sort(model.begin(), model.end());
    CHECK(holdsUnder(f, model));
    std::vector<AtomId> missing = {buysPear, fruitPear};
    std::sort(missing.begin(), missing.end());
    CHECK_FALSE(holdsUnder(f, missing));

    Formula g = tau(OntologyAxiom::conceptAssertion(s.ann, Concept::existsValue(s.buys, s.apple)), *s.sig);
    CHECK(holdsUnder(g, {s.sig->atom(s.buys, {s.ann, s.apple})}));
    CHECK_FALSE(holdsUnder(g, {buysPear}));
}

TEST_CASE("assertion on an individual of the wrong sort is rejected") {
    Shop s = makeShop();
    auto bad = OntologyAxiom::conceptAssertion(s.ann, Concept::atomic(s.fruit));
    CHECK_THROWS_AS(tau(bad, *s.sig), Error);
}

TEST_CASE("grounding binds variables by their body sort") {
    Shop s = makeShop();
    // Likes(P) :- Buys(P, X), not Cheap(X).
    RuleTemplate r;
    r.head = {{s.likes, {{true, "P", 0}}}, false};
    r.body = {{{s.buys, {{true, "P", 0}, {true, "X", 0}}}, false}, {{s.cheap, {{true, "X", 0}}}, true}};
    Program p = ground({r}, *s.sig);
    REQUIRE(p.size() == 2);
    for (const auto& g : p) {
        CHECK(g.head.atom == s.sig->atom(s.likes, {s.ann}));
        CHECK(g.body.size() == 2);
        CHECK(g.isPositive());
    }

    RuleTemplate unsafe;
    unsafe.head = {{s.fruit, {{true, "Y", 0}}}, false};
    try {
        ground({unsafe}, *s.sig);
        FAIL("expected UnsortableVariable");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnsortableVariable);
    }
}

TEST_CASE("rule translation and positivity") {
    Rule withNotHead = makeRule({1, true}, {{2, false}});
    CHECK_FALSE(withNotHead.isPositive());
    Rule withNotBody = makeRule({1, false}, {{2, true}, {2, true}});
    CHECK(withNotBody.isPositive());
    CHECK(withNotBody.body.size() == 1);

    // K 2 -> not 1 only needs some interpretation without 1, so the model
    // knows 2 and leaves 1 open.
    std::vector<AtomId> atoms = {1, 2};
    auto models = oracle::bruteMknfModels(Theory{pi(withNotHead), know(atomF(2))}, atoms);
    REQUIRE(models.size() == 1);
    CHECK(models[0] == oracle::ExplicitSet{0b10, 0b11});
}

TEST_CASE("predicates of items") {
    Shop s = makeShop();
    auto ax = OntologyAxiom::subsumption(Concept::atomic(s.likes), Concept::exists(s.buys, Concept::topC()));
    CHECK(predsOf(ax) == PredSet{s.likes, s.buys});
    Rule r = makeRule({s.sig->atom(s.likes, {s.ann}), false}, {{s.sig->atom(s.cheap, {s.pear}), true}});
    CHECK(predsOf(r, *s.sig) == PredSet{s.likes, s.cheap});
    HybridKb kb{s.sig, {ax}, {r}};
    CHECK(predsOf(kb) == PredSet{s.likes, s.buys, s.cheap});
}
