#include <doctest.h>

#include <fstream>
#include <functional>
#include <sstream>

#include "hybridmknf/parser.hpp"

using namespace hmknf;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream in(std::string(HMKNF_CORPUS_DIR) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ErrorKind kindOf(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::SyntaxError;
}

}  // namespace

TEST_CASE("axioms, rules and negation absorption") {
    auto doc = parseDocument(
        "*** O ***\nCherryTomato [= Tomato.\n*** P ***\n"
        "AdmissibleImporter(I) :- not SuspectedBadGuy(I).\np :- not not p.\n");
    REQUIRE(doc.axioms.size() == 1);
    CHECK(doc.axioms[0].kind == OntologyAxiom::Kind::Subsumption);
    CHECK(doc.axioms[0].lhs.name == "CherryTomato");
    CHECK(doc.axioms[0].rhs.name == "Tomato");
    REQUIRE(doc.rules.size() == 2);
    CHECK(doc.rules[0].body.size() == 1);
    CHECK(doc.rules[0].body[0].negated);
    CHECK(doc.rules[0].body[0].atom.args[0].variable);
    CHECK(doc.rules[1].head.atom.pred == "p");
    REQUIRE(doc.rules[1].body.size() == 1);
    CHECK_FALSE(doc.rules[1].body[0].negated);
}

TEST_CASE("both fact forms") {
    auto doc = parseDocument("*** P ***\nSuspectedBadGuy(i1).\nq :- .\n");
    REQUIRE(doc.rules.size() == 2);
    CHECK(doc.rules[0].body.empty());
    CHECK(doc.rules[1].body.empty());
}

TEST_CASE("print then parse is the identity on the corpus") {
    for (const char* name : {"cargo.kb", "cargo_update.kb", "support.kb", "support_update.kb", "inertia.kb",
                             "inertia_update.kb", "empty.kb"}) {
        CAPTURE(name);
        auto doc = parseDocument(slurp(name));
        auto printed = printDocument(doc);
        CHECK(parseDocument(printed) == doc);
        CHECK(printDocument(parseDocument(printed)) == printed);
    }
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parseDocument("pred p.\n*** P ***\np :- q\n");
        FAIL("expected SyntaxError");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::SyntaxError);
        CHECK(std::string(e.what()).find("4") != std::string::npos);
    }
    CHECK(kindOf([] { parseDocument("*** O ***\nA [= .\n"); }) == ErrorKind::SyntaxError);
}

TEST_CASE("resolution errors") {
    auto undeclared = parseDocument("pred p.\n*** P ***\np :- q.\n");
    CHECK(kindOf([&] { toKb(undeclared, buildSignature({undeclared})); }) == ErrorKind::UndeclaredSymbol);
    auto wrongSort = parseDocument("sort a, b.\nconst x : a.\npred P(b).\n*** P ***\nP(x).\n");
    CHECK(kindOf([&] { toKb(wrongSort, buildSignature({wrongSort})); }) == ErrorKind::SortMismatch);
    auto unsafe = parseDocument("sort a.\nconst x : a.\npred P(a).\n*** P ***\nP(X).\n");
    CHECK(kindOf([&] { toKb(unsafe, buildSignature({unsafe})); }) == ErrorKind::UnsortableVariable);
}

TEST_CASE("grounding the corpus") {
    auto docs = std::vector<KbDocument>{parseDocument(slurp("cargo.kb")), parseDocument(slurp("cargo_update.kb"))};
    auto dkb = toDynamicKb(docs);
    REQUIRE(dkb.kbs.size() == 2);
    CHECK(dkb.sig->predicateCount() == 30);
    // The update repeats the 16 terminological axioms and adds two assertions.
    CHECK(dkb.kbs[1].ontology.size() == 18);
    // One rule per tomato commodity plus one per shipment-producer pair.
    CHECK(dkb.kbs[1].program.size() == 3 + 3 * 2);
}

TEST_CASE("queries") {
    auto doc = parseDocument("sort s.\nconst a, b : s.\npred P(s). pred Q(s, s).\n");
    auto sig = buildSignature({doc});
    AtomId pa = sig->atomByName("P(a)");
    Formula k = parseQuery("K P(a)", *sig);
    CHECK(k->op == Op::Know);
    CHECK(k->kids[0]->atom == pa);
    Formula n = parseQuery("not (P(a) & ~Q(a,b))", *sig);
    CHECK(n->op == Op::NotDefault);
    CHECK(parseQuery("K top", *sig)->op == Op::True);
    Formula rule = parseQuery("P(a) :- not P(b).", *sig);
    CHECK(rule->op == Op::Implies);
    CHECK(kindOf([&] { parseQuery("K R(a)", *sig); }) == ErrorKind::UndeclaredSymbol);
    CHECK(kindOf([&] { parseQuery("K (P(a)", *sig); }) == ErrorKind::SyntaxError);
}
