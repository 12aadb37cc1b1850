#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "hybridmknf/sentence.hpp"
#include "hybridmknf/signature.hpp"

namespace hmknf {

struct Concept;
using ConceptPtr = std::shared_ptr<const Concept>;

struct Concept {
    enum class Kind { Atomic, Top, Bottom, Neg, And, Exists, ExistsValue };
    Kind kind;
    PredId name = 0;        // Atomic: unary predicate; Exists*: binary role
    ConstId value = 0;      // ExistsValue filler
    std::vector<ConceptPtr> kids;  // Neg: 1, And: n, Exists: filler

    static ConceptPtr atomic(PredId p);
    static ConceptPtr topC();
    static ConceptPtr bottomC();
    static ConceptPtr negC(ConceptPtr c);
    static ConceptPtr andC(std::vector<ConceptPtr> cs);
    static ConceptPtr exists(PredId role, ConceptPtr filler);
    static ConceptPtr existsValue(PredId role, ConstId value);
};

struct OntologyAxiom {
    enum class Kind { Subsumption, Equivalence, ConceptAssertion, RoleAssertion };
    Kind kind;
    ConceptPtr lhs, rhs;  // Subsumption/Equivalence: both; ConceptAssertion: lhs
    ConstId individual = 0, second = 0;
    PredId role = 0;

    static OntologyAxiom subsumption(ConceptPtr sub, ConceptPtr super);
    static OntologyAxiom equivalence(ConceptPtr a, ConceptPtr b);
    static OntologyAxiom conceptAssertion(ConstId a, ConceptPtr c);
    static OntologyAxiom roleAssertion(ConstId a, ConstId b, PredId role);
};

struct Literal {
    AtomId atom;
    bool negated = false;

    Literal complement() const { return {atom, !negated}; }
    auto operator<=>(const Literal&) const = default;
};

// Ground rule; body sorted and duplicate-free.
struct Rule {
    Literal head;
    std::vector<Literal> body;

    bool isFact() const { return body.empty(); }
    bool isPositive() const;
    auto operator<=>(const Rule&) const = default;
};

Rule makeRule(Literal head, std::vector<Literal> body);

using Program = std::vector<Rule>;

struct HybridKb {
    SignaturePtr sig;
    std::vector<OntologyAxiom> ontology;
    Program program;
};

struct DynamicHybridKb {
    SignaturePtr sig;
    std::vector<HybridKb> kbs;
};

// Non-ground rule surface: arguments are either constants or sorted variables.
struct Term {
    bool isVariable = false;
    std::string variable;
    ConstId constant = 0;
};

struct AtomTemplate {
    PredId pred;
    std::vector<Term> args;
};

struct LiteralTemplate {
    AtomTemplate atom;
    bool negated = false;
};

struct RuleTemplate {
    LiteralTemplate head;
    std::vector<LiteralTemplate> body;
};

// All well-sorted ground instances; throws UnsortableVariable / SortMismatch.
Program ground(const std::vector<RuleTemplate>& rules, const Signature& sig);

// Ground first-order translation: one objective formula per axiom.
Formula tau(const OntologyAxiom& axiom, const Signature& sig);
Theory tau(const std::vector<OntologyAxiom>& ontology, const Signature& sig);

Formula pi(const Rule& rule);
Theory pi(const HybridKb& kb);

PredSet predsOf(const OntologyAxiom& axiom);
PredSet predsOf(const Rule& rule, const Signature& sig);
PredSet predsOf(const Literal& lit, const Signature& sig);
PredSet predsOf(const HybridKb& kb);

std::string toString(const Concept& c, const Signature& sig);
std::string toString(const OntologyAxiom& axiom, const Signature& sig);
std::string toString(const Literal& lit, const Signature& sig);
std::string toString(const Rule& rule, const Signature& sig);

}  // namespace hmknf
