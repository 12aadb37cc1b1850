#pragma once

#include <string>
#include <vector>

#include "hybridmknf/error.hpp"
#include "hybridmknf/kb.hpp"

namespace hmknf {

// Positions are diagnostics only and never affect document equality.
struct SourcePos {
    int line = 0;
    int column = 0;
    bool operator==(const SourcePos&) const { return true; }
};

struct DocConcept {
    Concept::Kind kind = Concept::Kind::Top;
    std::string name;   // Atomic: concept; Exists*: role
    std::string value;  // ExistsValue filler constant
    std::vector<DocConcept> kids;
    SourcePos pos;
    bool operator==(const DocConcept&) const = default;
};

struct DocAxiom {
    OntologyAxiom::Kind kind = OntologyAxiom::Kind::Subsumption;
    DocConcept lhs, rhs;
    std::string individual, second, role;
    SourcePos pos;
    bool operator==(const DocAxiom&) const = default;
};

struct DocTerm {
    bool variable = false;
    std::string text;  // constant names are stored unquoted
    bool operator==(const DocTerm&) const = default;
};

struct DocAtom {
    std::string pred;
    std::vector<DocTerm> args;
    SourcePos pos;
    bool operator==(const DocAtom&) const = default;
};

struct DocLiteral {
    DocAtom atom;
    bool negated = false;
    bool operator==(const DocLiteral&) const = default;
};

struct DocRule {
    DocLiteral head;
    std::vector<DocLiteral> body;
    SourcePos pos;
    bool operator==(const DocRule&) const = default;
};

struct DocSort {
    std::string name;
    SourcePos pos;
    bool operator==(const DocSort&) const = default;
};

struct DocConstants {
    std::vector<std::string> names;
    std::string sort;
    SourcePos pos;
    bool operator==(const DocConstants&) const = default;
};

struct DocPredicate {
    std::string name;
    std::vector<std::string> argSorts;
    SourcePos pos;
    bool operator==(const DocPredicate&) const = default;
};

struct KbDocument {
    std::vector<DocSort> sorts;
    std::vector<DocConstants> constants;
    std::vector<DocPredicate> predicates;
    std::vector<DocAxiom> axioms;
    std::vector<DocRule> rules;
    bool operator==(const KbDocument&) const = default;
};

// Throws SyntaxError with line and column.
KbDocument parseDocument(const std::string& text);
std::string printDocument(const KbDocument& doc);
KbDocument readDocument(const std::string& path);

// One signature for all documents; repeated declarations must agree.
SignaturePtr buildSignature(const std::vector<KbDocument>& docs);
// Resolves names and grounds the rules. Throws UndeclaredSymbol, SortMismatch,
// UnsortableVariable.
HybridKb toKb(const KbDocument& doc, const SignaturePtr& sig);
DynamicHybridKb toDynamicKb(const std::vector<KbDocument>& docs);

// `K a`, `not a`, objective connectives `~ & | ->`, parentheses, `top`,
// `bot`, or a ground rule `H :- B.` read through the rule translation.
Formula parseQuery(const std::string& text, const Signature& sig);

}  // namespace hmknf
