#include "hybridmknf/kb.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>

#include "hybridmknf/error.hpp"

namespace hmknf {

namespace {

ConceptPtr makeConcept(Concept c) { return std::make_shared<const Concept>(std::move(c)); }

std::optional<SortId> mergeSort(std::optional<SortId> a, std::optional<SortId> b, const Signature& sig) {
    if (!a) return b;
    if (!b) return a;
    if (*a != *b)
        throw Error(ErrorKind::SortMismatch,
                    "concept mixes sorts '" + sig.sort(*a).name + "' and '" + sig.sort(*b).name + "'");
    return a;
}

const PredDecl& checkedPred(PredId p, std::size_t arity, const Signature& sig) {
    const auto& decl = sig.predicate(p);
    if (decl.argSorts.size() != arity)
        throw Error(ErrorKind::SortMismatch, "'" + decl.name + "' used with arity " + std::to_string(arity));
    return decl;
}

// Sort of the individuals a concept describes; nullopt when unconstrained.
std::optional<SortId> conceptSort(const Concept& c, const Signature& sig) {
    switch (c.kind) {
        case Concept::Kind::Atomic: {
            const auto& decl = sig.predicate(c.name);
            if (decl.argSorts.empty()) return std::nullopt;
            return checkedPred(c.name, 1, sig).argSorts[0];
        }
        case Concept::Kind::Top:
        case Concept::Kind::Bottom: return std::nullopt;
        case Concept::Kind::Neg:
        case Concept::Kind::And: {
            std::optional<SortId> s;
            for (const auto& k : c.kids) s = mergeSort(s, conceptSort(*k, sig), sig);
            return s;
        }
        case Concept::Kind::Exists:
        case Concept::Kind::ExistsValue: return checkedPred(c.name, 2, sig).argSorts[0];
    }
    return std::nullopt;
}

Formula translate(const Concept& c, std::optional<ConstId> x, const Signature& sig) {
    switch (c.kind) {
        case Concept::Kind::Atomic: {
            const auto& decl = sig.predicate(c.name);
            if (decl.argSorts.empty()) return atomF(sig.atom(c.name, std::span<const ConstId>{}));
            if (!x) throw Error(ErrorKind::SortMismatch, "concept '" + decl.name + "' needs an individual");
            return atomF(sig.atom(c.name, {*x}));
        }
        case Concept::Kind::Top: return top();
        case Concept::Kind::Bottom: return bot();
        case Concept::Kind::Neg: return neg(translate(*c.kids[0], x, sig));
        case Concept::Kind::And: {
            std::vector<Formula> parts;
            for (const auto& k : c.kids) parts.push_back(translate(*k, x, sig));
            return conj(std::move(parts));
        }
        case Concept::Kind::Exists: {
            const auto& decl = checkedPred(c.name, 2, sig);
            if (!x) throw Error(ErrorKind::SortMismatch, "role '" + decl.name + "' needs an individual");
            auto fillerSort = conceptSort(*c.kids[0], sig);
            mergeSort(fillerSort, decl.argSorts[1], sig);
            std::vector<Formula> options;
            for (ConstId y : sig.sort(decl.argSorts[1]).members)
                options.push_back(conj({atomF(sig.atom(c.name, {*x, y})), translate(*c.kids[0], y, sig)}));
            return disj(std::move(options));
        }
        case Concept::Kind::ExistsValue: {
            const auto& decl = checkedPred(c.name, 2, sig);
            if (!x) throw Error(ErrorKind::SortMismatch, "role '" + decl.name + "' needs an individual");
            return atomF(sig.atom(c.name, {*x, c.value}));
        }
    }
    return top();
}

void collectPreds(const Concept& c, PredSet& out) {
    if (c.kind == Concept::Kind::Atomic || c.kind == Concept::Kind::Exists ||
        c.kind == Concept::Kind::ExistsValue)
        out.insert(c.name);
    for (const auto& k : c.kids) collectPreds(*k, out);
}

}  // namespace

ConceptPtr Concept::atomic(PredId p) { return makeConcept({Kind::Atomic, p, 0, {}}); }
ConceptPtr Concept::topC() { return makeConcept({Kind::Top, 0, 0, {}}); }
ConceptPtr Concept::bottomC() { return makeConcept({Kind::Bottom, 0, 0, {}}); }
ConceptPtr Concept::negC(ConceptPtr c) { return makeConcept({Kind::Neg, 0, 0, {std::move(c)}}); }
ConceptPtr Concept::andC(std::vector<ConceptPtr> cs) { return makeConcept({Kind::And, 0, 0, std::move(cs)}); }
ConceptPtr Concept::exists(PredId role, ConceptPtr filler) {
    return makeConcept({Kind::Exists, role, 0, {std::move(filler)}});
}
ConceptPtr Concept::existsValue(PredId role, ConstId value) {
    return makeConcept({Kind::ExistsValue, role, value, {}});
}

OntologyAxiom OntologyAxiom::subsumption(ConceptPtr sub, ConceptPtr super) {
    return {Kind::Subsumption, std::move(sub), std::move(super), 0, 0, 0};
}
OntologyAxiom OntologyAxiom::equivalence(ConceptPtr a, ConceptPtr b) {
    return {Kind::Equivalence, std::move(a), std::move(b), 0, 0, 0};
}
OntologyAxiom OntologyAxiom::conceptAssertion(ConstId a, ConceptPtr c) {
    return {Kind::ConceptAssertion, std::move(c), nullptr, a, 0, 0};
}
OntologyAxiom OntologyAxiom::roleAssertion(ConstId a, ConstId b, PredId role) {
    return {Kind::RoleAssertion, nullptr, nullptr, a, b, role};
}

bool Rule::isPositive() const { return !head.negated; }

Rule makeRule(Literal head, std::vector<Literal> body) {
    std::sort(body.begin(), body.end());
    body.erase(std::unique(body.begin(), body.end()), body.end());
    return {head, std::move(body)};
}

Formula tau(const OntologyAxiom& axiom, const Signature& sig) {
    using K = OntologyAxiom::Kind;
    switch (axiom.kind) {
        case K::Subsumption:
        case K::Equivalence: {
            auto sort = mergeSort(conceptSort(*axiom.lhs, sig), conceptSort(*axiom.rhs, sig), sig);
            auto instance = [&](std::optional<ConstId> x) {
                Formula l = translate(*axiom.lhs, x, sig), r = translate(*axiom.rhs, x, sig);
                return axiom.kind == K::Subsumption ? implies(l, r) : conj({implies(l, r), implies(r, l)});
            };
            if (!sort) return instance(std::nullopt);
            std::vector<Formula> instances;
            for (ConstId x : sig.sort(*sort).members) instances.push_back(instance(x));
            return conj(std::move(instances));
        }
        case K::ConceptAssertion: {
            auto sort = conceptSort(*axiom.lhs, sig);
            if (sort && *sort != sig.constant(axiom.individual).sort)
                throw Error(ErrorKind::SortMismatch, "individual '" + sig.constant(axiom.individual).name +
                                                         "' has the wrong sort for its concept");
            return translate(*axiom.lhs, axiom.individual, sig);
        }
        case K::RoleAssertion:
            checkedPred(axiom.role, 2, sig);
            return atomF(sig.atom(axiom.role, {axiom.individual, axiom.second}));
    }
    return top();
}

Theory tau(const std::vector<OntologyAxiom>& ontology, const Signature& sig) {
    Theory out;
    out.reserve(ontology.size());
    for (const auto& ax : ontology) out.push_back(tau(ax, sig));
    return out;
}

Program ground(const std::vector<RuleTemplate>& rules, const Signature& sig) {
    Program out;
    for (const auto& rule : rules) {
        std::vector<std::string> vars;
        std::map<std::string, SortId> varSort;
        auto noteVars = [&](const AtomTemplate& a, bool inBody) {
            const auto& decl = sig.predicate(a.pred);
            if (decl.argSorts.size() != a.args.size())
                throw Error(ErrorKind::SortMismatch, "'" + decl.name + "' used with arity " +
                                                         std::to_string(a.args.size()));
            for (std::size_t i = 0; i < a.args.size(); ++i) {
                const auto& t = a.args[i];
                if (!t.isVariable) continue;
                auto it = varSort.find(t.variable);
                if (it == varSort.end()) {
                    if (!inBody)
                        throw Error(ErrorKind::UnsortableVariable,
                                    "variable '" + t.variable + "' does not occur in the rule body");
                    varSort[t.variable] = decl.argSorts[i];
                    vars.push_back(t.variable);
                } else if (it->second != decl.argSorts[i]) {
                    throw Error(ErrorKind::SortMismatch, "variable '" + t.variable + "' used with two sorts");
                }
            }
        };
        for (const auto& l : rule.body) noteVars(l.atom, true);
        noteVars(rule.head.atom, false);

        std::map<std::string, ConstId> binding;
        auto groundAtom = [&](const AtomTemplate& a) {
            std::vector<ConstId> args;
            for (const auto& t : a.args) args.push_back(t.isVariable ? binding.at(t.variable) : t.constant);
            return sig.atom(a.pred, args);
        };
        std::function<void(std::size_t)> assign = [&](std::size_t k) {
            if (k == vars.size()) {
                std::vector<Literal> body;
                for (const auto& l : rule.body) body.push_back({groundAtom(l.atom), l.negated});
                out.push_back(makeRule({groundAtom(rule.head.atom), rule.head.negated}, std::move(body)));
                return;
            }
            for (ConstId c : sig.sort(varSort[vars[k]]).members) {
                binding[vars[k]] = c;
                assign(k + 1);
            }
        };
        assign(0);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Formula pi(const Rule& rule) {
    auto lit = [](const Literal& l) { return l.negated ? notD(atomF(l.atom)) : know(atomF(l.atom)); };
    std::vector<Formula> body;
    for (const auto& l : rule.body) body.push_back(lit(l));
    return implies(conj(std::move(body)), lit(rule.head));
}

Theory pi(const HybridKb& kb) {
    Theory out;
    for (const auto& ax : kb.ontology) out.push_back(know(tau(ax, *kb.sig)));
    for (const auto& r : kb.program) out.push_back(pi(r));
    return out;
}

PredSet predsOf(const OntologyAxiom& axiom) {
    PredSet out;
    if (axiom.lhs) collectPreds(*axiom.lhs, out);
    if (axiom.rhs) collectPreds(*axiom.rhs, out);
    if (axiom.kind == OntologyAxiom::Kind::RoleAssertion) out.insert(axiom.role);
    return out;
}

PredSet predsOf(const Literal& lit, const Signature& sig) { return {sig.predicateOf(lit.atom)}; }

PredSet predsOf(const Rule& rule, const Signature& sig) {
    PredSet out{sig.predicateOf(rule.head.atom)};
    for (const auto& l : rule.body) out.insert(sig.predicateOf(l.atom));
    return out;
}

PredSet predsOf(const HybridKb& kb) {
    PredSet out;
    for (const auto& ax : kb.ontology) {
        auto p = predsOf(ax);
        out.insert(p.begin(), p.end());
    }
    for (const auto& r : kb.program) {
        auto p = predsOf(r, *kb.sig);
        out.insert(p.begin(), p.end());
    }
    return out;
}

std::string toString(const Concept& c, const Signature& sig) {
    switch (c.kind) {
        case Concept::Kind::Atomic: return sig.predicate(c.name).name;
        case Concept::Kind::Top: return "top";
        case Concept::Kind::Bottom: return "bot";
        case Concept::Kind::Neg: {
            const auto& k = *c.kids[0];
            bool simple = k.kind == Concept::Kind::Atomic || k.kind == Concept::Kind::Top ||
                          k.kind == Concept::Kind::Bottom || k.kind == Concept::Kind::Neg;
            return "~" + (simple ? toString(k, sig) : "(" + toString(k, sig) + ")");
        }
        case Concept::Kind::And: {
            std::string out;
            for (std::size_t i = 0; i < c.kids.size(); ++i) {
                if (i) out += " & ";
                const auto& k = *c.kids[i];
                out += k.kind == Concept::Kind::And ? "(" + toString(k, sig) + ")" : toString(k, sig);
            }
            return out;
        }
        case Concept::Kind::Exists: {
            const auto& k = *c.kids[0];
            bool simple = k.kind != Concept::Kind::And;
            return "exists " + sig.predicate(c.name).name + "." +
                   (simple ? toString(k, sig) : "(" + toString(k, sig) + ")");
        }
        case Concept::Kind::ExistsValue:
            return "exists " + sig.predicate(c.name).name + ".{" +
                   Signature::quoteConstant(sig.constant(c.value).name) + "}";
    }
    return "";
}

std::string toString(const OntologyAxiom& axiom, const Signature& sig) {
    using K = OntologyAxiom::Kind;
    switch (axiom.kind) {
        case K::Subsumption: return toString(*axiom.lhs, sig) + " [= " + toString(*axiom.rhs, sig) + ".";
        case K::Equivalence: return toString(*axiom.lhs, sig) + " == " + toString(*axiom.rhs, sig) + ".";
        case K::ConceptAssertion:
            return Signature::quoteConstant(sig.constant(axiom.individual).name) + " : " +
                   toString(*axiom.lhs, sig) + ".";
        case K::RoleAssertion:
            return "(" + Signature::quoteConstant(sig.constant(axiom.individual).name) + ", " +
                   Signature::quoteConstant(sig.constant(axiom.second).name) + ") : " +
                   sig.predicate(axiom.role).name + ".";
    }
    return "";
}

std::string toString(const Literal& lit, const Signature& sig) {
    return (lit.negated ? "not " : "") + sig.atomName(lit.atom);
}

std::string toString(const Rule& rule, const Signature& sig) {
    std::string out = toString(rule.head, sig);
    for (std::size_t i = 0; i < rule.body.size(); ++i) {
        out += i ? ", " : " :- ";
        out += toString(rule.body[i], sig);
    }
    return out + ".";
}

}  // namespace hmknf
