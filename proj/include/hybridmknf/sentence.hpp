#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hybridmknf/signature.hpp"

namespace hmknf {

enum class Op { True, False, Atom, Neg, And, Or, Implies, Know, NotDefault };

struct Node;
using Formula = std::shared_ptr<const Node>;

// Ground MKNF sentence. Implies stores (antecedent, consequent); a rule
// "head <- body" becomes Implies(body, head).
struct Node {
    Op op;
    AtomId atom = 0;
    std::vector<Formula> kids;
};

using Theory = std::vector<Formula>;

Formula top();
Formula bot();
Formula atomF(AtomId atom);
Formula neg(Formula f);
Formula conj(std::vector<Formula> fs);
Formula disj(std::vector<Formula> fs);
Formula implies(Formula antecedent, Formula consequent);
Formula iff(Formula a, Formula b);
Formula know(Formula f);
Formula notD(Formula f);

bool isObjective(const Formula& f);
void collectAtoms(const Formula& f, std::vector<AtomId>& out);
std::vector<AtomId> atomsOf(const Formula& f);
std::vector<AtomId> atomsOf(const Theory& t);

// Objective evaluation; `value` maps an atom to its truth value.
template <typename Valuation>
bool evalObjective(const Formula& f, const Valuation& value) {
    switch (f->op) {
        case Op::True: return true;
        case Op::False: return false;
        case Op::Atom: return value(f->atom);
        case Op::Neg: return !evalObjective(f->kids[0], value);
        case Op::And:
            for (const auto& k : f->kids)
                if (!evalObjective(k, value)) return false;
            return true;
        case Op::Or:
            for (const auto& k : f->kids)
                if (evalObjective(k, value)) return true;
            return false;
        case Op::Implies:
            return !evalObjective(f->kids[0], value) || evalObjective(f->kids[1], value);
        case Op::Know:
        case Op::NotDefault: break;
    }
    throw std::logic_error("modal operator in objective evaluation");
}

// Replaces atoms fixed in `fixedValue` (returns -1 for unknown, 0/1 otherwise)
// and folds constants.
template <typename Fixed>
Formula substitute(const Formula& f, const Fixed& fixedValue);

std::string toString(const Formula& f, const Signature& sig);

// Splits nested top-level conjunctions into separate conjuncts.
void flattenConjunction(const Formula& f, std::vector<Formula>& out);

}  // namespace hmknf

#include "hybridmknf/sentence_impl.hpp"
