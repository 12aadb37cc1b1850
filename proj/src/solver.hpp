#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hybridmknf/interp.hpp"
#include "hybridmknf/sentence.hpp"

namespace hmknf::detail {

// Clausal solver over one component. Formulas are Tseitin-encoded with full
// equivalences, so every total assignment of the component atoms fixes the
// auxiliary variables by propagation.
class ComponentSolver {
public:
    ComponentSolver(std::vector<AtomId> atoms, const Theory& formulas);

    const std::vector<AtomId>& atoms() const { return atoms_; }
    bool satisfies(Mask assignment) const;
    // Every model as a mask over atoms(); throws ResourceLimit past maxParts.
    std::vector<Mask> allModels(std::size_t maxParts);
    // Models whose difference to `base` is inclusion-minimal. Atoms in `frozen`
    // keep their base value.
    std::vector<Mask> closest(Mask base, Mask frozen = 0);

private:
    using Lit = std::uint32_t;  // 2 * var + negated

    Lit encode(const Formula& f);
    void collectDisjuncts(const Formula& f, bool positive, std::vector<Lit>& out);
    void assertTrue(const Formula& f);
    void assertFalse(const Formula& f);
    void addClause(std::vector<Lit> clause);
    std::uint32_t newVar();

    int value(Lit l) const;
    bool enqueue(Lit l);
    bool propagate();
    void undoTo(std::size_t mark);
    bool restart(Mask base = 0, Mask frozen = 0);
    bool search(std::size_t depth, const std::vector<int>& preferred, bool firstOnly,
                std::vector<Mask>& found, std::size_t maxParts);
    Mask currentMask() const;

    std::vector<AtomId> atoms_;
    std::vector<Formula> formulas_;
    std::uint32_t varCount_ = 0;
    std::vector<std::vector<Lit>> clauses_;
    std::vector<std::vector<std::uint32_t>> occurs_;  // literal -> clauses containing it
    std::vector<std::uint32_t> order_;                // decision order over all variables
    std::vector<std::int8_t> assignment_;
    std::vector<Lit> trail_;
    std::size_t propagated_ = 0;
    bool inconsistent_ = false;
};

struct SimplifiedTheory {
    std::vector<Formula> rest;       // no unit literals at top level
    std::map<AtomId, bool> units;
    bool inconsistent = false;
};

SimplifiedTheory simplifyTheory(const Theory& theory);

// Connected blocks of atoms co-occurring in some formula, over all theories.
std::vector<std::vector<AtomId>> partitionAtoms(const std::vector<SimplifiedTheory>& theories);

// The slice of a simplified theory whose atoms fall inside `block`.
Theory sliceTheory(const SimplifiedTheory& theory, const std::vector<AtomId>& block);

}  // namespace hmknf::detail
