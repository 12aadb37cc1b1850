#pragma once

#include <cstdint>
#include <vector>

#include "hybridmknf/error.hpp"
#include "hybridmknf/sentence.hpp"
#include "hybridmknf/signature.hpp"

namespace hmknf {

using Mask = std::uint64_t;
inline constexpr std::size_t kMaskBits = 64;

// A Herbrand interpretation over an explicit scope.
struct Interpretation {
    std::vector<AtomId> scope;      // sorted
    std::vector<AtomId> trueAtoms;  // sorted, subset of scope

    bool holds(AtomId atom) const;
    bool operator==(const Interpretation&) const = default;
};

Interpretation restrictTo(const Interpretation& interp, const std::vector<AtomId>& atoms);

// One factor of a ModelSet: bit i of every part is the value of atoms[i].
struct Component {
    std::vector<AtomId> atoms;  // sorted
    std::vector<Mask> parts;    // sorted, unique, nonempty

    bool operator==(const Component&) const = default;
};

// Factored MKNF interpretation: the interpretations whose restriction to every
// component scope is one of that component's parts. Atoms outside all scopes
// are unconstrained. Never denotes the empty set.
class ModelSet {
public:
    ModelSet() = default;
    // Validates disjointness and non-emptiness, then normalises.
    explicit ModelSet(std::vector<Component> components);

    static ModelSet full() { return ModelSet(); }
    // Keeps the given factors as they are; the caller guarantees validity.
    static ModelSet unnormalized(std::vector<Component> components);
    // Every interpretation containing `trueAtoms`.
    static ModelSet upSet(const std::vector<AtomId>& trueAtoms);

    const std::vector<Component>& components() const { return components_; }
    bool isFull() const { return components_.empty(); }
    std::vector<AtomId> constrainedAtoms() const;
    // Index of the component holding `atom`, or -1 when the atom is free.
    int componentOf(AtomId atom) const;
    // Number of denoted interpretations restricted to the constrained atoms.
    long double size() const;
    bool contains(const std::vector<AtomId>& trueAtoms) const;

    bool operator==(const ModelSet&) const = default;

private:
    std::vector<Component> components_;
};

ModelSet restrict(const ModelSet& m, const std::vector<AtomId>& atoms);
ModelSet restrict(const ModelSet& m, const PredSet& preds, const Signature& sig);
ModelSet saturate(const ModelSet& m, const PredSet& preds, const Signature& sig);

// Throws EmptyIntersection when the result would denote no interpretation.
ModelSet intersect(const ModelSet& a, const ModelSet& b, const Limits& limits = {});

// Merges every component touching `atoms` into one.
ModelSet mergeComponents(const ModelSet& m, const std::vector<AtomId>& atoms, const Limits& limits = {});

// Objective, ground `f`; throws CrossComponentFormula when f spans components.
bool holdsK(const ModelSet& m, const Formula& f);
bool holdsNot(const ModelSet& m, const Formula& f);

// Evaluates any ground MKNF sentence under (I, M, M) for every I in M, merging
// components on demand within `limits`.
bool satisfiesSentence(const ModelSet& m, const Formula& f, const Limits& limits = {});
bool satisfiesS5(const ModelSet& m, const Theory& t, const Limits& limits = {});

bool sameDenotation(const ModelSet& a, const ModelSet& b, const Limits& limits = {});

// Explicit denotation restricted to `atoms`; bit i of each mask is atoms[i].
std::vector<Mask> expand(const ModelSet& m, const std::vector<AtomId>& atoms, const Limits& limits = {});

// Single-component ModelSet from explicit parts over `atoms`.
ModelSet fromExplicit(const std::vector<AtomId>& atoms, std::vector<Mask> parts);

std::vector<AtomId> maskToAtoms(Mask mask, const std::vector<AtomId>& atoms);

}  // namespace hmknf
