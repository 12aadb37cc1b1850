#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hybridmknf/error.hpp"
#include "hybridmknf/interp.hpp"
#include "hybridmknf/kb.hpp"

namespace hmknf {

struct SplitViolation {
    std::string item;  // printed axiom or rule
    PredId inside;     // predicate of the item in U
    PredId outside;    // predicate of the item outside U
};

struct SplitCheckReport {
    std::vector<SplitViolation> violations;
    bool ok() const { return violations.empty(); }
};

SplitCheckReport isSplittingSet(const PredSet& split, const HybridKb& kb);
SplitCheckReport isSplittingSet(const PredSet& split, const DynamicHybridKb& dkb);

HybridKb bottom(const HybridKb& kb, const PredSet& split);
HybridKb top(const HybridKb& kb, const PredSet& split);
DynamicHybridKb bottom(const DynamicHybridKb& dkb, const PredSet& split);
DynamicHybridKb top(const DynamicHybridKb& dkb, const PredSet& split);

// Top of kb with every rule whose U-body fails under `context` dropped and the
// U-literals of the remaining rules removed.
HybridKb reduct(const HybridKb& kb, const PredSet& split, const ModelSet& context);
DynamicHybridKb reduct(const DynamicHybridKb& dkb, const PredSet& split, const ModelSet& context);

enum class LayerKind { Ontology, Program, Mixed };
const char* layerKindName(LayerKind kind);

// Cumulative predicate sets; the last one covers every predicate of the KB.
struct LayerPlan {
    std::vector<PredSet> sequence;
    std::vector<LayerKind> kinds;  // one per layer, filled by classifyLayers
};

// Slice of layer `index`: the whole bottom of the first set, then the part of
// each bottom lying above the previous set.
HybridKb layerSlice(const HybridKb& kb, const LayerPlan& plan, std::size_t index);
DynamicHybridKb layerSlice(const DynamicHybridKb& dkb, const LayerPlan& plan, std::size_t index);
// Predicates below layer `index` (empty for the first layer).
PredSet layerPrefix(const LayerPlan& plan, std::size_t index);

// O-reducible relative to `prefix`: every rule has an atom head and a body
// within `prefix`. Also reports the first offending item when neither holds.
LayerKind reducibility(const HybridKb& slice, const PredSet& prefix, std::string* witness = nullptr);
LayerKind reducibility(const DynamicHybridKb& slice, const PredSet& prefix, std::string* witness = nullptr);

// Throws InvalidPlan unless the plan is monotone, covers the KB and every set
// is a splitting set for every KB of the sequence.
void validatePlan(const LayerPlan& plan, const DynamicHybridKb& dkb);
// Validates and fills plan.kinds.
LayerPlan classifyLayers(LayerPlan plan, const DynamicHybridKb& dkb);

// Greedy layering over the condensed predicate dependency graph, alternating
// ontology and program layers. Throws NotUpdatable when the strategy fails.
LayerPlan suggestPlan(const DynamicHybridKb& dkb);
LayerPlan suggestPlan(const HybridKb& kb);

// The single plan <all predicates>.
LayerPlan trivialPlan(const DynamicHybridKb& dkb);

struct StaticSolution {
    std::vector<ModelSet> layers;
    ModelSet combined;
};

// Solves a layer that mixes axioms with rules beyond positive facts.
using MixedLayerSolver = std::function<std::vector<ModelSet>(const HybridKb& layer)>;

// Every solution of kb w.r.t. plan. Layers are solved after the reduct: axioms
// plus positive facts by their classical models, pure programs by the up-sets
// of their stable models, anything else by `mixed` or MixedLayer.
std::vector<StaticSolution> staticSolutions(const HybridKb& kb, const LayerPlan& plan, const Limits& limits = {},
                                            const MixedLayerSolver& mixed = {});

}  // namespace hmknf
