#pragma once

#include <string>
#include <vector>

#include "hybridmknf/error.hpp"
#include "hybridmknf/interp.hpp"
#include "hybridmknf/kb.hpp"
#include "hybridmknf/splitting.hpp"

namespace hmknf {

enum class BasicKind { OntologyBased, ProgramBased, NotBasic };
const char* basicKindName(BasicKind kind);

// Ontology-based wins when both apply.
BasicKind classifyBasic(const DynamicHybridKb& dkb);

struct LayerReport {
    LayerKind kind;
    std::string witness;  // offending item when kind is Mixed
};

struct UpdateEnablingReport {
    bool enabling = false;
    std::string planError;  // set when the plan is not a valid splitting sequence
    std::vector<LayerReport> layers;
};

UpdateEnablingReport isUpdateEnabling(const LayerPlan& plan, const DynamicHybridKb& dkb);

// Empty when the basic dkb has no dynamic model.
std::vector<ModelSet> dynamicMknfBasic(const DynamicHybridKb& dkb, const Limits& limits = {});

// Every dynamic model w.r.t. the plan, deduplicated by denotation.
// Throws NotUpdateEnabling or InvalidPlan.
std::vector<ModelSet> dynamicMknfModels(const DynamicHybridKb& dkb, const LayerPlan& plan, const Limits& limits = {});
// Uses suggestPlan.
std::vector<ModelSet> dynamicMknfModels(const DynamicHybridKb& dkb, const Limits& limits = {});

// Ground MKNF sentence evaluated against M.
bool entails(const ModelSet& m, const Formula& query, const Limits& limits = {});

}  // namespace hmknf
