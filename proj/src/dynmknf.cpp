#include "hybridmknf/dynmknf.hpp"

#include <algorithm>

#include "hybridmknf/rules.hpp"
#include "hybridmknf/winslett.hpp"

namespace hmknf {

const char* basicKindName(BasicKind kind) {
    switch (kind) {
        case BasicKind::OntologyBased: return "ontology-based";
        case BasicKind::ProgramBased: return "program-based";
        case BasicKind::NotBasic: return "not-basic";
    }
    return "?";
}

BasicKind classifyBasic(const DynamicHybridKb& dkb) {
    bool ontology = std::all_of(dkb.kbs.begin(), dkb.kbs.end(), [](const HybridKb& kb) {
        return std::all_of(kb.program.begin(), kb.program.end(),
                           [](const Rule& r) { return r.isFact() && r.isPositive(); });
    });
    if (ontology) return BasicKind::OntologyBased;
    bool program =
        std::all_of(dkb.kbs.begin(), dkb.kbs.end(), [](const HybridKb& kb) { return kb.ontology.empty(); });
    return program ? BasicKind::ProgramBased : BasicKind::NotBasic;
}

UpdateEnablingReport isUpdateEnabling(const LayerPlan& plan, const DynamicHybridKb& dkb) {
    UpdateEnablingReport report;
    try {
        validatePlan(plan, dkb);
    } catch (const Error& e) {
        report.planError = e.what();
        return report;
    }
    report.enabling = true;
    for (std::size_t i = 0; i < plan.sequence.size(); ++i) {
        LayerReport layer;
        layer.kind = reducibility(layerSlice(dkb, plan, i), layerPrefix(plan, i), &layer.witness);
        if (layer.kind == LayerKind::Mixed) report.enabling = false;
        else layer.witness.clear();
        report.layers.push_back(std::move(layer));
    }
    return report;
}

std::vector<ModelSet> dynamicMknfBasic(const DynamicHybridKb& dkb, const Limits& limits) {
    switch (classifyBasic(dkb)) {
        case BasicKind::OntologyBased: {
            std::vector<Theory> theories;
            for (const auto& kb : dkb.kbs) {
                Theory t = tau(kb.ontology, *kb.sig);
                for (const auto& r : kb.program) t.push_back(atomF(r.head.atom));
                theories.push_back(std::move(t));
            }
            try {
                return {sequenceUpdateModel(theories, limits)};
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::EmptyUpdate) return {};
                throw;
            }
        }
        case BasicKind::ProgramBased: {
            Dlp dlp;
            for (const auto& kb : dkb.kbs) dlp.push_back(kb.program);
            std::vector<ModelSet> out;
            for (const auto& model : dynamicStableModels(dlp, atomsOf(dlp), limits))
                out.push_back(ModelSet::upSet(model));
            return out;
        }
        case BasicKind::NotBasic: break;
    }
    throw Error(ErrorKind::NotUpdateEnabling, "layer is neither ontology-based nor program-based");
}

std::vector<ModelSet> dynamicMknfModels(const DynamicHybridKb& dkb, const LayerPlan& plan, const Limits& limits) {
    auto report = isUpdateEnabling(plan, dkb);
    if (!report.planError.empty()) throw Error(ErrorKind::InvalidPlan, report.planError);
    if (!report.enabling) {
        for (std::size_t i = 0; i < report.layers.size(); ++i)
            if (report.layers[i].kind == LayerKind::Mixed)
                throw Error(ErrorKind::NotUpdateEnabling,
                            "layer " + std::to_string(i) + " is not reducible: " + report.layers[i].witness);
    }
    std::vector<ModelSet> frontier{ModelSet::full()};
    for (std::size_t i = 0; i < plan.sequence.size(); ++i) {
        PredSet prefix = layerPrefix(plan, i);
        DynamicHybridKb slice = bottom(dkb, plan.sequence[i]);
        std::vector<ModelSet> next;
        for (const auto& combined : frontier) {
            // The first layer keeps items without predicates.
            const DynamicHybridKb layer = i == 0 ? slice : reduct(slice, prefix, combined);
            for (const auto& x : dynamicMknfBasic(layer, limits)) {
                try {
                    next.push_back(intersect(combined, x, limits));
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::EmptyIntersection) throw;
                }
                if (next.size() > limits.maxBranches)
                    throw Error(ErrorKind::ResourceLimit,
                                "more than " + std::to_string(limits.maxBranches) + " branches");
            }
        }
        frontier = std::move(next);
    }
    std::vector<ModelSet> out;
    for (auto& m : frontier)
        if (std::none_of(out.begin(), out.end(), [&](const ModelSet& o) { return sameDenotation(o, m, limits); }))
            out.push_back(std::move(m));
    return out;
}

std::vector<ModelSet> dynamicMknfModels(const DynamicHybridKb& dkb, const Limits& limits) {
    return dynamicMknfModels(dkb, suggestPlan(dkb), limits);
}

bool entails(const ModelSet& m, const Formula& query, const Limits& limits) {
    return satisfiesSentence(m, query, limits);
}

}  // namespace hmknf
