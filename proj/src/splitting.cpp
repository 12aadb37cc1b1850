#include "hybridmknf/splitting.hpp"

#include <algorithm>
#include <map>

#include "hybridmknf/rules.hpp"
#include "hybridmknf/winslett.hpp"

namespace hmknf {

namespace {

bool subsetOf(const PredSet& a, const PredSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool intersects(const PredSet& a, const PredSet& b) {
    return std::any_of(a.begin(), a.end(), [&](PredId p) { return b.count(p) > 0; });
}

void checkItem(const PredSet& preds, const PredSet& trigger, const PredSet& split, const std::string& item,
               SplitCheckReport& report) {
    if (!intersects(trigger, split)) return;
    PredId inside = *std::find_if(trigger.begin(), trigger.end(), [&](PredId p) { return split.count(p) > 0; });
    for (PredId p : preds)
        if (!split.count(p)) report.violations.push_back({item, inside, p});
}

DynamicHybridKb mapKbs(const DynamicHybridKb& dkb, const std::function<HybridKb(const HybridKb&)>& f) {
    DynamicHybridKb out{dkb.sig, {}};
    for (const auto& kb : dkb.kbs) out.kbs.push_back(f(kb));
    return out;
}

bool positiveFactsOnly(const Program& program) {
    return std::all_of(program.begin(), program.end(), [](const Rule& r) { return r.isFact() && r.isPositive(); });
}

Theory factTheory(const HybridKb& kb) {
    Theory theory = tau(kb.ontology, *kb.sig);
    for (const auto& r : kb.program) theory.push_back(atomF(r.head.atom));
    return theory;
}

std::vector<ModelSet> solveStaticLayer(const HybridKb& layer, const Limits& limits, const MixedLayerSolver& mixed) {
    if (positiveFactsOnly(layer.program)) {
        try {
            return {allModels(factTheory(layer), limits)};
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::EmptyUpdate) return {};
            throw;
        }
    }
    if (layer.ontology.empty()) {
        std::vector<ModelSet> out;
        for (const auto& model : stableModels(layer.program, atomsOf(layer.program), limits))
            out.push_back(ModelSet::upSet(model));
        return out;
    }
    if (mixed) return mixed(layer);
    throw Error(ErrorKind::MixedLayer, "layer combines axioms with rules that are not positive facts");
}

}  // namespace

SplitCheckReport isSplittingSet(const PredSet& split, const HybridKb& kb) {
    SplitCheckReport report;
    for (const auto& axiom : kb.ontology) {
        auto preds = predsOf(axiom);
        checkItem(preds, preds, split, toString(axiom, *kb.sig), report);
    }
    for (const auto& rule : kb.program)
        checkItem(predsOf(rule, *kb.sig), predsOf(rule.head, *kb.sig), split, toString(rule, *kb.sig), report);
    return report;
}

SplitCheckReport isSplittingSet(const PredSet& split, const DynamicHybridKb& dkb) {
    SplitCheckReport report;
    for (const auto& kb : dkb.kbs) {
        auto part = isSplittingSet(split, kb);
        report.violations.insert(report.violations.end(), part.violations.begin(), part.violations.end());
    }
    return report;
}

HybridKb bottom(const HybridKb& kb, const PredSet& split) {
    HybridKb out{kb.sig, {}, {}};
    for (const auto& axiom : kb.ontology)
        if (subsetOf(predsOf(axiom), split)) out.ontology.push_back(axiom);
    for (const auto& rule : kb.program)
        if (subsetOf(predsOf(rule, *kb.sig), split)) out.program.push_back(rule);
    return out;
}

HybridKb top(const HybridKb& kb, const PredSet& split) {
    HybridKb out{kb.sig, {}, {}};
    for (const auto& axiom : kb.ontology)
        if (!subsetOf(predsOf(axiom), split)) out.ontology.push_back(axiom);
    for (const auto& rule : kb.program)
        if (!subsetOf(predsOf(rule, *kb.sig), split)) out.program.push_back(rule);
    return out;
}

DynamicHybridKb bottom(const DynamicHybridKb& dkb, const PredSet& split) {
    return mapKbs(dkb, [&](const HybridKb& kb) { return bottom(kb, split); });
}

DynamicHybridKb top(const DynamicHybridKb& dkb, const PredSet& split) {
    return mapKbs(dkb, [&](const HybridKb& kb) { return top(kb, split); });
}

HybridKb reduct(const HybridKb& kb, const PredSet& split, const ModelSet& context) {
    HybridKb upper = top(kb, split);
    HybridKb out{kb.sig, upper.ontology, {}};
    for (const auto& rule : upper.program) {
        bool keep = true;
        std::vector<Literal> rest;
        for (const auto& lit : rule.body) {
            if (!split.count(kb.sig->predicateOf(lit.atom))) {
                rest.push_back(lit);
                continue;
            }
            Formula atom = atomF(lit.atom);
            if (!(lit.negated ? holdsNot(context, atom) : holdsK(context, atom))) {
                keep = false;
                break;
            }
        }
        if (keep) out.program.push_back(makeRule(rule.head, std::move(rest)));
    }
    std::sort(out.program.begin(), out.program.end());
    out.program.erase(std::unique(out.program.begin(), out.program.end()), out.program.end());
    return out;
}

DynamicHybridKb reduct(const DynamicHybridKb& dkb, const PredSet& split, const ModelSet& context) {
    return mapKbs(dkb, [&](const HybridKb& kb) { return reduct(kb, split, context); });
}

const char* layerKindName(LayerKind kind) {
    switch (kind) {
        case LayerKind::Ontology: return "ontology";
        case LayerKind::Program: return "program";
        case LayerKind::Mixed: return "mixed";
    }
    return "?";
}

PredSet layerPrefix(const LayerPlan& plan, std::size_t index) {
    return index == 0 ? PredSet{} : plan.sequence[index - 1];
}

HybridKb layerSlice(const HybridKb& kb, const LayerPlan& plan, std::size_t index) {
    auto lower = bottom(kb, plan.sequence[index]);
    return index == 0 ? lower : top(lower, layerPrefix(plan, index));
}

DynamicHybridKb layerSlice(const DynamicHybridKb& dkb, const LayerPlan& plan, std::size_t index) {
    auto lower = bottom(dkb, plan.sequence[index]);
    return index == 0 ? lower : top(lower, layerPrefix(plan, index));
}

LayerKind reducibility(const HybridKb& slice, const PredSet& prefix, std::string* witness) {
    for (const auto& rule : slice.program) {
        PredSet body;
        for (const auto& lit : rule.body) body.insert(slice.sig->predicateOf(lit.atom));
        if (!rule.isPositive() || !subsetOf(body, prefix)) {
            if (witness) *witness = toString(rule, *slice.sig);
            return slice.ontology.empty() ? LayerKind::Program : LayerKind::Mixed;
        }
    }
    return LayerKind::Ontology;
}

LayerKind reducibility(const DynamicHybridKb& slice, const PredSet& prefix, std::string* witness) {
    bool ontology = true, program = true;
    std::string firstWitness;
    for (const auto& kb : slice.kbs) {
        std::string w;
        auto kind = reducibility(kb, prefix, &w);
        if (kind != LayerKind::Ontology) {
            ontology = false;
            if (firstWitness.empty()) firstWitness = w;
        }
        if (!kb.ontology.empty()) {
            program = false;
            if (firstWitness.empty()) firstWitness = toString(kb.ontology.front(), *kb.sig);
        }
    }
    if (ontology) return LayerKind::Ontology;
    if (program) return LayerKind::Program;
    if (witness) *witness = firstWitness;
    return LayerKind::Mixed;
}

void validatePlan(const LayerPlan& plan, const DynamicHybridKb& dkb) {
    if (plan.sequence.empty()) throw Error(ErrorKind::InvalidPlan, "plan has no layers");
    for (std::size_t i = 1; i < plan.sequence.size(); ++i)
        if (!subsetOf(plan.sequence[i - 1], plan.sequence[i]))
            throw Error(ErrorKind::InvalidPlan, "plan is not monotone at layer " + std::to_string(i));
    PredSet used;
    for (const auto& kb : dkb.kbs) {
        auto preds = predsOf(kb);
        used.insert(preds.begin(), preds.end());
    }
    for (PredId p : used)
        if (!plan.sequence.back().count(p))
            throw Error(ErrorKind::InvalidPlan,
                        "plan does not cover predicate " + dkb.sig->predicate(p).name);
    for (std::size_t i = 0; i < plan.sequence.size(); ++i) {
        auto report = isSplittingSet(plan.sequence[i], dkb);
        if (!report.ok())
            throw Error(ErrorKind::InvalidPlan, "layer " + std::to_string(i) + " is not a splitting set: " +
                                                    report.violations.front().item);
    }
}

LayerPlan classifyLayers(LayerPlan plan, const DynamicHybridKb& dkb) {
    validatePlan(plan, dkb);
    plan.kinds.clear();
    for (std::size_t i = 0; i < plan.sequence.size(); ++i)
        plan.kinds.push_back(reducibility(layerSlice(dkb, plan, i), layerPrefix(plan, i)));
    return plan;
}

LayerPlan trivialPlan(const DynamicHybridKb& dkb) {
    return classifyLayers(LayerPlan{{dkb.sig->allPredicates()}, {}}, dkb);
}

LayerPlan suggestPlan(const DynamicHybridKb& dkb) {
    const Signature& sig = *dkb.sig;
    std::size_t n = sig.predicateCount();
    // Edge p -> q: p must be placed no earlier than q.
    std::vector<std::vector<std::size_t>> deps(n);
    std::vector<char> inAxiom(n, 0);
    for (const auto& kb : dkb.kbs) {
        for (const auto& axiom : kb.ontology) {
            auto preds = predsOf(axiom);
            for (PredId p : preds) {
                inAxiom[p] = 1;
                for (PredId q : preds)
                    if (p != q) deps[p].push_back(q);
            }
        }
        for (const auto& rule : kb.program) {
            PredId head = sig.predicateOf(rule.head.atom);
            for (const auto& lit : rule.body) deps[head].push_back(sig.predicateOf(lit.atom));
        }
    }

    // Tarjan's strongly connected components.
    std::vector<long> index(n, -1), low(n, 0), sccOf(n, -1);
    std::vector<char> onStack(n, 0);
    std::vector<std::size_t> stack;
    long counter = 0, sccCount = 0;
    std::function<void(std::size_t)> visit = [&](std::size_t v) {
        index[v] = low[v] = counter++;
        stack.push_back(v);
        onStack[v] = 1;
        for (std::size_t w : deps[v]) {
            if (index[w] < 0) {
                visit(w);
                low[v] = std::min(low[v], low[w]);
            } else if (onStack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        }
        if (low[v] == index[v]) {
            std::size_t w;
            do {
                w = stack.back();
                stack.pop_back();
                onStack[w] = 0;
                sccOf[w] = sccCount;
            } while (w != v);
            ++sccCount;
        }
    };
    for (std::size_t v = 0; v < n; ++v)
        if (index[v] < 0) visit(v);

    std::vector<PredSet> members(static_cast<std::size_t>(sccCount));
    for (std::size_t v = 0; v < n; ++v) members[static_cast<std::size_t>(sccOf[v])].insert(static_cast<PredId>(v));

    auto eligible = [&](const PredSet& scc, LayerKind kind, const PredSet& prefix) {
        if (kind == LayerKind::Program)
            return std::none_of(scc.begin(), scc.end(), [&](PredId p) { return inAxiom[p] != 0; });
        for (const auto& kb : dkb.kbs)
            for (const auto& rule : kb.program) {
                if (!scc.count(sig.predicateOf(rule.head.atom))) continue;
                if (!rule.isPositive()) return false;
                for (const auto& lit : rule.body)
                    if (!prefix.count(sig.predicateOf(lit.atom))) return false;
            }
        return true;
    };

    LayerPlan plan;
    PredSet placed;
    std::vector<char> done(members.size(), 0);
    std::size_t remaining = members.size();
    LayerKind next = LayerKind::Ontology;
    while (remaining > 0) {
        bool progressed = false;
        for (int attempt = 0; attempt < 2 && !progressed; ++attempt) {
            LayerKind kind = attempt == 0 ? next : (next == LayerKind::Ontology ? LayerKind::Program
                                                                                : LayerKind::Ontology);
            std::vector<char> chosen(members.size(), 0);
            for (std::size_t c = 0; c < members.size(); ++c)
                chosen[c] = !done[c] && eligible(members[c], kind, placed);
            // Drop components depending on anything outside the prefix and the layer.
            for (bool changed = true; changed;) {
                changed = false;
                for (std::size_t c = 0; c < members.size(); ++c) {
                    if (!chosen[c]) continue;
                    for (PredId p : members[c]) {
                        for (std::size_t q : deps[p]) {
                            auto qc = static_cast<std::size_t>(sccOf[q]);
                            if (!done[qc] && !chosen[qc]) {
                                chosen[c] = 0;
                                changed = true;
                                break;
                            }
                        }
                        if (!chosen[c]) break;
                    }
                }
            }
            PredSet layer = placed;
            for (std::size_t c = 0; c < members.size(); ++c)
                if (chosen[c]) {
                    done[c] = 1;
                    --remaining;
                    progressed = true;
                    layer.insert(members[c].begin(), members[c].end());
                }
            if (progressed) {
                plan.sequence.push_back(layer);
                plan.kinds.push_back(kind);
                placed = std::move(layer);
                next = kind == LayerKind::Ontology ? LayerKind::Program : LayerKind::Ontology;
            }
        }
        if (!progressed)
            throw Error(ErrorKind::NotUpdatable, "no reducible layer can be formed above " +
                                                     std::to_string(placed.size()) + " placed predicates");
    }
    if (plan.sequence.empty()) plan.sequence.push_back({});
    return classifyLayers(std::move(plan), dkb);
}

LayerPlan suggestPlan(const HybridKb& kb) { return suggestPlan(DynamicHybridKb{kb.sig, {kb}}); }

std::vector<StaticSolution> staticSolutions(const HybridKb& kb, const LayerPlan& plan, const Limits& limits,
                                            const MixedLayerSolver& mixed) {
    validatePlan(plan, DynamicHybridKb{kb.sig, {kb}});
    std::vector<StaticSolution> frontier{StaticSolution{}};
    for (std::size_t i = 0; i < plan.sequence.size(); ++i) {
        PredSet prefix = layerPrefix(plan, i);
        HybridKb slice = bottom(kb, plan.sequence[i]);
        std::vector<StaticSolution> next;
        for (const auto& partial : frontier) {
            HybridKb layer = i == 0 ? slice : reduct(slice, prefix, partial.combined);
            for (auto& x : solveStaticLayer(layer, limits, mixed)) {
                StaticSolution extended = partial;
                try {
                    extended.combined = intersect(partial.combined, x, limits);
                } catch (const Error& e) {
                    if (e.kind() == ErrorKind::EmptyIntersection) continue;
                    throw;
                }
                extended.layers.push_back(std::move(x));
                next.push_back(std::move(extended));
                if (next.size() > limits.maxBranches)
                    throw Error(ErrorKind::ResourceLimit,
                                "more than " + std::to_string(limits.maxBranches) + " partial solutions");
            }
        }
        frontier = std::move(next);
    }
    return frontier;
}

}  // namespace hmknf
