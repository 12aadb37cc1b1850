#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "hybridmknf/dynmknf.hpp"
#include "hybridmknf/oracle.hpp"
#include "hybridmknf/parser.hpp"
#include "hybridmknf/splitting.hpp"

using json = nlohmann::ordered_json;
using namespace hmknf;

namespace {

constexpr int kSemanticFailure = 1;
constexpr int kUsageError = 2;

json modelJson(const ModelSet& m, const Signature& sig) {
    json components = json::array();
    for (const auto& c : m.components()) {
        json atoms = json::array(), parts = json::array();
        for (AtomId a : c.atoms) atoms.push_back(sig.atomName(a));
        for (Mask part : c.parts) {
            json trueAtoms = json::array();
            for (AtomId a : maskToAtoms(part, c.atoms)) trueAtoms.push_back(sig.atomName(a));
            parts.push_back(std::move(trueAtoms));
        }
        components.push_back({{"atoms", std::move(atoms)}, {"parts", std::move(parts)}});
    }
    return {{"components", std::move(components)}};
}

json predNames(const PredSet& preds, const Signature& sig) {
    json out = json::array();
    for (PredId p : preds) out.push_back(sig.predicate(p).name);
    return out;
}

json planJson(const LayerPlan& plan, const Signature& sig) {
    json out = json::array();
    for (const auto& set : plan.sequence) out.push_back(predNames(set, sig));
    return out;
}

json kinds(const LayerPlan& plan) {
    json out = json::array();
    for (auto k : plan.kinds) out.push_back(layerKindName(k));
    return out;
}

json kbJson(const HybridKb& kb) {
    json axioms = json::array(), rules = json::array();
    for (const auto& ax : kb.ontology) axioms.push_back(toString(ax, *kb.sig));
    for (const auto& r : kb.program) rules.push_back(toString(r, *kb.sig));
    return {{"axioms", std::move(axioms)}, {"rules", std::move(rules)}};
}

PredSet predsByName(const std::vector<std::string>& names, const Signature& sig) {
    PredSet out;
    for (const auto& n : names) {
        auto p = sig.findPredicate(n);
        if (!p) throw Error(ErrorKind::UndeclaredSymbol, "undeclared predicate '" + n + "'");
        out.insert(*p);
    }
    return out;
}

LayerPlan readPlan(const std::string& path, const DynamicHybridKb& dkb) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::InvalidPlan, "cannot read " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::InvalidPlan, path + ": " + e.what());
    }
    if (!doc.is_array()) throw Error(ErrorKind::InvalidPlan, path + ": expected a list of predicate lists");
    LayerPlan plan;
    for (const auto& layer : doc) plan.sequence.push_back(predsByName(layer.get<std::vector<std::string>>(), *dkb.sig));
    return classifyLayers(std::move(plan), dkb);
}

struct Options {
    std::vector<std::string> files;
    std::string sequence;
    std::string query;
    std::vector<std::string> splitSet;
    bool oracle = false;
    Limits limits;
};

DynamicHybridKb load(const Options& opts) {
    std::vector<KbDocument> docs;
    for (const auto& f : opts.files) docs.push_back(readDocument(f));
    auto dkb = toDynamicKb(docs);
    spdlog::info("loaded {} knowledge base(s) over {} ground atoms", dkb.kbs.size(), dkb.sig->atomCount());
    return dkb;
}

LayerPlan choosePlan(const Options& opts, const DynamicHybridKb& dkb, bool allowTrivial) {
    if (!opts.sequence.empty()) return readPlan(opts.sequence, dkb);
    try {
        return suggestPlan(dkb);
    } catch (const Error& e) {
        if (!allowTrivial || e.kind() != ErrorKind::NotUpdatable) throw;
        spdlog::info("no reducible layering found, using a single layer");
        return trivialPlan(dkb);
    }
}

std::vector<ModelSet> staticModels(const Options& opts, const HybridKb& kb, const LayerPlan& plan) {
    auto solutions = staticSolutions(kb, plan, opts.limits, opts.oracle ? oracle::mixedLayerSolver() : MixedLayerSolver{});
    std::vector<ModelSet> out;
    for (auto& s : solutions)
        if (std::none_of(out.begin(), out.end(),
                         [&](const ModelSet& m) { return sameDenotation(m, s.combined, opts.limits); }))
            out.push_back(std::move(s.combined));
    return out;
}

// Models of one KB (static) or of an update sequence.
std::vector<ModelSet> computeModels(const Options& opts, const DynamicHybridKb& dkb, const LayerPlan& plan) {
    if (dkb.kbs.size() == 1) return staticModels(opts, dkb.kbs.front(), plan);
    return dynamicMknfModels(dkb, plan, opts.limits);
}

json oracleCheck(const DynamicHybridKb& dkb, const std::vector<ModelSet>& models) {
    auto atoms = std::vector<AtomId>();
    for (const auto& kb : dkb.kbs) {
        auto more = atomsOf(pi(kb));
        atoms.insert(atoms.end(), more.begin(), more.end());
    }
    std::sort(atoms.begin(), atoms.end());
    atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
    std::vector<oracle::ExplicitSet> expected;
    std::string method;
    if (dkb.kbs.size() == 1 && atoms.size() <= oracle::kMaxMknfAtoms) {
        expected = oracle::bruteMknfModels(dkb.kbs.front(), atoms);
        method = "mknf";
    } else if (classifyBasic(dkb) == BasicKind::OntologyBased && atoms.size() <= oracle::kMaxWinslettAtoms) {
        std::vector<Theory> theories;
        for (const auto& kb : dkb.kbs) {
            Theory t = tau(kb.ontology, *kb.sig);
            for (const auto& r : kb.program) t.push_back(atomF(r.head.atom));
            theories.push_back(std::move(t));
        }
        auto folded = oracle::bruteWinslettFold(theories, atoms, *dkb.sig);
        if (!folded.empty()) expected.push_back(folded);
        method = "update";
    } else if (classifyBasic(dkb) == BasicKind::ProgramBased && atoms.size() <= oracle::kMaxDlpAtoms) {
        Dlp dlp;
        for (const auto& kb : dkb.kbs) dlp.push_back(kb.program);
        for (Mask m : oracle::bruteDynStable(dlp, atoms)) expected.push_back(oracle::upSet(m, atoms.size()));
        method = "dynamic-stable";
    } else {
        return {{"checked", false}};
    }
    std::vector<oracle::ExplicitSet> actual;
    for (const auto& m : models) actual.push_back(oracle::toExplicit(m, atoms));
    std::sort(expected.begin(), expected.end());
    std::sort(actual.begin(), actual.end());
    return {{"checked", true}, {"method", method}, {"agrees", expected == actual}};
}

int emit(const json& out) {
    std::cout << out.dump(2) << '\n';
    return 0;
}

int runModels(const Options& opts, bool requireSequence) {
    auto dkb = load(opts);
    if (requireSequence && dkb.kbs.size() < 2) spdlog::info("update with a single knowledge base");
    auto plan = choosePlan(opts, dkb, dkb.kbs.size() == 1);
    auto models = computeModels(opts, dkb, plan);
    json out;
    if (!opts.query.empty()) {
        Formula q = parseQuery(opts.query, *dkb.sig);
        bool holds = !models.empty() && std::all_of(models.begin(), models.end(), [&](const ModelSet& m) {
            return entails(m, q, opts.limits);
        });
        out["holds"] = holds;
        out["modelCount"] = models.size();
    } else {
        json list = json::array();
        for (const auto& m : models) list.push_back(modelJson(m, *dkb.sig));
        out["models"] = std::move(list);
    }
    if (opts.oracle) out["oracle"] = oracleCheck(dkb, models);
    emit(out);
    return models.empty() ? kSemanticFailure : 0;
}

int runSplit(const Options& opts) {
    auto dkb = load(opts);
    const auto& kb = dkb.kbs.front();
    PredSet split = opts.splitSet.empty() ? choosePlan(opts, dkb, true).sequence.front()
                                          : predsByName(opts.splitSet, *dkb.sig);
    auto report = isSplittingSet(split, kb);
    json violations = json::array();
    for (const auto& v : report.violations)
        violations.push_back({{"item", v.item},
                              {"inside", dkb.sig->predicate(v.inside).name},
                              {"outside", dkb.sig->predicate(v.outside).name}});
    json out{{"set", predNames(split, *dkb.sig)}, {"splittingSet", report.ok()}, {"violations", violations}};
    if (report.ok()) {
        out["bottom"] = kbJson(bottom(kb, split));
        out["top"] = kbJson(top(kb, split));
    }
    emit(out);
    return report.ok() ? 0 : kSemanticFailure;
}

int runLayers(const Options& opts) {
    auto dkb = load(opts);
    auto plan = choosePlan(opts, dkb, dkb.kbs.size() == 1);
    json layers = json::array();
    for (std::size_t i = 0; i < plan.sequence.size(); ++i) {
        PredSet added;
        auto prefix = layerPrefix(plan, i);
        for (PredId p : plan.sequence[i])
            if (!prefix.count(p)) added.insert(p);
        json slices = json::array();
        for (const auto& kb : layerSlice(dkb, plan, i).kbs) slices.push_back(kbJson(kb));
        layers.push_back({{"kind", layerKindName(plan.kinds[i])},
                          {"predicates", predNames(added, *dkb.sig)},
                          {"slices", std::move(slices)}});
    }
    emit({{"plan", planJson(plan, *dkb.sig)}, {"layers", std::move(layers)}});
    return 0;
}

int runCheckUpdatable(const Options& opts) {
    auto dkb = load(opts);
    json out;
    try {
        auto plan = choosePlan(opts, dkb, false);
        auto report = isUpdateEnabling(plan, dkb);
        std::size_t nonempty = 0;
        for (std::size_t i = 0; i < plan.sequence.size(); ++i) {
            auto slice = layerSlice(dkb, plan, i);
            if (std::any_of(slice.kbs.begin(), slice.kbs.end(),
                            [](const HybridKb& kb) { return !kb.ontology.empty() || !kb.program.empty(); }))
                ++nonempty;
        }
        json witnesses = json::array();
        for (const auto& layer : report.layers)
            if (!layer.witness.empty()) witnesses.push_back(layer.witness);
        out = {{"updatable", report.enabling},
               {"layers", nonempty},
               {"plan", planJson(plan, *dkb.sig)},
               {"kinds", kinds(plan)}};
        if (!report.planError.empty()) out["planError"] = report.planError;
        if (!witnesses.empty()) out["witnesses"] = std::move(witnesses);
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::NotUpdatable) throw;
        out = {{"updatable", false}, {"reason", e.what()}};
    }
    emit(out);
    return out["updatable"].get<bool>() ? 0 : kSemanticFailure;
}

int exitCodeFor(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::SyntaxError:
        case ErrorKind::UndeclaredSymbol:
        case ErrorKind::SortMismatch:
        case ErrorKind::UnsortableVariable:
        case ErrorKind::InvalidPlan: return kUsageError;
        default: return kSemanticFailure;
    }
}

void configureLogging() {
    auto logger = spdlog::stderr_color_mt("hybridmknf");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* level = std::getenv("HYBRIDMKNF_LOG")) spdlog::set_level(spdlog::level::from_str(level));
}

}  // namespace

int main(int argc, char** argv) {
    configureLogging();
    CLI::App app{"Reasoner and update engine for hybrid MKNF knowledge bases"};
    app.require_subcommand(1);
    app.fallthrough();
    Options opts;
    app.add_flag("--oracle", opts.oracle, "Solve mixed layers and cross-check results by brute force");
    app.add_option("--max-component-atoms", opts.limits.maxComponentAtoms, "Largest factor of a model set")
        ->capture_default_str();
    app.add_option("--max-branches", opts.limits.maxBranches, "Largest number of partial solutions")
        ->capture_default_str();

    auto* models = app.add_subcommand("models", "MKNF models of one knowledge base");
    models->add_option("kb", opts.files, "Knowledge base file")->required()->expected(1);
    models->add_option("--sequence", opts.sequence, "Splitting sequence as JSON");

    auto* update = app.add_subcommand("update", "Dynamic models of a sequence of knowledge bases");
    update->add_option("kbs", opts.files, "Knowledge base files, oldest first")->required();
    update->add_option("--sequence", opts.sequence, "Splitting sequence as JSON");
    update->add_option("--query", opts.query, "Report whether every model entails the query");

    auto* entail = app.add_subcommand("entail", "Entailment of a query by every model");
    entail->add_option("kbs", opts.files, "Knowledge base files, oldest first")->required();
    entail->add_option("--query", opts.query, "Query")->required();
    entail->add_option("--sequence", opts.sequence, "Splitting sequence as JSON");

    auto* split = app.add_subcommand("split", "Check a splitting set and show bottom and top");
    split->add_option("kb", opts.files, "Knowledge base file")->required()->expected(1);
    split->add_option("--set", opts.splitSet, "Predicate names")->delimiter(',');

    auto* layers = app.add_subcommand("layers", "Layering of a knowledge base sequence");
    layers->add_option("kbs", opts.files, "Knowledge base files")->required();
    layers->add_option("--sequence", opts.sequence, "Splitting sequence as JSON");

    auto* check = app.add_subcommand("check-updatable", "Look for an update-enabling splitting sequence");
    check->add_option("kbs", opts.files, "Knowledge base files")->required();
    check->add_option("--sequence", opts.sequence, "Splitting sequence as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        if (code == 0) return 0;
        std::cout << json{{"error", {{"kind", "UsageError"}, {"message", e.what()}}}}.dump(2) << '\n';
        return kUsageError;
    }

    try {
        if (*models || *entail) return runModels(opts, false);
        if (*update) return runModels(opts, true);
        if (*split) return runSplit(opts);
        if (*layers) return runLayers(opts);
        if (*check) return runCheckUpdatable(opts);
    } catch (const Error& e) {
        std::cout << json{{"error", {{"kind", errorKindName(e.kind())}, {"message", e.what()}}}}.dump(2) << '\n';
        spdlog::error("{}", e.what());
        return exitCodeFor(e.kind());
    }
    return kUsageError;
}
