#include "hybridmknf/signature.hpp"

#include <algorithm>
#include <cctype>

#include "hybridmknf/error.hpp"

namespace hmknf {

const char* errorKindName(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::UndeclaredSymbol: return "UndeclaredSymbol";
        case ErrorKind::SortMismatch: return "SortMismatch";
        case ErrorKind::UnsortableVariable: return "UnsortableVariable";
        case ErrorKind::EmptyIntersection: return "EmptyIntersection";
        case ErrorKind::EmptyUpdate: return "EmptyUpdate";
        case ErrorKind::CrossComponentFormula: return "CrossComponentFormula";
        case ErrorKind::ResourceLimit: return "ResourceLimit";
        case ErrorKind::MixedLayer: return "MixedLayer";
        case ErrorKind::InvalidPlan: return "InvalidPlan";
        case ErrorKind::NotUpdatable: return "NotUpdatable";
        case ErrorKind::NotUpdateEnabling: return "NotUpdateEnabling";
    }
    return "Error";
}

namespace {

template <typename Decl>
std::optional<std::uint32_t> findByName(const std::vector<Decl>& decls, const std::string& name) {
    for (std::uint32_t i = 0; i < decls.size(); ++i)
        if (decls[i].name == name) return i;
    return std::nullopt;
}

}  // namespace

SortId Signature::Builder::addSort(const std::string& name) {
    if (auto existing = findSort(name)) return *existing;
    sorts_.push_back({name, {}});
    return static_cast<SortId>(sorts_.size() - 1);
}

ConstId Signature::Builder::addConstant(const std::string& name, SortId sort) {
    if (auto existing = findConstant(name)) {
        if (consts_[*existing].sort != sort)
            throw Error(ErrorKind::SortMismatch, "constant '" + name + "' redeclared with another sort");
        return *existing;
    }
    consts_.push_back({name, sort});
    auto id = static_cast<ConstId>(consts_.size() - 1);
    sorts_.at(sort).members.push_back(id);
    return id;
}

PredId Signature::Builder::addPredicate(const std::string& name, const std::vector<SortId>& argSorts) {
    if (auto existing = findPredicate(name)) {
        if (preds_[*existing].argSorts != argSorts)
            throw Error(ErrorKind::SortMismatch, "predicate '" + name + "' redeclared with another signature");
        return *existing;
    }
    preds_.push_back({name, argSorts, 0, 0});
    return static_cast<PredId>(preds_.size() - 1);
}

std::optional<SortId> Signature::Builder::findSort(const std::string& name) const {
    return findByName(sorts_, name);
}
std::optional<ConstId> Signature::Builder::findConstant(const std::string& name) const {
    return findByName(consts_, name);
}
std::optional<PredId> Signature::Builder::findPredicate(const std::string& name) const {
    return findByName(preds_, name);
}

std::shared_ptr<const Signature> Signature::Builder::build() const {
    auto sig = std::make_shared<Signature>();
    sig->sorts_ = sorts_;
    sig->consts_ = consts_;
    sig->preds_ = preds_;
    AtomId next = 0;
    for (PredId p = 0; p < sig->preds_.size(); ++p) {
        auto& decl = sig->preds_[p];
        std::size_t count = 1;
        for (SortId s : decl.argSorts) count *= sig->sorts_[s].members.size();
        decl.firstAtom = next;
        decl.atomCount = count;
        next += static_cast<AtomId>(count);
        sig->atomPred_.insert(sig->atomPred_.end(), count, p);
        sig->predIndex_[decl.name] = p;
    }
    sig->atomCount_ = next;
    for (SortId s = 0; s < sig->sorts_.size(); ++s) sig->sortIndex_[sig->sorts_[s].name] = s;
    for (ConstId c = 0; c < sig->consts_.size(); ++c) sig->constIndex_[sig->consts_[c].name] = c;
    return sig;
}

std::optional<SortId> Signature::findSort(const std::string& name) const {
    auto it = sortIndex_.find(name);
    if (it == sortIndex_.end()) return std::nullopt;
    return it->second;
}
std::optional<ConstId> Signature::findConstant(const std::string& name) const {
    auto it = constIndex_.find(name);
    if (it == constIndex_.end()) return std::nullopt;
    return it->second;
}
std::optional<PredId> Signature::findPredicate(const std::string& name) const {
    auto it = predIndex_.find(name);
    if (it == predIndex_.end()) return std::nullopt;
    return it->second;
}

AtomId Signature::atom(PredId pred, std::span<const ConstId> args) const {
    const auto& decl = preds_.at(pred);
    if (args.size() != decl.argSorts.size())
        throw Error(ErrorKind::SortMismatch, "wrong arity for predicate '" + decl.name + "'");
    std::size_t offset = 0;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const auto& members = sorts_[decl.argSorts[i]].members;
        auto pos = std::find(members.begin(), members.end(), args[i]);
        if (pos == members.end())
            throw Error(ErrorKind::SortMismatch, "constant '" + consts_.at(args[i]).name +
                                                     "' does not fit argument " + std::to_string(i + 1) +
                                                     " of '" + decl.name + "'");
        offset = offset * members.size() + static_cast<std::size_t>(pos - members.begin());
    }
    return decl.firstAtom + static_cast<AtomId>(offset);
}

PredId Signature::predicateOf(AtomId atom) const { return atomPred_.at(atom); }

std::vector<ConstId> Signature::argumentsOf(AtomId atom) const {
    const auto& decl = preds_[predicateOf(atom)];
    std::size_t offset = atom - decl.firstAtom;
    std::vector<ConstId> args(decl.argSorts.size());
    for (std::size_t i = args.size(); i-- > 0;) {
        const auto& members = sorts_[decl.argSorts[i]].members;
        args[i] = members[offset % members.size()];
        offset /= members.size();
    }
    return args;
}

std::string Signature::quoteConstant(const std::string& name) {
    bool plain = !name.empty() && (std::islower(static_cast<unsigned char>(name[0])) || name[0] == '$');
    for (char ch : name)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '$') plain = false;
    return plain ? name : "'" + name + "'";
}

std::string Signature::atomName(AtomId atom) const {
    const auto& decl = preds_[predicateOf(atom)];
    std::string out = decl.name;
    if (decl.argSorts.empty()) return out;
    out += '(';
    auto args = argumentsOf(atom);
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ',';
        out += quoteConstant(consts_[args[i]].name);
    }
    out += ')';
    return out;
}

AtomId Signature::atomByName(const std::string& text) const {
    std::string compact;
    bool quoted = false;
    for (char ch : text) {
        if (ch == '\'') quoted = !quoted;
        if (!quoted && std::isspace(static_cast<unsigned char>(ch))) continue;
        compact += ch;
    }
    auto open = compact.find('(');
    std::string name = compact.substr(0, open);
    auto pred = findPredicate(name);
    if (!pred) throw Error(ErrorKind::UndeclaredSymbol, "undeclared predicate '" + name + "'");
    std::vector<ConstId> args;
    if (open != std::string::npos) {
        if (compact.back() != ')') throw Error(ErrorKind::SyntaxError, "malformed atom '" + text + "'");
        std::string inner = compact.substr(open + 1, compact.size() - open - 2);
        std::size_t start = 0;
        while (start <= inner.size()) {
            auto comma = inner.find(',', start);
            std::string arg = inner.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
            if (arg.size() >= 2 && arg.front() == '\'' && arg.back() == '\'') arg = arg.substr(1, arg.size() - 2);
            auto c = findConstant(arg);
            if (!c) throw Error(ErrorKind::UndeclaredSymbol, "undeclared constant '" + arg + "'");
            args.push_back(*c);
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
    }
    return atom(*pred, args);
}

std::vector<AtomId> Signature::atomsOf(PredId pred) const {
    const auto& decl = preds_.at(pred);
    std::vector<AtomId> out(decl.atomCount);
    for (std::size_t i = 0; i < decl.atomCount; ++i) out[i] = decl.firstAtom + static_cast<AtomId>(i);
    return out;
}

std::vector<AtomId> Signature::atomsOf(const PredSet& preds) const {
    std::vector<AtomId> out;
    for (PredId p : preds) {
        auto atoms = atomsOf(p);
        out.insert(out.end(), atoms.begin(), atoms.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

PredSet Signature::allPredicates() const {
    PredSet out;
    for (PredId p = 0; p < preds_.size(); ++p) out.insert(p);
    return out;
}

}  // namespace hmknf
