#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace hmknf {

using AtomId = std::uint32_t;
using PredId = std::uint32_t;
using ConstId = std::uint32_t;
using SortId = std::uint32_t;

using PredSet = std::set<PredId>;

struct SortDecl {
    std::string name;
    std::vector<ConstId> members;
};

struct ConstDecl {
    std::string name;
    SortId sort;
};

struct PredDecl {
    std::string name;
    std::vector<SortId> argSorts;
    AtomId firstAtom = 0;
    std::size_t atomCount = 0;
};

// Declared sorts, constants and predicates with a dense index over every
// well-sorted ground atom. Immutable once built.
class Signature {
public:
    class Builder {
    public:
        SortId addSort(const std::string& name);
        ConstId addConstant(const std::string& name, SortId sort);
        PredId addPredicate(const std::string& name, const std::vector<SortId>& argSorts);
        std::optional<SortId> findSort(const std::string& name) const;
        std::optional<ConstId> findConstant(const std::string& name) const;
        std::optional<PredId> findPredicate(const std::string& name) const;
        const PredDecl& predicate(PredId id) const { return preds_[id]; }
        const ConstDecl& constant(ConstId id) const { return consts_[id]; }
        const SortDecl& sort(SortId id) const { return sorts_[id]; }
        std::shared_ptr<const Signature> build() const;

    private:
        std::vector<SortDecl> sorts_;
        std::vector<ConstDecl> consts_;
        std::vector<PredDecl> preds_;
    };

    std::size_t atomCount() const { return atomCount_; }
    std::size_t predicateCount() const { return preds_.size(); }
    std::size_t constantCount() const { return consts_.size(); }
    std::size_t sortCount() const { return sorts_.size(); }

    const PredDecl& predicate(PredId id) const { return preds_[id]; }
    const ConstDecl& constant(ConstId id) const { return consts_[id]; }
    const SortDecl& sort(SortId id) const { return sorts_[id]; }

    std::optional<SortId> findSort(const std::string& name) const;
    std::optional<ConstId> findConstant(const std::string& name) const;
    std::optional<PredId> findPredicate(const std::string& name) const;

    // Throws SortMismatch when an argument has the wrong sort.
    AtomId atom(PredId pred, std::span<const ConstId> args) const;
    AtomId atom(PredId pred, std::initializer_list<ConstId> args) const {
        return atom(pred, std::span<const ConstId>(args.begin(), args.size()));
    }
    PredId predicateOf(AtomId atom) const;
    std::vector<ConstId> argumentsOf(AtomId atom) const;
    std::string atomName(AtomId atom) const;
    // Parses "Pred(c1,c2)" or "p"; throws UndeclaredSymbol / SortMismatch.
    AtomId atomByName(const std::string& text) const;

    std::vector<AtomId> atomsOf(PredId pred) const;
    std::vector<AtomId> atomsOf(const PredSet& preds) const;
    PredSet allPredicates() const;

    static std::string quoteConstant(const std::string& name);

private:
    std::vector<SortDecl> sorts_;
    std::vector<ConstDecl> consts_;
    std::vector<PredDecl> preds_;
    std::map<std::string, SortId> sortIndex_;
    std::map<std::string, ConstId> constIndex_;
    std::map<std::string, PredId> predIndex_;
    std::vector<PredId> atomPred_;
    std::size_t atomCount_ = 0;
};

using SignaturePtr = std::shared_ptr<const Signature>;

}  // namespace hmknf
