#include "hybridmknf/winslett.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "solver.hpp"

namespace hmknf {

namespace {

void checkBlockSize(std::size_t atoms, const Limits& limits) {
    std::size_t cap = std::min(limits.maxComponentAtoms, kMaskBits);
    if (atoms > cap)
        throw Error(ErrorKind::ResourceLimit, "component of " + std::to_string(atoms) +
                                                  " atoms exceeds the limit of " + std::to_string(cap));
}

void checkParts(std::size_t parts, const Limits& limits) {
    if (parts > limits.maxParts)
        throw Error(ErrorKind::ResourceLimit, "component exceeds the budget of " +
                                                  std::to_string(limits.maxParts) + " parts");
}

std::vector<AtomId> symmetricDifference(const std::vector<AtomId>& a, const std::vector<AtomId>& b) {
    std::vector<AtomId> out;
    std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

std::vector<detail::SimplifiedTheory> simplifyAll(const std::vector<Theory>& theories) {
    std::vector<detail::SimplifiedTheory> out;
    out.reserve(theories.size());
    for (std::size_t i = 0; i < theories.size(); ++i) {
        out.push_back(detail::simplifyTheory(theories[i]));
        if (out.back().inconsistent)
            throw Error(ErrorKind::EmptyUpdate, "theory " + std::to_string(i) + " has no model");
    }
    return out;
}

std::vector<Mask> allMasks(std::size_t width) {
    std::vector<Mask> out(std::size_t{1} << width);
    std::iota(out.begin(), out.end(), Mask{0});
    return out;
}

}  // namespace

std::vector<AtomId> diff(PredId pred, const Interpretation& i, const Interpretation& j, const Signature& sig) {
    std::vector<AtomId> out;
    for (AtomId a : symmetricDifference(i.trueAtoms, j.trueAtoms))
        if (sig.predicateOf(a) == pred) out.push_back(a);
    return out;
}

bool atLeastAsClose(const Interpretation& base, const Interpretation& j, const Interpretation& jPrime,
                    const Signature& sig) {
    // Per-predicate inclusion of every diff is inclusion of the whole atom diff.
    (void)sig;
    auto dj = symmetricDifference(base.trueAtoms, j.trueAtoms);
    auto djp = symmetricDifference(base.trueAtoms, jPrime.trueAtoms);
    return std::includes(djp.begin(), djp.end(), dj.begin(), dj.end());
}

std::vector<Interpretation> pointUpdate(const Interpretation& base, const std::vector<Interpretation>& candidates,
                                        const Signature& sig) {
    std::vector<Interpretation> out;
    for (const auto& j : candidates) {
        bool dominated = std::any_of(candidates.begin(), candidates.end(), [&](const Interpretation& k) {
            return atLeastAsClose(base, k, j, sig) && !atLeastAsClose(base, j, k, sig);
        });
        if (!dominated && std::find(out.begin(), out.end(), j) == out.end()) out.push_back(j);
    }
    return out;
}

std::vector<Mask> pointUpdate(Mask base, const std::vector<Mask>& candidates) {
    std::vector<Mask> out;
    for (Mask j : candidates) {
        Mask dj = j ^ base;
        bool dominated = std::any_of(candidates.begin(), candidates.end(), [&](Mask k) {
            Mask dk = k ^ base;
            return dk != dj && (dk & ~dj) == 0;
        });
        if (!dominated) out.push_back(j);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ModelSet setUpdate(const ModelSet& m, const ModelSet& n, const Limits& limits) {
    // Group components of both sides that share atoms.
    const auto& mc = m.components();
    const auto& nc = n.components();
    std::size_t total = mc.size() + nc.size();
    std::vector<std::size_t> parent(total);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    std::map<AtomId, std::size_t> owner;
    auto visit = [&](const Component& c, std::size_t idx) {
        for (AtomId a : c.atoms) {
            auto [it, inserted] = owner.emplace(a, idx);
            if (!inserted) parent[find(idx)] = find(it->second);
        }
    };
    for (std::size_t i = 0; i < mc.size(); ++i) visit(mc[i], i);
    for (std::size_t i = 0; i < nc.size(); ++i) visit(nc[i], mc.size() + i);

    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < total; ++i) groups[find(i)].push_back(i);

    std::vector<Component> result;
    for (const auto& [root, members] : groups) {
        bool touchesM = false, touchesN = false;
        std::vector<AtomId> atoms;
        for (std::size_t idx : members) {
            const Component& c = idx < mc.size() ? mc[idx] : nc[idx - mc.size()];
            (idx < mc.size() ? touchesM : touchesN) = true;
            atoms.insert(atoms.end(), c.atoms.begin(), c.atoms.end());
        }
        std::sort(atoms.begin(), atoms.end());
        atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
        if (!touchesN) {
            // N leaves the group free, so every I is its own closest model.
            for (std::size_t idx : members) result.push_back(mc[idx]);
            continue;
        }
        if (!touchesM) {
            for (std::size_t idx : members) result.push_back(nc[idx - mc.size()]);
            continue;
        }
        checkBlockSize(atoms.size(), limits);
        auto mParts = expand(m, atoms, limits);
        auto nParts = expand(n, atoms, limits);
        std::unordered_set<Mask> nSet(nParts.begin(), nParts.end());
        std::vector<Mask> parts;
        for (Mask i : mParts) {
            if (nSet.count(i)) {
                parts.push_back(i);
                continue;
            }
            auto closest = pointUpdate(i, nParts);
            parts.insert(parts.end(), closest.begin(), closest.end());
        }
        std::sort(parts.begin(), parts.end());
        parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
        checkParts(parts.size(), limits);
        result.push_back({std::move(atoms), std::move(parts)});
    }
    return ModelSet(std::move(result));
}

ModelSet allModels(const Theory& theory, const Limits& limits) {
    return sequenceUpdateModel({theory}, limits);
}

ModelSet sequenceUpdateModel(const std::vector<Theory>& theories, const Limits& limits) {
    if (theories.empty()) return ModelSet::full();
    auto simplified = simplifyAll(theories);
    auto blocks = detail::partitionAtoms(simplified);
    std::vector<Component> components;
    for (const auto& block : blocks) {
        // The solver never enumerates a block exhaustively, so only the mask
        // width bounds it here; the cap applies to the stored factors below.
        if (block.size() > kMaskBits)
            throw Error(ErrorKind::ResourceLimit, "block of " + std::to_string(block.size()) + " atoms is too wide");
        std::vector<Mask> states;
        bool first = true;
        for (std::size_t i = 0; i < simplified.size(); ++i) {
            Theory slice = detail::sliceTheory(simplified[i], block);
            if (slice.empty()) {
                if (first) {
                    checkParts(std::size_t{1} << block.size(), limits);
                    states = allMasks(block.size());
                    first = false;
                }
                continue;
            }
            detail::ComponentSolver solver(block, slice);
            if (first) {
                states = solver.allModels(limits.maxParts);
                first = false;
            } else {
                // On atoms where the states form a full product, a model is
                // reached from the state that agrees with it there, so those
                // atoms can stay fixed in each query.
                std::unordered_set<Mask> stateSet(states.begin(), states.end());
                Mask freeAtoms = 0;
                for (std::size_t a = 0; a < block.size(); ++a) {
                    Mask bit = Mask{1} << a;
                    if (std::all_of(states.begin(), states.end(), [&](Mask s) { return stateSet.count(s ^ bit) != 0; }))
                        freeAtoms |= bit;
                }
                std::vector<Mask> next;
                for (Mask state : states) {
                    auto closest = solver.closest(state, freeAtoms);
                    next.insert(next.end(), closest.begin(), closest.end());
                }
                std::sort(next.begin(), next.end());
                next.erase(std::unique(next.begin(), next.end()), next.end());
                states = std::move(next);
            }
            if (states.empty())
                throw Error(ErrorKind::EmptyUpdate, "theory " + std::to_string(i) + " has no model");
            checkParts(states.size(), limits);
        }
        components.push_back({block, std::move(states)});
    }
    ModelSet out(std::move(components));
    for (const auto& c : out.components()) checkBlockSize(c.atoms.size(), limits);
    return out;
}

}  // namespace hmknf
