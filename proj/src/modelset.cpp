#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "hybridmknf/interp.hpp"

namespace hmknf {

namespace {

Mask bit(std::size_t i) { return Mask{1} << i; }

// Packs the bits of `m` found at `positions` into a dense mask.
Mask pack(Mask m, const std::vector<int>& positions) {
    Mask out = 0;
    for (std::size_t i = 0; i < positions.size(); ++i)
        if (m & bit(static_cast<std::size_t>(positions[i]))) out |= bit(i);
    return out;
}

void sortUnique(std::vector<Mask>& parts) {
    std::sort(parts.begin(), parts.end());
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
}

// Positions within `scope` of each atom of `subset`; -1 where absent.
std::vector<int> positionsIn(const std::vector<AtomId>& scope, const std::vector<AtomId>& subset) {
    std::vector<int> out(subset.size(), -1);
    for (std::size_t i = 0; i < subset.size(); ++i) {
        auto it = std::lower_bound(scope.begin(), scope.end(), subset[i]);
        if (it != scope.end() && *it == subset[i]) out[i] = static_cast<int>(it - scope.begin());
    }
    return out;
}

Component project(const Component& c, const std::vector<AtomId>& keep) {
    Component out;
    std::vector<int> positions;
    for (std::size_t i = 0; i < c.atoms.size(); ++i)
        if (std::binary_search(keep.begin(), keep.end(), c.atoms[i])) {
            out.atoms.push_back(c.atoms[i]);
            positions.push_back(static_cast<int>(i));
        }
    out.parts.reserve(c.parts.size());
    for (Mask p : c.parts) out.parts.push_back(pack(p, positions));
    sortUnique(out.parts);
    return out;
}

// Splits off fixed atoms and drops unconstrained ones.
void normalizeInto(Component c, std::vector<Component>& out) {
    sortUnique(c.parts);
    bool changed = true;
    while (changed && !c.atoms.empty()) {
        changed = false;
        std::unordered_set<Mask> present(c.parts.begin(), c.parts.end());
        for (std::size_t i = 0; i < c.atoms.size(); ++i) {
            Mask all = ~Mask{0}, any = 0;
            for (Mask p : c.parts) {
                all &= p;
                any |= p;
            }
            bool fixed = (all & bit(i)) || !(any & bit(i));
            bool free = std::all_of(c.parts.begin(), c.parts.end(),
                                    [&](Mask p) { return present.count(p ^ bit(i)) > 0; });
            if (!fixed && !free) continue;
            if (fixed && c.atoms.size() > 1) out.push_back({{c.atoms[i]}, {(all & bit(i)) ? Mask{1} : Mask{0}}});
            if (fixed && c.atoms.size() == 1) return out.push_back(c);
            std::vector<AtomId> rest;
            for (std::size_t j = 0; j < c.atoms.size(); ++j)
                if (j != i) rest.push_back(c.atoms[j]);
            c = project(c, rest);
            changed = true;
            break;
        }
    }
    if (!c.atoms.empty()) out.push_back(std::move(c));
}

// Natural join of two factors over the union of their scopes.
Component join(const Component& a, const Component& b, const Limits& limits) {
    Component out;
    std::set_union(a.atoms.begin(), a.atoms.end(), b.atoms.begin(), b.atoms.end(), std::back_inserter(out.atoms));
    if (out.atoms.size() > kMaskBits || out.atoms.size() > std::max<std::size_t>(limits.maxComponentAtoms, 1))
        throw Error(ErrorKind::ResourceLimit,
                    "merged component needs " + std::to_string(out.atoms.size()) + " atoms (limit " +
                        std::to_string(limits.maxComponentAtoms) + ")");
    auto posA = positionsIn(out.atoms, a.atoms);
    auto posB = positionsIn(out.atoms, b.atoms);
    auto widen = [](Mask m, const std::vector<int>& pos) {
        Mask w = 0;
        for (std::size_t i = 0; i < pos.size(); ++i)
            if (m & bit(i)) w |= bit(static_cast<std::size_t>(pos[i]));
        return w;
    };
    std::vector<AtomId> shared;
    std::set_intersection(a.atoms.begin(), a.atoms.end(), b.atoms.begin(), b.atoms.end(), std::back_inserter(shared));
    Mask sharedMask = 0;
    for (AtomId s : shared)
        sharedMask |= bit(static_cast<std::size_t>(positionsIn(out.atoms, {s})[0]));
    std::unordered_map<Mask, std::vector<Mask>> byShared;
    for (Mask q : b.parts) {
        Mask w = widen(q, posB);
        byShared[w & sharedMask].push_back(w);
    }
    for (Mask p : a.parts) {
        Mask w = widen(p, posA);
        auto it = byShared.find(w & sharedMask);
        if (it == byShared.end()) continue;
        for (Mask q : it->second) {
            out.parts.push_back(w | q);
            if (out.parts.size() > limits.maxParts)
                throw Error(ErrorKind::ResourceLimit, "merged component exceeds the part budget");
        }
    }
    sortUnique(out.parts);
    return out;
}

struct UnionFind {
    std::unordered_map<AtomId, AtomId> parent;
    AtomId find(AtomId x) {
        auto it = parent.find(x);
        if (it == parent.end()) {
            parent[x] = x;
            return x;
        }
        if (it->second == x) return x;
        AtomId root = find(it->second);
        parent[x] = root;
        return root;
    }
    void unite(AtomId a, AtomId b) { parent[find(a)] = find(b); }
};

// Groups components (tagged by source) whose scopes overlap transitively.
std::vector<std::vector<const Component*>> overlapGroups(const std::vector<const Component*>& comps) {
    UnionFind uf;
    for (const auto* c : comps)
        for (AtomId a : c->atoms) uf.unite(a, c->atoms.front());
    std::map<AtomId, std::vector<const Component*>> groups;
    for (const auto* c : comps) groups[uf.find(c->atoms.front())].push_back(c);
    std::vector<std::vector<const Component*>> out;
    for (auto& [root, g] : groups) out.push_back(std::move(g));
    return out;
}

Component joinAll(const std::vector<const Component*>& group, const Limits& limits) {
    Component acc = *group.front();
    for (std::size_t i = 1; i < group.size(); ++i) {
        acc = join(acc, *group[i], limits);
        if (acc.parts.empty()) break;
    }
    return acc;
}

}  // namespace

bool Interpretation::holds(AtomId atom) const {
    return std::binary_search(trueAtoms.begin(), trueAtoms.end(), atom);
}

Interpretation restrictTo(const Interpretation& interp, const std::vector<AtomId>& atoms) {
    Interpretation out;
    for (AtomId a : interp.scope)
        if (std::binary_search(atoms.begin(), atoms.end(), a)) out.scope.push_back(a);
    for (AtomId a : interp.trueAtoms)
        if (std::binary_search(atoms.begin(), atoms.end(), a)) out.trueAtoms.push_back(a);
    return out;
}

ModelSet::ModelSet(std::vector<Component> components) {
    std::vector<AtomId> seen;
    for (auto& c : components) {
        if (c.parts.empty()) throw std::invalid_argument("component with no parts");
        if (c.atoms.size() > kMaskBits) throw std::invalid_argument("component wider than a mask");
        if (!std::is_sorted(c.atoms.begin(), c.atoms.end()))
            throw std::invalid_argument("component atoms must be sorted");
        seen.insert(seen.end(), c.atoms.begin(), c.atoms.end());
        normalizeInto(std::move(c), components_);
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw std::invalid_argument("component scopes overlap");
    std::sort(components_.begin(), components_.end(),
              [](const Component& a, const Component& b) { return a.atoms.front() < b.atoms.front(); });
}

ModelSet ModelSet::unnormalized(std::vector<Component> components) {
    ModelSet out;
    out.components_ = std::move(components);
    return out;
}

ModelSet ModelSet::upSet(const std::vector<AtomId>& trueAtoms) {
    std::vector<Component> comps;
    for (AtomId a : trueAtoms) comps.push_back({{a}, {1}});
    std::sort(comps.begin(), comps.end(), [](auto& x, auto& y) { return x.atoms < y.atoms; });
    comps.erase(std::unique(comps.begin(), comps.end()), comps.end());
    return ModelSet(std::move(comps));
}

std::vector<AtomId> ModelSet::constrainedAtoms() const {
    std::vector<AtomId> out;
    for (const auto& c : components_) out.insert(out.end(), c.atoms.begin(), c.atoms.end());
    std::sort(out.begin(), out.end());
    return out;
}

int ModelSet::componentOf(AtomId atom) const {
    for (std::size_t i = 0; i < components_.size(); ++i)
        if (std::binary_search(components_[i].atoms.begin(), components_[i].atoms.end(), atom))
            return static_cast<int>(i);
    return -1;
}

long double ModelSet::size() const {
    long double total = 1;
    for (const auto& c : components_) total *= static_cast<long double>(c.parts.size());
    return total;
}

bool ModelSet::contains(const std::vector<AtomId>& trueAtoms) const {
    for (const auto& c : components_) {
        Mask m = 0;
        for (std::size_t i = 0; i < c.atoms.size(); ++i)
            if (std::binary_search(trueAtoms.begin(), trueAtoms.end(), c.atoms[i])) m |= bit(i);
        if (!std::binary_search(c.parts.begin(), c.parts.end(), m)) return false;
    }
    return true;
}

ModelSet restrict(const ModelSet& m, const std::vector<AtomId>& atoms) {
    std::vector<Component> out;
    for (const auto& c : m.components()) {
        auto p = project(c, atoms);
        if (!p.atoms.empty()) out.push_back(std::move(p));
    }
    return ModelSet(std::move(out));
}

ModelSet restrict(const ModelSet& m, const PredSet& preds, const Signature& sig) {
    return restrict(m, sig.atomsOf(preds));
}

// Restriction already leaves everything outside the predicates unconstrained,
// which is exactly the greatest interpretation agreeing with m on them.
ModelSet saturate(const ModelSet& m, const PredSet& preds, const Signature& sig) {
    return restrict(m, preds, sig);
}

ModelSet intersect(const ModelSet& a, const ModelSet& b, const Limits& limits) {
    std::vector<const Component*> all;
    for (const auto& c : a.components()) all.push_back(&c);
    for (const auto& c : b.components()) all.push_back(&c);
    std::vector<Component> out;
    for (const auto& group : overlapGroups(all)) {
        Component joined = joinAll(group, limits);
        if (joined.parts.empty())
            throw Error(ErrorKind::EmptyIntersection, "model sets have no interpretation in common");
        out.push_back(std::move(joined));
    }
    return ModelSet(std::move(out));
}

ModelSet mergeComponents(const ModelSet& m, const std::vector<AtomId>& atoms, const Limits& limits) {
    std::vector<const Component*> touched;
    std::vector<Component> out;
    for (const auto& c : m.components()) {
        bool hit = std::any_of(atoms.begin(), atoms.end(), [&](AtomId x) {
            return std::binary_search(c.atoms.begin(), c.atoms.end(), x);
        });
        if (hit)
            touched.push_back(&c);
        else
            out.push_back(c);
    }
    if (touched.size() <= 1) return m;
    out.push_back(joinAll(touched, limits));
    std::sort(out.begin(), out.end(), [](auto& x, auto& y) { return x.atoms.front() < y.atoms.front(); });
    return ModelSet::unnormalized(std::move(out));
}

bool holdsK(const ModelSet& m, const Formula& f) {
    auto atoms = atomsOf(f);
    int comp = -1;
    std::vector<AtomId> freeAtoms;
    for (AtomId a : atoms) {
        int c = m.componentOf(a);
        if (c < 0) {
            freeAtoms.push_back(a);
        } else if (comp < 0) {
            comp = c;
        } else if (comp != c) {
            throw Error(ErrorKind::CrossComponentFormula, "formula spans several components");
        }
    }
    if (freeAtoms.size() > 24) throw Error(ErrorKind::ResourceLimit, "formula has too many unconstrained atoms");
    static const Component kEmpty{{}, {0}};
    const Component& c = comp < 0 ? kEmpty : m.components()[static_cast<std::size_t>(comp)];
    Mask freeCount = Mask{1} << freeAtoms.size();
    for (Mask part : c.parts) {
        for (Mask freeBits = 0; freeBits < freeCount; ++freeBits) {
            auto value = [&](AtomId a) {
                auto it = std::lower_bound(c.atoms.begin(), c.atoms.end(), a);
                if (it != c.atoms.end() && *it == a) return (part & bit(static_cast<std::size_t>(it - c.atoms.begin()))) != 0;
                auto fit = std::lower_bound(freeAtoms.begin(), freeAtoms.end(), a);
                return (freeBits & bit(static_cast<std::size_t>(fit - freeAtoms.begin()))) != 0;
            };
            if (!evalObjective(f, value)) return false;
        }
    }
    return true;
}

bool holdsNot(const ModelSet& m, const Formula& f) { return !holdsK(m, f); }

namespace {

bool knownMerged(const ModelSet& m, const Formula& f, const Limits& limits) {
    std::vector<Formula> conjuncts;
    flattenConjunction(f, conjuncts);
    for (const auto& c : conjuncts) {
        if (c->op == Op::False) return false;
        try {
            if (!holdsK(m, c)) return false;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::CrossComponentFormula) throw;
            if (!holdsK(mergeComponents(m, atomsOf(c), limits), c)) return false;
        }
    }
    return true;
}

// Replaces every modal subformula by its truth value under (M, M).
Formula resolveModal(const ModelSet& m, const Formula& f, const Limits& limits) {
    switch (f->op) {
        case Op::Know: return knownMerged(m, f->kids[0], limits) ? top() : bot();
        case Op::NotDefault: return knownMerged(m, f->kids[0], limits) ? bot() : top();
        case Op::Neg: return neg(resolveModal(m, f->kids[0], limits));
        case Op::And:
        case Op::Or: {
            std::vector<Formula> kids;
            for (const auto& k : f->kids) kids.push_back(resolveModal(m, k, limits));
            return f->op == Op::And ? conj(std::move(kids)) : disj(std::move(kids));
        }
        case Op::Implies:
            return implies(resolveModal(m, f->kids[0], limits), resolveModal(m, f->kids[1], limits));
        default: return f;
    }
}

}  // namespace

bool satisfiesSentence(const ModelSet& m, const Formula& f, const Limits& limits) {
    Formula residual = resolveModal(m, f, limits);
    if (residual->op == Op::True) return true;
    if (residual->op == Op::False) return false;
    return knownMerged(m, residual, limits);
}

bool satisfiesS5(const ModelSet& m, const Theory& t, const Limits& limits) {
    return std::all_of(t.begin(), t.end(), [&](const Formula& f) { return satisfiesSentence(m, f, limits); });
}

std::vector<Mask> expand(const ModelSet& m, const std::vector<AtomId>& atoms, const Limits& limits) {
    if (atoms.size() > kMaskBits) throw Error(ErrorKind::ResourceLimit, "too many atoms to expand");
    std::vector<Mask> acc{0};
    std::vector<AtomId> covered;
    for (const auto& c : m.components()) {
        auto p = project(c, atoms);
        if (p.atoms.empty()) continue;
        auto pos = positionsIn(atoms, p.atoms);
        std::vector<Mask> next;
        for (Mask base : acc)
            for (Mask part : p.parts) {
                Mask w = base;
                for (std::size_t i = 0; i < pos.size(); ++i)
                    if (part & bit(i)) w |= bit(static_cast<std::size_t>(pos[i]));
                next.push_back(w);
            }
        if (next.size() > limits.maxParts) throw Error(ErrorKind::ResourceLimit, "expansion exceeds the part budget");
        acc = std::move(next);
        covered.insert(covered.end(), p.atoms.begin(), p.atoms.end());
    }
    std::sort(covered.begin(), covered.end());
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (std::binary_search(covered.begin(), covered.end(), atoms[i])) continue;
        std::size_t n = acc.size();
        for (std::size_t j = 0; j < n; ++j) acc.push_back(acc[j] | bit(i));
        if (acc.size() > limits.maxParts) throw Error(ErrorKind::ResourceLimit, "expansion exceeds the part budget");
    }
    sortUnique(acc);
    return acc;
}

bool sameDenotation(const ModelSet& a, const ModelSet& b, const Limits& limits) {
    std::vector<const Component*> all;
    for (const auto& c : a.components()) all.push_back(&c);
    for (const auto& c : b.components()) all.push_back(&c);
    for (const auto& group : overlapGroups(all)) {
        std::vector<AtomId> atoms;
        for (const auto* c : group) atoms.insert(atoms.end(), c->atoms.begin(), c->atoms.end());
        std::sort(atoms.begin(), atoms.end());
        atoms.erase(std::unique(atoms.begin(), atoms.end()), atoms.end());
        if (expand(a, atoms, limits) != expand(b, atoms, limits)) return false;
    }
    return true;
}

ModelSet fromExplicit(const std::vector<AtomId>& atoms, std::vector<Mask> parts) {
    if (atoms.empty()) return ModelSet::full();
    std::vector<std::size_t> order(atoms.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return atoms[x] < atoms[y]; });
    Component c;
    for (std::size_t i : order) c.atoms.push_back(atoms[i]);
    std::vector<int> positions(order.begin(), order.end());
    for (Mask p : parts) c.parts.push_back(pack(p, positions));
    return ModelSet({std::move(c)});
}

std::vector<AtomId> maskToAtoms(Mask mask, const std::vector<AtomId>& atoms) {
    std::vector<AtomId> out;
    for (std::size_t i = 0; i < atoms.size(); ++i)
        if (mask & bit(i)) out.push_back(atoms[i]);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace hmknf
