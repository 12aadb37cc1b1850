#include "hybridmknf/oracle.hpp"

#include <algorithm>
#include <map>

namespace hmknf::oracle {

namespace {

using SetBits = std::uint64_t;  // bit k: interpretation with mask k is in the set

void requireAtoms(std::size_t count, std::size_t cap, const char* what) {
    if (count > cap)
        throw Error(ErrorKind::ResourceLimit, std::string(what) + " oracle supports at most " +
                                                  std::to_string(cap) + " atoms, got " + std::to_string(count));
}

std::size_t bitOf(const std::vector<AtomId>& atoms, AtomId a) {
    auto it = std::lower_bound(atoms.begin(), atoms.end(), a);
    if (it == atoms.end() || *it != a)
        throw Error(ErrorKind::UndeclaredSymbol, "atom " + std::to_string(a) + " outside the oracle scope");
    return static_cast<std::size_t>(it - atoms.begin());
}

bool holdsIn(Mask interp, const Formula& f, const std::vector<AtomId>& atoms) {
    return evalObjective(f, [&](AtomId a) { return (interp >> bitOf(atoms, a) & 1u) != 0; });
}

// (I, M', N) |= f with M' and N given as interpretation bitsets.
bool evalMknf(const Formula& f, Mask interp, SetBits first, SetBits second, const std::vector<AtomId>& atoms) {
    auto all = [&](SetBits set, const Formula& g) {
        for (Mask j = 0; j < 64; ++j)
            if ((set >> j & 1u) && !evalMknf(g, j, first, second, atoms)) return false;
        return true;
    };
    switch (f->op) {
        case Op::True: return true;
        case Op::False: return false;
        case Op::Atom: return (interp >> bitOf(atoms, f->atom) & 1u) != 0;
        case Op::Neg: return !evalMknf(f->kids[0], interp, first, second, atoms);
        case Op::And:
            return std::all_of(f->kids.begin(), f->kids.end(),
                               [&](const Formula& k) { return evalMknf(k, interp, first, second, atoms); });
        case Op::Or:
            return std::any_of(f->kids.begin(), f->kids.end(),
                               [&](const Formula& k) { return evalMknf(k, interp, first, second, atoms); });
        case Op::Implies:
            return !evalMknf(f->kids[0], interp, first, second, atoms) ||
                   evalMknf(f->kids[1], interp, first, second, atoms);
        case Op::Know: return all(first, f->kids[0]);
        case Op::NotDefault: return !all(second, f->kids[0]);
    }
    return false;
}

bool satisfiesAll(const Theory& sentences, Mask interp, SetBits first, SetBits second,
                  const std::vector<AtomId>& atoms) {
    return std::all_of(sentences.begin(), sentences.end(),
                       [&](const Formula& f) { return evalMknf(f, interp, first, second, atoms); });
}

ExplicitSet fromBits(SetBits set) {
    ExplicitSet out;
    for (Mask j = 0; j < 64; ++j)
        if (set >> j & 1u) out.push_back(j);
    return out;
}

bool bodyHolds(const Rule& r, Mask interp, const std::vector<AtomId>& atoms) {
    return std::all_of(r.body.begin(), r.body.end(), [&](const Literal& l) {
        return ((interp >> bitOf(atoms, l.atom) & 1u) != 0) != l.negated;
    });
}

// Least model over literals; returns (positive, default) masks.
std::pair<Mask, Mask> leastLiteralModel(const std::vector<Rule>& rules, Mask defaults,
                                        const std::vector<AtomId>& atoms) {
    Mask pos = 0, neg = defaults;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : rules) {
            bool fire = std::all_of(r.body.begin(), r.body.end(), [&](const Literal& l) {
                Mask bit = Mask{1} << bitOf(atoms, l.atom);
                return (l.negated ? neg : pos) & bit;
            });
            if (!fire) continue;
            Mask bit = Mask{1} << bitOf(atoms, r.head.atom);
            Mask& target = r.head.negated ? neg : pos;
            if (!(target & bit)) {
                target |= bit;
                changed = true;
            }
        }
    }
    return {pos, neg};
}

Mask fullMask(std::size_t width) { return width >= 64 ? ~Mask{0} : (Mask{1} << width) - 1; }

}  // namespace

ExplicitSet bruteFoModels(const Theory& theory, const std::vector<AtomId>& atoms) {
    requireAtoms(atoms.size(), kMaxFoAtoms, "classical");
    ExplicitSet out;
    for (Mask i = 0; i < (Mask{1} << atoms.size()); ++i)
        if (std::all_of(theory.begin(), theory.end(), [&](const Formula& f) { return holdsIn(i, f, atoms); }))
            out.push_back(i);
    return out;
}

std::vector<ExplicitSet> bruteMknfModels(const Theory& sentences, const std::vector<AtomId>& atoms) {
    requireAtoms(atoms.size(), kMaxMknfAtoms, "MKNF");
    std::size_t interps = std::size_t{1} << atoms.size();
    SetBits universe = interps >= 64 ? ~SetBits{0} : (SetBits{1} << interps) - 1;
    auto isS5Model = [&](SetBits m) {
        for (Mask i = 0; i < interps; ++i)
            if ((m >> i & 1u) && !satisfiesAll(sentences, i, m, m, atoms)) return false;
        return true;
    };
    std::vector<ExplicitSet> out;
    for (SetBits m = 1; m <= universe; ++m) {
        if (!isS5Model(m)) continue;
        bool maximal = true;
        SetBits rest = universe & ~m;
        // Every nonempty addition over M.
        for (SetBits extra = rest; extra != 0 && maximal; extra = (extra - 1) & rest) {
            SetBits bigger = m | extra;
            bool someFails = false;
            for (Mask i = 0; i < interps && !someFails; ++i)
                if ((bigger >> i & 1u) && !satisfiesAll(sentences, i, bigger, m, atoms)) someFails = true;
            if (!someFails) maximal = false;
        }
        if (maximal) out.push_back(fromBits(m));
        if (m == universe) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<ExplicitSet> bruteMknfModels(const HybridKb& kb, const std::vector<AtomId>& atoms) {
    return bruteMknfModels(pi(kb), atoms);
}

ExplicitSet bruteWinslett(const ExplicitSet& m, const ExplicitSet& n, const std::vector<AtomId>& atoms,
                          const Signature& sig) {
    requireAtoms(atoms.size(), kMaxWinslettAtoms, "update");
    std::map<PredId, Mask> predMask;
    for (std::size_t k = 0; k < atoms.size(); ++k) predMask[sig.predicateOf(atoms[k])] |= Mask{1} << k;
    // j <=_i k: for every predicate, diff(i, j) within diff(i, k).
    auto closerOrEqual = [&](Mask i, Mask j, Mask k) {
        for (const auto& [p, bits] : predMask) {
            Mask dj = (i ^ j) & bits, dk = (i ^ k) & bits;
            if (dj & ~dk) return false;
        }
        return true;
    };
    ExplicitSet out;
    for (Mask i : m)
        for (Mask j : n) {
            bool minimal = std::none_of(n.begin(), n.end(), [&](Mask k) {
                return closerOrEqual(i, k, j) && !closerOrEqual(i, j, k);
            });
            if (minimal) out.push_back(j);
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ExplicitSet bruteWinslettFold(const std::vector<Theory>& theories, const std::vector<AtomId>& atoms,
                              const Signature& sig) {
    requireAtoms(atoms.size(), kMaxWinslettAtoms, "update");
    ExplicitSet state;
    for (Mask i = 0; i < (Mask{1} << atoms.size()); ++i) state.push_back(i);
    for (const auto& t : theories) state = bruteWinslett(state, bruteFoModels(t, atoms), atoms, sig);
    return state;
}

ExplicitSet bruteDynStable(const Dlp& dlp, const std::vector<AtomId>& atoms) {
    requireAtoms(atoms.size(), kMaxDlpAtoms, "dynamic program");
    ExplicitSet out;
    for (Mask i = 0; i < (Mask{1} << atoms.size()); ++i) {
        std::vector<Rule> kept;
        for (std::size_t layer = 0; layer < dlp.size(); ++layer)
            for (const auto& r : dlp[layer]) {
                bool rejected = false;
                for (std::size_t later = layer; later < dlp.size() && !rejected; ++later)
                    for (const auto& other : dlp[later])
                        if (other.head == r.head.complement() && bodyHolds(other, i, atoms)) rejected = true;
                if (!rejected) kept.push_back(r);
            }
        Mask defaults = 0;
        for (std::size_t k = 0; k < atoms.size(); ++k) {
            bool supported = false;
            for (const auto& prog : dlp)
                for (const auto& r : prog)
                    if (r.head == Literal{atoms[k], false} && bodyHolds(r, i, atoms)) supported = true;
            if (!supported) defaults |= Mask{1} << k;
        }
        auto [pos, neg] = leastLiteralModel(kept, defaults, atoms);
        if (pos == i && neg == (fullMask(atoms.size()) & ~i)) out.push_back(i);
    }
    return out;
}

ExplicitSet bruteStable(const Program& program, const std::vector<AtomId>& atoms) {
    requireAtoms(atoms.size(), kMaxDlpAtoms, "program");
    ExplicitSet out;
    for (Mask i = 0; i < (Mask{1} << atoms.size()); ++i) {
        auto [pos, neg] = leastLiteralModel(program, fullMask(atoms.size()) & ~i, atoms);
        if (pos == i && neg == (fullMask(atoms.size()) & ~i)) out.push_back(i);
    }
    return out;
}

ExplicitSet upSet(Mask model, std::size_t width) {
    ExplicitSet out;
    for (Mask j = 0; j < (Mask{1} << width); ++j)
        if ((j & model) == model) out.push_back(j);
    return out;
}

ExplicitSet toExplicit(const ModelSet& m, const std::vector<AtomId>& atoms) {
    Limits limits;
    limits.maxComponentAtoms = kMaxFoAtoms;
    auto out = expand(m, atoms, limits);
    std::sort(out.begin(), out.end());
    return out;
}

ModelSet fromExplicitSet(const ExplicitSet& set, const std::vector<AtomId>& atoms) {
    return fromExplicit(atoms, set);
}

MixedLayerSolver mixedLayerSolver() {
    return [](const HybridKb& layer) {
        Theory sentences = pi(layer);
        auto atoms = atomsOf(sentences);
        std::vector<ModelSet> out;
        for (const auto& model : bruteMknfModels(sentences, atoms)) out.push_back(fromExplicitSet(model, atoms));
        return out;
    };
}

}  // namespace hmknf::oracle
