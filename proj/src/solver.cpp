#include "solver.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "hybridmknf/error.hpp"

namespace hmknf::detail {

namespace {

constexpr std::uint32_t lit(std::uint32_t var, bool negated) { return 2 * var + (negated ? 1u : 0u); }

}  // namespace

ComponentSolver::ComponentSolver(std::vector<AtomId> atoms, const Theory& formulas)
    : atoms_(std::move(atoms)), formulas_(formulas) {
    if (atoms_.size() > kMaskBits) throw Error(ErrorKind::ResourceLimit, "component wider than 64 atoms");
    varCount_ = static_cast<std::uint32_t>(atoms_.size());
    occurs_.resize(2 * varCount_);
    std::vector<char> seen(atoms_.size(), 0);
    for (const auto& f : formulas_) {
        for (AtomId a : hmknf::atomsOf(f)) {
            auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
            if (it == atoms_.end() || *it != a) throw std::logic_error("formula atom outside component");
        }
        // Decision order follows first occurrence so related atoms stay adjacent.
        std::vector<AtomId> occurrence;
        collectAtoms(f, occurrence);
        for (AtomId a : occurrence) {
            auto idx = static_cast<std::size_t>(std::lower_bound(atoms_.begin(), atoms_.end(), a) - atoms_.begin());
            if (!seen[idx]) {
                seen[idx] = 1;
                order_.push_back(static_cast<std::uint32_t>(idx));
            }
        }
        assertTrue(f);
    }
    for (std::uint32_t v = 0; v < atoms_.size(); ++v)
        if (!seen[v]) order_.push_back(v);
    for (std::uint32_t v = static_cast<std::uint32_t>(atoms_.size()); v < varCount_; ++v) order_.push_back(v);
    assignment_.assign(varCount_, -1);
}

std::uint32_t ComponentSolver::newVar() {
    occurs_.resize(occurs_.size() + 2);
    return varCount_++;
}

void ComponentSolver::addClause(std::vector<Lit> clause) {
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    for (std::size_t i = 1; i < clause.size(); ++i)
        if ((clause[i] ^ 1u) == clause[i - 1]) return;  // tautology
    if (clause.empty()) inconsistent_ = true;
    auto idx = static_cast<std::uint32_t>(clauses_.size());
    for (Lit l : clause) occurs_[l].push_back(idx);
    clauses_.push_back(std::move(clause));
}

ComponentSolver::Lit ComponentSolver::encode(const Formula& f) {
    switch (f->op) {
        case Op::Atom: {
            auto idx = std::lower_bound(atoms_.begin(), atoms_.end(), f->atom) - atoms_.begin();
            return lit(static_cast<std::uint32_t>(idx), false);
        }
        case Op::Neg: return encode(f->kids[0]) ^ 1u;
        case Op::True:
        case Op::False: {
            auto v = newVar();
            addClause({lit(v, f->op == Op::False)});
            return lit(v, false);
        }
        case Op::And:
        case Op::Or:
        case Op::Implies: {
            std::vector<Lit> kids;
            if (f->op == Op::Implies) {
                kids = {encode(f->kids[0]) ^ 1u, encode(f->kids[1])};
            } else {
                for (const auto& k : f->kids) kids.push_back(encode(k));
            }
            auto t = lit(newVar(), false);
            bool isAnd = f->op == Op::And;
            // And: t -> k_i, (all k_i) -> t.  Or: k_i -> t, t -> (some k_i).
            std::vector<Lit> big{isAnd ? t : t ^ 1u};
            for (Lit k : kids) {
                addClause(isAnd ? std::vector<Lit>{t ^ 1u, k} : std::vector<Lit>{t, k ^ 1u});
                big.push_back(isAnd ? k ^ 1u : k);
            }
            addClause(std::move(big));
            return t;
        }
        case Op::Know:
        case Op::NotDefault: break;
    }
    throw std::logic_error("modal operator in objective theory");
}

void ComponentSolver::collectDisjuncts(const Formula& f, bool positive, std::vector<Lit>& out) {
    if (positive && f->op == Op::Or) {
        for (const auto& k : f->kids) collectDisjuncts(k, true, out);
    } else if (positive && f->op == Op::Implies) {
        collectDisjuncts(f->kids[0], false, out);
        collectDisjuncts(f->kids[1], true, out);
    } else if (!positive && f->op == Op::And) {
        for (const auto& k : f->kids) collectDisjuncts(k, false, out);
    } else if (f->op == Op::Neg) {
        collectDisjuncts(f->kids[0], !positive, out);
    } else {
        Lit l = encode(f);
        out.push_back(positive ? l : l ^ 1u);
    }
}

void ComponentSolver::assertTrue(const Formula& f) {
    switch (f->op) {
        case Op::True: return;
        case Op::False: inconsistent_ = true; return;
        case Op::And:
            for (const auto& k : f->kids) assertTrue(k);
            return;
        case Op::Neg: assertFalse(f->kids[0]); return;
        default: {
            std::vector<Lit> clause;
            collectDisjuncts(f, true, clause);
            addClause(std::move(clause));
        }
    }
}

void ComponentSolver::assertFalse(const Formula& f) {
    switch (f->op) {
        case Op::True: inconsistent_ = true; return;
        case Op::False: return;
        case Op::Or:
            for (const auto& k : f->kids) assertFalse(k);
            return;
        case Op::Implies:
            assertTrue(f->kids[0]);
            assertFalse(f->kids[1]);
            return;
        case Op::Neg: assertTrue(f->kids[0]); return;
        default: {
            std::vector<Lit> clause;
            collectDisjuncts(f, false, clause);
            addClause(std::move(clause));
        }
    }
}

int ComponentSolver::value(Lit l) const {
    auto v = assignment_[l >> 1];
    if (v < 0) return -1;
    return (l & 1u) ? 1 - v : v;
}

bool ComponentSolver::enqueue(Lit l) {
    int v = value(l);
    if (v >= 0) return v == 1;
    assignment_[l >> 1] = static_cast<std::int8_t>((l & 1u) ? 0 : 1);
    trail_.push_back(l);
    return true;
}

bool ComponentSolver::propagate() {
    while (propagated_ < trail_.size()) {
        Lit falsified = trail_[propagated_++] ^ 1u;
        for (auto ci : occurs_[falsified]) {
            const auto& clause = clauses_[ci];
            Lit pending = 0;
            int open = 0;
            bool satisfied = false;
            for (Lit l : clause) {
                int v = value(l);
                if (v == 1) {
                    satisfied = true;
                    break;
                }
                if (v < 0) {
                    ++open;
                    pending = l;
                }
            }
            if (satisfied) continue;
            if (open == 0) return false;
            if (open == 1 && !enqueue(pending)) return false;
        }
    }
    return true;
}

void ComponentSolver::undoTo(std::size_t mark) {
    while (trail_.size() > mark) {
        assignment_[trail_.back() >> 1] = -1;
        trail_.pop_back();
    }
    propagated_ = std::min(propagated_, mark);
}

bool ComponentSolver::restart(Mask base, Mask frozen) {
    undoTo(0);
    if (inconsistent_) return false;
    for (const auto& clause : clauses_)
        if (clause.size() == 1 && !enqueue(clause[0])) return false;
    for (std::uint32_t v = 0; v < atoms_.size(); ++v)
        if ((frozen >> v & 1u) && !enqueue(lit(v, !(base >> v & 1u)))) return false;
    return propagate();
}

Mask ComponentSolver::currentMask() const {
    Mask m = 0;
    for (std::size_t v = 0; v < atoms_.size(); ++v)
        if (assignment_[v] == 1) m |= Mask{1} << v;
    return m;
}

bool ComponentSolver::search(std::size_t depth, const std::vector<int>& preferred, bool firstOnly,
                             std::vector<Mask>& found, std::size_t maxParts) {
    while (depth < order_.size() && assignment_[order_[depth]] >= 0) ++depth;
    if (depth == order_.size()) {
        found.push_back(currentMask());
        if (found.size() > maxParts)
            throw Error(ErrorKind::ResourceLimit, "component has more models than the part budget allows");
        return true;
    }
    std::uint32_t var = order_[depth];
    bool aux = var >= atoms_.size();
    int first = aux ? 0 : preferred[var];
    bool any = false;
    for (int attempt = 0; attempt < 2; ++attempt) {
        bool val = attempt == 0 ? first : !first;
        std::size_t mark = trail_.size();
        if (enqueue(lit(var, !val)) && propagate()) any |= search(depth + 1, preferred, firstOnly, found, maxParts);
        undoTo(mark);
        if (any && (firstOnly || aux)) return true;
    }
    return any;
}

bool ComponentSolver::satisfies(Mask assignment) const {
    auto value = [&](AtomId a) {
        auto idx = std::lower_bound(atoms_.begin(), atoms_.end(), a) - atoms_.begin();
        return (assignment >> idx & 1u) != 0;
    };
    return std::all_of(formulas_.begin(), formulas_.end(),
                       [&](const Formula& f) { return evalObjective(f, value); });
}

std::vector<Mask> ComponentSolver::allModels(std::size_t maxParts) {
    std::vector<Mask> found;
    if (!restart()) return found;
    std::vector<int> preferred(atoms_.size(), 0);
    search(0, preferred, false, found, maxParts);
    undoTo(0);
    std::sort(found.begin(), found.end());
    return found;
}

std::vector<Mask> ComponentSolver::closest(Mask base, Mask frozen) {
    if (satisfies(base)) return {base};
    std::vector<int> preferred(atoms_.size());
    for (std::size_t v = 0; v < atoms_.size(); ++v) preferred[v] = static_cast<int>(base >> v & 1u);
    std::size_t clauseMark = clauses_.size();
    std::vector<Mask> result;
    while (restart(base, frozen)) {
        std::vector<Mask> found;
        if (!search(0, preferred, true, found, std::numeric_limits<std::size_t>::max())) break;
        Mask model = found.front();
        result.push_back(model);
        // The lexicographically least remaining model is inclusion-minimal once
        // every superset of an earlier difference is blocked.
        std::vector<Lit> block;
        Mask delta = model ^ base;
        for (std::uint32_t v = 0; v < atoms_.size(); ++v)
            if (delta >> v & 1u) block.push_back(lit(v, !(base >> v & 1u)));
        addClause(std::move(block));
    }
    undoTo(0);
    while (clauses_.size() > clauseMark) {
        for (Lit l : clauses_.back()) occurs_[l].pop_back();
        clauses_.pop_back();
    }
    inconsistent_ = false;
    for (const auto& c : clauses_)
        if (c.empty()) inconsistent_ = true;
    std::sort(result.begin(), result.end());
    return result;
}

SimplifiedTheory simplifyTheory(const Theory& theory) {
    SimplifiedTheory out;
    std::vector<Formula> pending;
    for (const auto& f : theory) flattenConjunction(f, pending);
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<Formula> next;
        for (const auto& f : pending) {
            Formula g = out.units.empty() ? f : substitute(f, [&](AtomId a) {
                auto it = out.units.find(a);
                return it == out.units.end() ? -1 : static_cast<int>(it->second);
            });
            std::vector<Formula> parts;
            flattenConjunction(g, parts);
            for (const auto& p : parts) {
                if (p->op == Op::False) {
                    out.inconsistent = true;
                    return out;
                }
                bool isUnit = p->op == Op::Atom || (p->op == Op::Neg && p->kids[0]->op == Op::Atom);
                if (!isUnit) {
                    next.push_back(p);
                    continue;
                }
                AtomId a = p->op == Op::Atom ? p->atom : p->kids[0]->atom;
                bool v = p->op == Op::Atom;
                auto [it, inserted] = out.units.emplace(a, v);
                if (!inserted && it->second != v) {
                    out.inconsistent = true;
                    return out;
                }
                changed = true;
            }
        }
        pending = std::move(next);
    }
    out.rest = std::move(pending);
    return out;
}

std::vector<std::vector<AtomId>> partitionAtoms(const std::vector<SimplifiedTheory>& theories) {
    std::unordered_map<AtomId, AtomId> parent;
    auto find = [&](AtomId x) {
        if (!parent.count(x)) parent[x] = x;
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& t : theories) {
        for (const auto& [a, v] : t.units) find(a);
        for (const auto& f : t.rest) {
            auto atoms = hmknf::atomsOf(f);
            AtomId root = find(atoms.front());
            for (AtomId a : atoms) parent[find(a)] = root;
        }
    }
    std::map<AtomId, std::vector<AtomId>> blocks;
    std::vector<AtomId> keys;
    for (const auto& [a, p] : parent) keys.push_back(a);
    for (AtomId a : keys) blocks[find(a)].push_back(a);
    std::vector<std::vector<AtomId>> out;
    for (auto& [root, atoms] : blocks) {
        std::sort(atoms.begin(), atoms.end());
        out.push_back(std::move(atoms));
    }
    std::sort(out.begin(), out.end());
    return out;
}

Theory sliceTheory(const SimplifiedTheory& theory, const std::vector<AtomId>& block) {
    Theory out;
    for (const auto& [a, v] : theory.units)
        if (std::binary_search(block.begin(), block.end(), a)) out.push_back(v ? atomF(a) : neg(atomF(a)));
    for (const auto& f : theory.rest) {
        auto atoms = hmknf::atomsOf(f);
        if (std::binary_search(block.begin(), block.end(), atoms.front())) out.push_back(f);
    }
    return out;
}

}  // namespace hmknf::detail
