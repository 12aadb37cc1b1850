#include "hybridmknf/rules.hpp"

#include <algorithm>
#include <unordered_map>

namespace hmknf {

namespace {

// Rules compiled to dense local indices; literal code = 2 * atom + negated.
struct CompiledDlp {
    std::vector<AtomId> atoms;  // sorted scope
    std::vector<std::size_t> layer;
    std::vector<std::uint32_t> head;
    std::vector<std::vector<std::uint32_t>> body;
    std::vector<std::vector<std::uint32_t>> watchers;  // literal code -> rules using it in the body

    std::uint32_t local(AtomId a) const {
        return static_cast<std::uint32_t>(std::lower_bound(atoms.begin(), atoms.end(), a) - atoms.begin());
    }
    std::uint32_t code(const Literal& l) const { return 2 * local(l.atom) + (l.negated ? 1u : 0u); }
};

CompiledDlp compile(const Dlp& dlp, std::vector<AtomId> scope) {
    for (const auto& prog : dlp)
        for (const auto& r : prog) {
            scope.push_back(r.head.atom);
            for (const auto& l : r.body) scope.push_back(l.atom);
        }
    std::sort(scope.begin(), scope.end());
    scope.erase(std::unique(scope.begin(), scope.end()), scope.end());
    CompiledDlp c;
    c.atoms = std::move(scope);
    c.watchers.resize(2 * c.atoms.size());
    for (std::size_t i = 0; i < dlp.size(); ++i)
        for (const auto& r : dlp[i]) {
            auto idx = static_cast<std::uint32_t>(c.head.size());
            c.layer.push_back(i);
            c.head.push_back(c.code(r.head));
            std::vector<std::uint32_t> body;
            for (const auto& l : r.body) {
                body.push_back(c.code(l));
                c.watchers[c.code(l)].push_back(idx);
            }
            c.body.push_back(std::move(body));
        }
    return c;
}

bool litTrue(std::uint32_t code, const std::vector<char>& truth) {
    return (code & 1u) ? !truth[code >> 1] : truth[code >> 1];
}

// Least fixpoint over literal codes from `active` rules plus `facts`.
std::vector<char> fixpoint(const CompiledDlp& c, const std::vector<char>& active, const std::vector<std::uint32_t>& facts) {
    std::vector<char> derived(2 * c.atoms.size(), 0);
    std::vector<std::uint32_t> missing(c.head.size());
    std::vector<std::uint32_t> queue;
    auto derive = [&](std::uint32_t lit) {
        if (!derived[lit]) {
            derived[lit] = 1;
            queue.push_back(lit);
        }
    };
    for (std::size_t r = 0; r < c.head.size(); ++r) {
        if (!active[r]) continue;
        missing[r] = static_cast<std::uint32_t>(c.body[r].size());
        if (missing[r] == 0) derive(c.head[r]);
    }
    for (auto f : facts) derive(f);
    while (!queue.empty()) {
        auto lit = queue.back();
        queue.pop_back();
        for (auto r : c.watchers[lit])
            if (active[r] && --missing[r] == 0) derive(c.head[r]);
    }
    return derived;
}

bool matches(const CompiledDlp& c, const std::vector<char>& derived, const std::vector<char>& truth) {
    for (std::size_t a = 0; a < c.atoms.size(); ++a) {
        if (static_cast<bool>(derived[2 * a]) != static_cast<bool>(truth[a])) return false;
        if (static_cast<bool>(derived[2 * a + 1]) == static_cast<bool>(truth[a])) return false;
    }
    return true;
}

bool checkDynamic(const CompiledDlp& c, const std::vector<char>& truth) {
    std::size_t n = c.head.size();
    std::vector<char> bodySat(n);
    // Highest layer holding a rule with a satisfied body, per head literal.
    std::vector<long> topLayer(2 * c.atoms.size(), -1);
    for (std::size_t r = 0; r < n; ++r) {
        bodySat[r] = std::all_of(c.body[r].begin(), c.body[r].end(),
                                 [&](std::uint32_t l) { return litTrue(l, truth); });
        if (bodySat[r]) topLayer[c.head[r]] = std::max(topLayer[c.head[r]], static_cast<long>(c.layer[r]));
    }
    std::vector<char> active(n);
    for (std::size_t r = 0; r < n; ++r)
        active[r] = topLayer[c.head[r] ^ 1u] < static_cast<long>(c.layer[r]);
    std::vector<std::uint32_t> facts;
    for (std::size_t a = 0; a < c.atoms.size(); ++a)
        if (topLayer[2 * a] < 0) facts.push_back(static_cast<std::uint32_t>(2 * a + 1));
    return matches(c, fixpoint(c, active, facts), truth);
}

bool checkStatic(const CompiledDlp& c, const std::vector<char>& truth) {
    std::vector<char> active(c.head.size(), 1);
    std::vector<std::uint32_t> facts;
    for (std::size_t a = 0; a < c.atoms.size(); ++a)
        if (!truth[a]) facts.push_back(static_cast<std::uint32_t>(2 * a + 1));
    return matches(c, fixpoint(c, active, facts), truth);
}

std::vector<char> truthOf(const CompiledDlp& c, const std::vector<AtomId>& trueAtoms) {
    std::vector<char> truth(c.atoms.size(), 0);
    for (AtomId a : trueAtoms) {
        auto it = std::lower_bound(c.atoms.begin(), c.atoms.end(), a);
        if (it != c.atoms.end() && *it == a) truth[static_cast<std::size_t>(it - c.atoms.begin())] = 1;
    }
    return truth;
}

template <typename Check>
std::vector<std::vector<AtomId>> enumerate(const CompiledDlp& c, const Limits& limits, Check check) {
    std::vector<std::uint32_t> heads;
    for (auto h : c.head)
        if (!(h & 1u)) heads.push_back(h >> 1);
    std::sort(heads.begin(), heads.end());
    heads.erase(std::unique(heads.begin(), heads.end()), heads.end());
    if (heads.size() > limits.maxCandidateBits)
        throw Error(ErrorKind::ResourceLimit, "program has " + std::to_string(heads.size()) +
                                                  " head atoms; candidate budget is 2^" +
                                                  std::to_string(limits.maxCandidateBits));
    std::vector<std::vector<AtomId>> out;
    std::vector<char> truth(c.atoms.size());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << heads.size()); ++mask) {
        std::fill(truth.begin(), truth.end(), 0);
        for (std::size_t i = 0; i < heads.size(); ++i)
            if (mask >> i & 1u) truth[heads[i]] = 1;
        if (!check(c, truth)) continue;
        std::vector<AtomId> model;
        for (std::size_t a = 0; a < c.atoms.size(); ++a)
            if (truth[a]) model.push_back(c.atoms[a]);
        out.push_back(std::move(model));
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

LiteralModel leastModel(const Program& program) {
    auto c = compile({program}, {});
    std::vector<char> active(c.head.size(), 1);
    auto derived = fixpoint(c, active, {});
    LiteralModel out;
    for (std::size_t a = 0; a < c.atoms.size(); ++a) {
        if (derived[2 * a]) out.positive.push_back(c.atoms[a]);
        if (derived[2 * a + 1]) out.defaults.push_back(c.atoms[a]);
    }
    return out;
}

bool conflicts(const Rule& a, const Rule& b) { return a.head == b.head.complement(); }

std::vector<std::pair<std::size_t, Rule>> rejected(const Dlp& dlp, const std::vector<AtomId>& trueAtoms) {
    auto bodyHolds = [&](const Rule& r) {
        return std::all_of(r.body.begin(), r.body.end(), [&](const Literal& l) {
            return std::binary_search(trueAtoms.begin(), trueAtoms.end(), l.atom) != l.negated;
        });
    };
    std::vector<std::pair<std::size_t, Rule>> out;
    for (std::size_t i = 0; i < dlp.size(); ++i)
        for (const auto& r : dlp[i]) {
            bool hit = false;
            for (std::size_t j = i; j < dlp.size() && !hit; ++j)
                for (const auto& other : dlp[j])
                    if (conflicts(r, other) && bodyHolds(other)) {
                        hit = true;
                        break;
                    }
            if (hit) out.emplace_back(i, r);
        }
    return out;
}

std::vector<Literal> defaults(const Dlp& dlp, const std::vector<AtomId>& trueAtoms,
                              const std::vector<AtomId>& scope) {
    std::vector<Literal> out;
    for (AtomId p : scope) {
        bool supported = false;
        for (const auto& prog : dlp)
            for (const auto& r : prog)
                if (r.head == Literal{p, false} &&
                    std::all_of(r.body.begin(), r.body.end(), [&](const Literal& l) {
                        return std::binary_search(trueAtoms.begin(), trueAtoms.end(), l.atom) != l.negated;
                    }))
                    supported = true;
        if (!supported) out.push_back({p, true});
    }
    return out;
}

bool isDynamicStableModel(const Dlp& dlp, const std::vector<AtomId>& trueAtoms, const std::vector<AtomId>& scope) {
    auto c = compile(dlp, scope);
    return checkDynamic(c, truthOf(c, trueAtoms));
}

bool isStableModel(const Program& program, const std::vector<AtomId>& trueAtoms, const std::vector<AtomId>& scope) {
    auto c = compile({program}, scope);
    return checkStatic(c, truthOf(c, trueAtoms));
}

std::vector<std::vector<AtomId>> dynamicStableModels(const Dlp& dlp, const std::vector<AtomId>& scope,
                                                     const Limits& limits) {
    return enumerate(compile(dlp, scope), limits, checkDynamic);
}

std::vector<std::vector<AtomId>> stableModels(const Program& program, const std::vector<AtomId>& scope,
                                              const Limits& limits) {
    return enumerate(compile({program}, scope), limits, checkStatic);
}

std::vector<AtomId> atomsOf(const Program& program) { return atomsOf(Dlp{program}); }

std::vector<AtomId> atomsOf(const Dlp& dlp) { return compile(dlp, {}).atoms; }

bool satisfiesClassically(const Rule& rule, const std::vector<AtomId>& trueAtoms) {
    auto holds = [&](const Literal& l) {
        return std::binary_search(trueAtoms.begin(), trueAtoms.end(), l.atom) != l.negated;
    };
    return !std::all_of(rule.body.begin(), rule.body.end(), holds) || holds(rule.head);
}

}  // namespace hmknf
