#pragma once

#include <utility>
#include <vector>

#include "hybridmknf/error.hpp"
#include "hybridmknf/interp.hpp"
#include "hybridmknf/kb.hpp"

namespace hmknf {

using Dlp = std::vector<Program>;

// Least model of a program read as definite clauses over literals, where each
// default literal `not p` is a fresh atom. Returned as (positive, default) atom
// lists, both sorted.
struct LiteralModel {
    std::vector<AtomId> positive;
    std::vector<AtomId> defaults;
    bool operator==(const LiteralModel&) const = default;
};
LiteralModel leastModel(const Program& program);

bool conflicts(const Rule& a, const Rule& b);

// `trueAtoms` sorted; layer indices refer to positions in the DLP.
std::vector<std::pair<std::size_t, Rule>> rejected(const Dlp& dlp, const std::vector<AtomId>& trueAtoms);
std::vector<Literal> defaults(const Dlp& dlp, const std::vector<AtomId>& trueAtoms,
                              const std::vector<AtomId>& scope);

bool isDynamicStableModel(const Dlp& dlp, const std::vector<AtomId>& trueAtoms, const std::vector<AtomId>& scope);
bool isStableModel(const Program& program, const std::vector<AtomId>& trueAtoms, const std::vector<AtomId>& scope);

// All models over `scope` (which must cover the program's atoms), each as its
// sorted set of true atoms. Candidates range over subsets of positive head atoms.
std::vector<std::vector<AtomId>> dynamicStableModels(const Dlp& dlp, const std::vector<AtomId>& scope,
                                                     const Limits& limits = {});
std::vector<std::vector<AtomId>> stableModels(const Program& program, const std::vector<AtomId>& scope,
                                              const Limits& limits = {});

std::vector<AtomId> atomsOf(const Program& program);
std::vector<AtomId> atomsOf(const Dlp& dlp);

// Classical satisfaction of a rule, reading `not p` as the negation of p.
bool satisfiesClassically(const Rule& rule, const std::vector<AtomId>& trueAtoms);

}  // namespace hmknf
