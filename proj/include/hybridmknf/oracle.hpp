#pragma once

#include <vector>

#include "hybridmknf/error.hpp"
#include "hybridmknf/interp.hpp"
#include "hybridmknf/kb.hpp"
#include "hybridmknf/rules.hpp"
#include "hybridmknf/splitting.hpp"

// Naive reference implementations over explicit interpretation sets. Every
// interpretation is a mask over a caller-supplied sorted atom list.
namespace hmknf::oracle {

using ExplicitSet = std::vector<Mask>;  // sorted, unique

// Atom-count ceilings of the exhaustive procedures.
inline constexpr std::size_t kMaxFoAtoms = 22;
inline constexpr std::size_t kMaxMknfAtoms = 4;
inline constexpr std::size_t kMaxWinslettAtoms = 16;
inline constexpr std::size_t kMaxDlpAtoms = 14;

ExplicitSet bruteFoModels(const Theory& theory, const std::vector<AtomId>& atoms);

// MKNF models of a set of ground MKNF sentences by enumerating every
// interpretation set and every proper superset.
std::vector<ExplicitSet> bruteMknfModels(const Theory& sentences, const std::vector<AtomId>& atoms);
std::vector<ExplicitSet> bruteMknfModels(const HybridKb& kb, const std::vector<AtomId>& atoms);

// Per-predicate minimal-change update of every I in m by n.
ExplicitSet bruteWinslett(const ExplicitSet& m, const ExplicitSet& n, const std::vector<AtomId>& atoms,
                          const Signature& sig);
// Fold starting from the set of all interpretations.
ExplicitSet bruteWinslettFold(const std::vector<Theory>& theories, const std::vector<AtomId>& atoms,
                              const Signature& sig);

ExplicitSet bruteDynStable(const Dlp& dlp, const std::vector<AtomId>& atoms);
ExplicitSet bruteStable(const Program& program, const std::vector<AtomId>& atoms);

// Up-set of a model over the atom list.
ExplicitSet upSet(Mask model, std::size_t width);

ExplicitSet toExplicit(const ModelSet& m, const std::vector<AtomId>& atoms);
ModelSet fromExplicitSet(const ExplicitSet& set, const std::vector<AtomId>& atoms);

// Layer solver for staticSolutions backed by bruteMknfModels over the
// atoms the layer mentions.
MixedLayerSolver mixedLayerSolver();

}  // namespace hmknf::oracle
