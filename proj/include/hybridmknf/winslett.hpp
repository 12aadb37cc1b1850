#pragma once

#include <vector>

#include "hybridmknf/error.hpp"
#include "hybridmknf/interp.hpp"
#include "hybridmknf/sentence.hpp"

namespace hmknf {

// Atoms of `pred` on which I and J disagree. Both over the same scope.
std::vector<AtomId> diff(PredId pred, const Interpretation& i, const Interpretation& j, const Signature& sig);

// J <=_I J' for every predicate, i.e. diff inclusion predicate by predicate.
bool atLeastAsClose(const Interpretation& base, const Interpretation& j, const Interpretation& jPrime,
                    const Signature& sig);

// Minimal elements of `candidates` under <_base.
std::vector<Interpretation> pointUpdate(const Interpretation& base, const std::vector<Interpretation>& candidates,
                                        const Signature& sig);
std::vector<Mask> pointUpdate(Mask base, const std::vector<Mask>& candidates);

// Componentwise minimal-change update of two factored sets. Throws EmptyUpdate.
ModelSet setUpdate(const ModelSet& m, const ModelSet& n, const Limits& limits = {});

// All models of a ground objective theory. Throws EmptyUpdate if unsatisfiable.
ModelSet allModels(const Theory& theory, const Limits& limits = {});

// Left fold of the update over the model sets of each theory, evaluated per
// block of a partition shared by all theories. Throws EmptyUpdate.
ModelSet sequenceUpdateModel(const std::vector<Theory>& theories, const Limits& limits = {});

}  // namespace hmknf
