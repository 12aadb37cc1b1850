#pragma once

#include <stdexcept>
#include <string>

namespace hmknf {

enum class ErrorKind {
    SyntaxError,
    UndeclaredSymbol,
    SortMismatch,
    UnsortableVariable,
    EmptyIntersection,
    EmptyUpdate,
    CrossComponentFormula,
    ResourceLimit,
    MixedLayer,
    InvalidPlan,
    NotUpdatable,
    NotUpdateEnabling,
};

const char* errorKindName(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Budgets shared by the enumeration-heavy operations.
struct Limits {
    std::size_t maxComponentAtoms = 22;
    std::size_t maxParts = std::size_t{1} << 22;
    unsigned maxCandidateBits = 20;
    std::size_t maxBranches = 64;
};

}  // namespace hmknf
