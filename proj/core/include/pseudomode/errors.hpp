// errors.hpp: Exception hierarchy shared by every pseudomode component

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pseudomode {

// Inputs that violate a documented precondition or schema. The CLI maps
// these to exit status 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The requested exchange channel does not exist at the given Fock state
// (e.g. annihilating an empty mode).
class ChannelUndefinedError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Charges that do not label any Fock state, or a sector above the size guard.
class EmptySectorError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Failures detected while computing: pole proximity, instability,
// ill-posed fits, non-convergence. The CLI maps these to exit status 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PoleProximityError : public NumericalError {
public:
    PoleProximityError(const std::string& what, std::size_t depth)
        : NumericalError(what), depth_(depth) {}
    // Recursion depth (chain index) at which the small denominator appeared.
    std::size_t depth() const noexcept { return depth_; }

private:
    std::size_t depth_;
};

class InstabilityError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class IllPosedFitError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DivergenceError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace pseudomode
