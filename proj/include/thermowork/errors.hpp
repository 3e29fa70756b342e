#pragma once

#include <stdexcept>
#include <string>

namespace thermowork {

// Operator shapes that do not fit together (bipartition, products, traces).
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A matrix that was supposed to be a density matrix is not one.
class InvalidStateError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A quantity that must be non-negative came out negative beyond tolerance,
// or an expectation value picked up a large imaginary part.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Fock truncation too small for the requested coupling.
class ConvergenceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace thermowork
