#pragma once

#include <stdexcept>
#include <string>

namespace slz {

/// A point or parameter set lies outside the domain where a formula is defined
/// (coordinate-patch boundaries, removable poles hit with nonzero couplings, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A finite-difference stencil or other derived evaluation failed because one of
/// its sample points raised DomainError.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Conditioning or resolution limits of a numerical routine were exceeded.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive quadrature could not reach the requested accuracy.
class QuadratureFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A series or its transformations failed to reach a convergent regime.
class SeriesDivergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// An underlying special-function evaluation failed.
class SpecialFunctionError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Experiment configuration is malformed or inconsistent.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace slz
