#pragma once

#include <stdexcept>
#include <string>

namespace flatband {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A physical or numerical parameter violates its documented range.
class InvalidParameterError : public Error {
public:
    using Error::Error;
};

/// A matrix handed to the eigensolver contains non-finite entries.
class InvalidMatrixError : public Error {
public:
    using Error::Error;
};

/// An iterative procedure stopped before reaching its tolerance.
/// Carries the residual observed at the point of failure.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double residual)
        : Error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// Finite-difference estimates at two step sizes disagree beyond tolerance.
class StepSizeError : public Error {
public:
    using Error::Error;
};

/// The order-parameter search kept escaping through its upper bound.
class RunawayError : public Error {
public:
    using Error::Error;
};

/// Curvature-based and order-parameter-based critical couplings disagree.
class MethodInconsistencyError : public Error {
public:
    using Error::Error;
};

/// A requested Hilbert space exceeds the hard dimension cap.
class SizeError : public Error {
public:
    using Error::Error;
};

} // namespace flatband
