/**
 * @file types.hpp
 * @brief Scalar/matrix aliases and the exception hierarchy shared by every module.
 */

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace dimlab {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

/// A point of the base: t ∈ ℂ^m, m ∈ {1, 2}.
using BasePoint = Eigen::VectorXcd;

inline BasePoint base_point(cplx t) {
    BasePoint p(1);
    p(0) = t;
    return p;
}

inline BasePoint base_point(cplx t1, cplx t2) {
    BasePoint p(2);
    p << t1, t2;
    return p;
}

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition (counts, sizes, degrees).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A finite-difference stencil or integrand left the domain of a weight.
class DomainError : public Error {
public:
    using Error::Error;
};

/// The fiber Hessian φ_{zz̄} is not strictly positive where it is divided by.
class FiberDegeneracyError : public Error {
public:
    using Error::Error;
};

/// A Gram matrix is singular, indefinite or too ill-conditioned to trust.
class IllConditionedError : public Error {
public:
    using Error::Error;
};

/// An assembled quadratic form failed its Hermitian sanity check.
class NonHermitianError : public Error {
public:
    using Error::Error;
};

/// A hypothesis of a theorem-level check fails for the given data.
class HypothesisError : public Error {
public:
    using Error::Error;
};

}  // namespace dimlab
