#pragma once

#include <functional>
#include <random>

#include "hlab/core.hpp"

namespace hlab {

template <typename Scalar>
struct EigenDecomposition {
  RealVector values;        // ascending
  Matrix<Scalar> vectors;   // columns
};

/// Full Hermitian eigendecomposition, ascending eigenvalues.
template <typename Scalar>
EigenDecomposition<Scalar> hermitian_eig(const Matrix<Scalar>& h);

/// Eigenvalues only.
template <typename Scalar>
RealVector hermitian_eigvals(const Matrix<Scalar>& h);

template <typename Scalar>
double hermitian_deviation(const Matrix<Scalar>& a) {
  return a.rows() ? (a - a.adjoint()).cwiseAbs().maxCoeff() : 0.0;
}

/// Largest singular value; spectral radius path when `hermitian` is set.
template <typename Scalar>
double op_norm(const Matrix<Scalar>& a, bool hermitian = false);

template <typename Scalar>
using LinearMap = std::function<Vector<Scalar>(const Vector<Scalar>&)>;

/// Operator norm of an implicitly given map of dimension n via Lanczos with full reorthogonalization.
/// For non-Hermitian maps the adjoint is required and the iteration runs on A*A.
template <typename Scalar>
double lanczos_norm(Index n, const LinearMap<Scalar>& apply, const LinearMap<Scalar>& apply_adjoint,
                    bool hermitian, double rel_tol = 1e-13);

/// Product V C V^* with V of scalar type S and C complex; splits into real products when S is real.
template <typename Scalar>
Matrix<cplx> conjugate_by(const Matrix<Scalar>& v, const Matrix<cplx>& c);

/// V diag(w) V^*.
template <typename Scalar>
Matrix<Scalar> spectral_function(const Matrix<Scalar>& v, const RealVector& w);

using Rng = std::mt19937_64;

template <typename Scalar>
Matrix<Scalar> random_gaussian(Index rows, Index cols, Rng& rng);
template <typename Scalar>
Matrix<Scalar> random_hermitian(Index n, Rng& rng);
Matrix<cplx> haar_unitary(Index n, Rng& rng);
template <typename Scalar>
Vector<Scalar> random_unit_vector(Index n, Rng& rng);

template <typename Scalar>
Matrix<Scalar> kron(const Matrix<Scalar>& a, const Matrix<Scalar>& b);

}  // namespace hlab
