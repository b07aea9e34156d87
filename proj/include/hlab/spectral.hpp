#pragma once

#include "hlab/opspace.hpp"

namespace hlab {

/// Eigendecomposition of a Hamiltonian on a volume, energies shifted so the ground energy is 0.
/// Each eigenvector is scaled so that its first component of largest magnitude (ties within
/// 1e-12) is real and positive.
template <typename Scalar>
struct SpectralData {
  TensorLayout layout;
  RealVector energies;
  Matrix<Scalar> eigvecs;
  double e0 = 0.0;
  double gap = 0.0;
  double h_norm = 0.0;

  Index dim() const { return energies.size(); }
  Vector<Scalar> ground_vector() const { return eigvecs.col(0); }
  StateVector<Scalar> ground() const { return StateVector<Scalar>(layout, eigvecs.col(0)); }
  /// Ground state projection P_0.
  Observable<Scalar> ground_projector() const;
};

/// Throws NotGapped unless E_1 - E_0 > gap_tol.
template <typename Scalar>
SpectralData<Scalar> diagonalize(const Observable<Scalar>& h, double gap_tol = 1e-8);

/// Same decomposition without the gap requirement (for plain time evolution).
template <typename Scalar>
SpectralData<Scalar> diagonalize_ungapped(const Observable<Scalar>& h);

/// max_m ||H v_m - E_m v_m|| against the unshifted Hamiltonian, and ||V*V - I||_max.
template <typename Scalar>
std::pair<double, double> spectral_residuals(const Observable<Scalar>& h, const SpectralData<Scalar>& spec);

template <typename Scalar>
double expectation(const Observable<Scalar>& a, const SpectralData<Scalar>& spec);

/// e^{itH} a e^{-itH}.
template <typename Scalar>
Observable<cplx> evolve(const Observable<Scalar>& a, double t, const SpectralData<Scalar>& spec);

/// Matrix elements <m|a|n> damped by exp(-(E_m - E_n)^2 / (4 alpha)).
template <typename Scalar>
Observable<Scalar> gaussian_filter(const Observable<Scalar>& a, double alpha, const SpectralData<Scalar>& spec);

template <typename Scalar>
struct HeatProjector {
  Observable<Scalar> p;
  /// exp(-gamma^2 / (4 alpha)) from the spectrum
  double defect = 0.0;
  /// ||p - P_0|| evaluated on the assembled matrix
  double measured = 0.0;
};

/// exp(-H^2 / (4 alpha)).
template <typename Scalar>
HeatProjector<Scalar> heat_projector(const SpectralData<Scalar>& spec, double alpha);

template <typename Scalar>
struct WindowProjection {
  Observable<Scalar> p;
  bool boundary_warning = false;
  Index rank = 0;
};

/// Spectral projection of m onto [-a, a].
template <typename Scalar>
WindowProjection<Scalar> window_projection(const Observable<Scalar>& m, double a);

/// Nodes and weights for the weight exp(-x^2); weights sum to sqrt(pi).
struct GaussHermite {
  RealVector nodes;
  RealVector weights;
};

GaussHermite gauss_hermite(int n);

/// f_alpha(t) = sqrt(alpha / pi) exp(-alpha t^2).
double gaussian_density(double t, double alpha);

/// Time nodes t_k and weights summing to one for integrals against f_alpha.
GaussHermite gaussian_time_rule(int n, double alpha);

/// sum_k w_k e^{i t_k H}, the quadrature version of exp(-H^2 / (4 alpha)).
template <typename Scalar>
Observable<cplx> heat_projector_quadrature(const SpectralData<Scalar>& spec, double alpha, int nodes);

}  // namespace hlab
