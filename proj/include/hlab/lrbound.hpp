#pragma once

#include "hlab/model.hpp"
#include "hlab/spectral.hpp"

namespace hlab {

struct LRConstants {
  double mu = 1.0;
  double c_mu = 0.0;
  double v_mu = 0.0;
  double f_mu_norm = 0.0;
  double c_f_mu = 0.0;
  double phi_f_mu_norm = 0.0;
  // plain F data used by the commutator bound without exponential weight
  double f_norm = 0.0;
  double c_f = 0.0;
  double phi_f_norm = 0.0;
  int truncation_sites = 0;
  /// e^{mu r} ||Phi||_F, the bound on phi_f_mu_norm
  double phi_f_mu_bound = 0.0;
};

template <typename Scalar>
LRConstants lr_constants(const Interaction<Scalar>& phi, const FFunction& f, double mu);

struct LRBound {
  double thm_bound = 0.0;
  double cor_bound = 0.0;
  /// same prefactor with d(X, Y^c) replaced by d(boundary of X, Y^c)
  double assembled_bound = 0.0;
};

/// Bounds on ||[alpha^t(A), B]|| for A in A_x and B commuting with A_y, with ||A|| = ||B|| = 1.
template <typename Scalar>
LRBound lr_rhs(const Region& x, const Region& y, double t, const Interaction<Scalar>& phi, const FFunction& f,
               const LRConstants& consts);

struct LRMeasurement {
  double measured = 0.0;
  double thm_margin = 0.0;
  double cor_margin = 0.0;
};

template <typename Scalar>
LRMeasurement lr_empirical(const Observable<Scalar>& a, const Observable<Scalar>& b, double t,
                           const SpectralData<Scalar>& spec, const LRBound& bound);

struct TruncationCheck {
  double measured = 0.0;
  double rhs = 0.0;
};

/// ||alpha^t_outer(a) - alpha^t_inner(a)|| against the finite-volume truncation bound.
template <typename Scalar>
TruncationCheck truncation_check(const Observable<Scalar>& a, const Region& inner, const Region& outer, double t,
                                 const Interaction<Scalar>& phi, const LRConstants& consts,
                                 const InteractionConstants& ic);

/// Same check with the two diagonalizations supplied, for sweeps over t.
template <typename Scalar>
TruncationCheck truncation_check(const Observable<Scalar>& a, const SpectralData<Scalar>& inner,
                                 const SpectralData<Scalar>& outer, double t, const Interaction<Scalar>& phi,
                                 const LRConstants& consts, const InteractionConstants& ic);

/// Right-hand side alone; the measured side needs two diagonalizations.
template <typename Scalar>
double truncation_rhs(const Region& x, const Region& inner, const Region& outer, double t,
                      const Interaction<Scalar>& phi, const LRConstants& consts, const InteractionConstants& ic,
                      double norm_a);

}  // namespace hlab
