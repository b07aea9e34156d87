#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hlab/checks.hpp"
#include "hlab/linalg.hpp"
#include "hlab/model.hpp"
#include "hlab/opspace.hpp"

namespace hlab {

/// Squared Schmidt coefficients, nonincreasing, summing to one.
struct SchmidtSpectrum {
  RealVector lambdas;

  Index size() const { return lambdas.size(); }
  Index rank(double tol = 1e-14) const;
  /// Sum of the k largest values.
  double head(Index k) const;
};

/// Schmidt vectors alongside the spectrum: omega = sum_k sqrt(lambda_k) left_k (x) right_k.
template <typename Scalar>
struct SchmidtDecomposition {
  SchmidtSpectrum spectrum;
  BipartitionMap map;
  Matrix<Scalar> left;   // d_cut x k
  Matrix<Scalar> right;  // d_rest x k
};

template <typename Scalar>
SchmidtDecomposition<Scalar> schmidt_decomposition(const StateVector<Scalar>& omega, const Region& x);

/// Throws DegenerateCut unless x is a proper nonempty part of the volume.
template <typename Scalar>
SchmidtSpectrum schmidt(const StateVector<Scalar>& omega, const Region& x);

/// -sum lambda log lambda in nats.
double entropy(const SchmidtSpectrum& lambda);

/// Entropy of the reduced state on any subregion; zero for the empty set and the full volume.
template <typename Scalar>
double entropy_of(const StateVector<Scalar>& omega, const Region& region);

/// Density matrix of the reduced state on region, in the canonical basis of region.
template <typename Scalar>
Matrix<Scalar> reduced_density(const StateVector<Scalar>& omega, const Region& region);

struct Fidelity {
  double p_x = 0.0;
  /// <Omega, rho_X rho'_X Omega> evaluated with the reduced density operators.
  double cross_check = 0.0;
};

template <typename Scalar>
Fidelity fidelity(const StateVector<Scalar>& omega, const Region& x);

struct SigmaVerdict {
  double trace = 0.0;
  double overlap = 0.0;  // <Omega, sigma Omega>
  double head_sum = 0.0;
  double epsilon = 0.0;
  double p_x = 0.0;
  CheckList checks;
  bool passed() const { return checks.all_passed(); }
};

/// sigma = O rho_X rho'_X O* / Tr, with O given as a map on the volume. d_boundary is the
/// dimension bounding the Schmidt rank O can create; epsilon is the measured ||O - P_0||.
template <typename Scalar>
SigmaVerdict sigma_check(const StateVector<Scalar>& omega, const Region& x, const LinearMap<Scalar>& o,
                         double d_boundary, double epsilon);

template <typename Scalar>
SigmaVerdict sigma_check(const StateVector<Scalar>& omega, const Region& x, const Observable<Scalar>& o,
                         double d_boundary, double epsilon);

struct EntropyConstants {
  double kappa = 1.0;
  int nu = 1;
  double d_inf = 2.0;
  double c1 = 2.0;
};

struct QParams {
  EntropyConstants constants;
  double c2 = 0.5;
  double boundary_size = 1.0;
  double p_x = 1.0;
  int n0 = 1;
};

/// C1 |boundary| e^{-C2 ell}.
double epsilon_symbolic(const QParams& params, double ell);

/// log D(ell) = kappa |boundary| (3 ell)^nu log d_inf.
double log_scale(const QParams& params, double ell);

struct QDistribution {
  int m0 = 1;
  int n0 = 1;
  /// log D at m0, m0 + n0, m0 + 2 n0, ... until the cap is reached.
  std::vector<double> log_d_scales;
  /// Integer block edges after capping at the support length.
  std::vector<Index> edges;
  bool capped = false;
  double plateau = 0.0;
  /// Mass of the unnormalized weights on the support before renormalization.
  double raw_mass = 0.0;
  RealVector weights;
};

/// Builds q on {1..n}. Throws BadConstants when C1 <= 1, C2 <= 0 or p_x outside (0, 1].
QDistribution q_distribution(const QParams& params, Index n);

struct QBound {
  double value = 0.0;    // sum -lambda log q
  double entropy = 0.0;  // sum -lambda log lambda
  Check gibbs;
};

/// Throws SupportMismatch when q vanishes where lambda does not.
QBound q_bound(const SchmidtSpectrum& lambda, const RealVector& q);
QBound q_bound(const SchmidtSpectrum& lambda, const QDistribution& q);

struct EntropyBound {
  int n0 = 1;
  double ratio = 0.0;  // e^{-C2 n0}
  double c3_mid = 0.0;
  double c3p = 0.0;
  double c4p = 0.0;
  double c5p = 0.0;
  double c4 = 0.0;
  double c3_final = 0.0;
  int m0 = 1;
  /// C3' |b| m0^nu + C4' |b| + C5'
  double with_m0 = 0.0;
  /// C3' |b| (1 + log(2 C1 |b| / p) / C2)^nu + C4' |b| + C5'
  double intermediate = 0.0;
  /// c3_final |b| (log |b|)^nu + C4 |b| (log 1/p)^nu
  double value = 0.0;
  /// The last step needs |b| >= e.
  bool final_form_dominates = true;
};

EntropyBound entropy_bound(double boundary_size, double p_x, double c2, const EntropyConstants& constants);

/// Tr A (log A - log B) for density matrices; +infinity when supp A is not inside supp B.
template <typename Scalar>
double relative_entropy(const Matrix<Scalar>& a, const Matrix<Scalar>& b);

/// t log(t/s) + (1-t) log((1-t)/(1-s)).
double binary_relative_entropy(double t, double s);

enum class DivisionStatus { Passed, Failed, PreconditionNotMet };

struct DivisionVerdict {
  DivisionStatus status = DivisionStatus::PreconditionNotMet;
  std::string reason;
  double s_y = 0.0;
  double s_y_in = 0.0;   // s(Y cap X)
  double s_y_out = 0.0;  // s(Y minus X)
  double mutual_information = 0.0;
  double p_x = 0.0;
  double epsilon = 0.0;
  double omega_ob = 0.0;
  double product_ob = 0.0;
  double pinched = 0.0;
  double rhs = 0.0;
  CheckList checks;
};

/// o_b must be a positive contraction supported in y; epsilon is the measured defect of the
/// factorization that produced it.
template <typename Scalar>
DivisionVerdict division_check(const StateVector<Scalar>& omega, const Region& x, const Region& y,
                               const Observable<Scalar>& o_b, double epsilon);

struct WindowCandidate {
  int a0 = 0;
  int b0 = 0;
  double p = 0.0;
};

struct WindowSearch {
  int a0 = 0;
  int b0 = 0;
  double p = 0.0;
  double threshold = 0.0;
  bool met = false;
  std::vector<WindowCandidate> candidates;
};

/// 4 r n^{nu-1} C1 e^{-C2 ell0}.
double window_threshold(double range, int n, int nu, double c1, double c2, double ell0);

/// Slabs [a0, b0] x [1, n]^{nu-1} with a0 in [a - ell0, a], b0 in [b, b + ell0], maximizing p.
template <typename Scalar>
WindowSearch window_search(const StateVector<Scalar>& omega, const Lattice& lattice, int a, int b, int ell0,
                           double threshold);

template <typename Scalar>
WindowSearch window_search(const Interaction<Scalar>& phi, const Region& volume, int a, int b, int ell0,
                           double threshold);

struct EntropyReport {
  Region region;
  double s = 0.0;
  double p_x = 0.0;
  SchmidtSpectrum schmidt;
  std::optional<double> bound_rhs;
  double max_entropy = 0.0;  // |region| log d_inf
};

template <typename Scalar>
EntropyReport entropy_report(const StateVector<Scalar>& omega, const Region& x);

struct AreaSweep {
  std::vector<int> cuts;
  std::vector<EntropyReport> reports;
  /// max_m s(m) - s(largest m)
  double saturation = 0.0;
};

/// Cut m keeps the first m slabs of the volume.
template <typename Scalar>
AreaSweep area_sweep(const StateVector<Scalar>& omega, const Lattice& lattice, const std::vector<int>& cuts);

/// Diagonalizes phi on volume first; NotGapped propagates.
template <typename Scalar>
AreaSweep area_sweep(const Interaction<Scalar>& phi, const Region& volume, const std::vector<int>& cuts);

}  // namespace hlab
