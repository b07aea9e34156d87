#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "hlab/checks.hpp"
#include "hlab/lrbound.hpp"
#include "hlab/model.hpp"
#include "hlab/spectral.hpp"

namespace hlab {

/// Factor order inside the integrand of P-hat. RightLeft: e^{itK} e^{-itM_R} e^{-itM_L};
/// LeftRight: e^{itK} e^{-itM_L} e^{-itM_R}.
enum class PhatOrder { RightLeft, LeftRight };

/// ClosedForm integrates the Gaussian exactly in the mixed eigenbasis (needs [M_L, M_R] = 0);
/// Quadrature uses the Gauss-Hermite rule.
enum class PhatMethod { ClosedForm, Quadrature };

enum class LocalizeMode { Subalgebra, Commutant };

struct FactorizationConfig {
  Region x;
  double ell = 2.0;
  double mu = 1.0;
  double alpha = 0.0;  // <= 0 selects 1/ell
  int quad_nodes = 64;
  Region volume;       // empty selects the volume of the supplied spectrum
  PhatOrder order = PhatOrder::RightLeft;
  PhatMethod method = PhatMethod::ClosedForm;
  std::uint64_t seed = 0;
  int random_vectors = 64;
  /// Refuse ell <= range when false.
  bool allow_short_ell = true;
  /// Gauss-Hermite comparison against the closed form, skipped above this dimension.
  Index quadrature_check_cap = 4096;

  double effective_alpha() const { return alpha > 0 ? alpha : 1.0 / ell; }
};

template <typename Scalar>
struct FactorizationResult {
  TensorLayout volume;
  Region x;
  double ell = 0.0;
  double alpha = 0.0;
  double gamma = 0.0;
  double xi = 0.0;
  double eta = 0.0;

  Observable<Scalar> m_r, m_b, m_l;
  Observable<Scalar> o_r, o_l, o_b, o_b_pos;
  Vector<Scalar> omega;

  double defect = 0.0;
  double defect_pos = 0.0;
  bool positivized = false;

  CheckList diagnostics;
  /// Scalar by-products: norms, ranks, region sizes.
  std::map<std::string, double> info;
};

template <typename Scalar>
struct Localized {
  Observable<Scalar> m;
  double deviation = 0.0;
};

/// Subalgebra: normalized partial trace onto region. Commutant: trace out region (the twirl).
/// m is returned on its natural support; deviation is ||a - m|| inside support(a).
template <typename Scalar>
Localized<Scalar> localize(const Observable<Scalar>& a, const Region& region, LocalizeMode mode);

struct Thresholds {
  double xi = 0.0;
  double eta = 0.0;
};

Thresholds thresholds(double ell, double gamma, double mu, double v_mu);

template <typename Scalar>
struct PhatResult {
  Observable<Scalar> p;
  /// ||[M_L, M_R]||
  double lr_commutator = 0.0;
  bool closed_form = false;
};

/// integral of e^{itK} e^{-itM_R} e^{-itM_L} against f_alpha, K = M_L + M_B + M_R.
template <typename Scalar>
PhatResult<Scalar> phat(const Observable<Scalar>& m_l, const Observable<Scalar>& m_b, const Observable<Scalar>& m_r,
                        double alpha, int nodes, PhatOrder order = PhatOrder::RightLeft,
                        PhatMethod method = PhatMethod::Quadrature);

template <typename Scalar>
FactorizationResult<Scalar> factorize(const FactorizationConfig& cfg, const Interaction<Scalar>& phi,
                                      const SpectralData<Scalar>& spec, const InteractionConstants& consts,
                                      const LRConstants& lr);

/// Replaces the boundary factor by O_B* O_B and checks the positivization inequalities.
template <typename Scalar>
FactorizationResult<Scalar> positivize(FactorizationResult<Scalar> result);

/// sqrt(2 eps) + 3 eps + eps^2.
double positivization_bound(double eps);

}  // namespace hlab
