#include "hlab/lrbound.hpp"

#include <cmath>
#include <limits>

namespace hlab {

namespace {

template <typename Scalar>
std::vector<Region> supports_within(const Interaction<Scalar>& phi, const Region& volume) {
  std::vector<Region> out;
  for (const Region& s : phi.supports())
    if (s.subset_of(volume)) out.push_back(s);
  return out;
}

double hermitian_aware_norm(const Matrix<cplx>& c, bool anti_hermitian) {
  if (anti_hermitian) return op_norm<cplx>(cplx(0, 1) * c, true);
  return op_norm<cplx>(c, false);
}

}  // namespace

template <typename Scalar>
LRConstants lr_constants(const Interaction<Scalar>& phi, const FFunction& f, double mu) {
  if (!(mu > 0)) throw Error(ErrorCode::BadConstants, "mu must be positive");
  const Lattice& lat = phi.lattice();
  const FFunction fm = f.weighted(mu);
  const FConstants plain = f_constants(f, lat);
  const FConstants weighted = f_constants(fm, lat);
  LRConstants c;
  c.mu = mu;
  c.f_norm = plain.f_norm;
  c.c_f = plain.c_f;
  c.phi_f_norm = phi_f_norm(phi, f);
  c.f_mu_norm = weighted.f_norm;
  c.c_f_mu = weighted.c_f;
  c.phi_f_mu_norm = phi_f_norm(phi, fm);
  c.c_mu = 2.0 * plain.f_norm / weighted.c_f;
  c.v_mu = 2.0 * c.phi_f_mu_norm * weighted.c_f / mu;
  c.truncation_sites = lat.size();
  c.phi_f_mu_bound = std::exp(mu * phi.range()) * c.phi_f_norm;
  return c;
}

template <typename Scalar>
LRBound lr_rhs(const Region& x, const Region& y, double t, const Interaction<Scalar>& phi, const FFunction& f,
               const LRConstants& c) {
  if (!x.subset_of(y)) throw Error(ErrorCode::BadGeometry, "X must lie inside Y");
  const Lattice& lat = phi.lattice();
  const Region yc = complement(lat, y);
  const Region bx = phi_boundary(x, phi);
  LRBound out;
  if (yc.empty() || bx.empty()) return out;
  double pair_sum = 0.0;
  for (int a : bx)
    for (int b : yc) pair_sum += f(lat.distance(a, b));
  const double at = std::abs(t);
  out.thm_bound = (2.0 / c.c_f) * std::expm1(2.0 * c.phi_f_norm * c.c_f * at) * pair_sum;
  out.cor_bound = c.c_mu * bx.size() * std::exp(-c.mu * (distance(lat, x, yc) - c.v_mu * at));
  out.assembled_bound = (2.0 * c.f_norm / c.c_f_mu) * std::exp(2.0 * c.phi_f_mu_norm * c.c_f_mu * at) * bx.size() *
                        std::exp(-c.mu * distance(lat, bx, yc));
  return out;
}

template <typename Scalar>
LRMeasurement lr_empirical(const Observable<Scalar>& a, const Observable<Scalar>& b, double t,
                           const SpectralData<Scalar>& spec, const LRBound& bound) {
  const Observable<cplx> at = evolve(a, t, spec);
  const Matrix<cplx> eb = to_complex(embed(b, spec.layout)).matrix();
  const Matrix<cplx> comm = at.matrix() * eb - eb * at.matrix();
  LRMeasurement out;
  out.measured = hermitian_aware_norm(comm, a.hermitian() && b.hermitian());
  out.thm_margin = bound.thm_bound - out.measured;
  out.cor_margin = bound.cor_bound - out.measured;
  return out;
}

template <typename Scalar>
double truncation_rhs(const Region& x, const Region& inner, const Region& outer, double t,
                      const Interaction<Scalar>& phi, const LRConstants& c, const InteractionConstants& ic,
                      double norm_a) {
  if (!x.subset_of(inner) || !inner.subset_of(outer))
    throw Error(ErrorCode::BadGeometry, "need support inside inner inside outer");
  const Region inner_c = minus(outer, inner);
  if (inner_c.empty()) return 0.0;
  const double gap = distance(phi.lattice(), inner_c, x);
  if (gap <= phi.range()) throw Error(ErrorCode::RangeViolation, "inner complement within range of the support");
  const auto supports = supports_within(phi, outer);
  const double bx = phi_boundary(x, supports).size();
  const double bi = phi_boundary(inner, supports).size();
  return (c.c_mu * ic.j1 / (c.mu * c.v_mu)) * bx * bi * std::exp(-c.mu * (gap - phi.range())) *
         std::expm1(c.mu * c.v_mu * std::abs(t)) * norm_a;
}

template <typename Scalar>
TruncationCheck truncation_check(const Observable<Scalar>& a, const SpectralData<Scalar>& inner,
                                 const SpectralData<Scalar>& outer, double t, const Interaction<Scalar>& phi,
                                 const LRConstants& consts, const InteractionConstants& ic) {
  TruncationCheck out;
  out.rhs = truncation_rhs(a.support(), inner.layout.region, outer.layout.region, t, phi, consts, ic, a.norm());
  const Observable<cplx> full = evolve(a, t, outer);
  const Observable<cplx> part = embed(evolve(a, t, inner), outer.layout);
  Matrix<cplx> diff = full.matrix() - part.matrix();
  diff = (diff + diff.adjoint()).eval() / 2.0;
  out.measured = a.hermitian() ? op_norm<cplx>(diff, true) : op_norm<cplx>(full.matrix() - part.matrix(), false);
  return out;
}

template <typename Scalar>
TruncationCheck truncation_check(const Observable<Scalar>& a, const Region& inner, const Region& outer, double t,
                                 const Interaction<Scalar>& phi, const LRConstants& consts,
                                 const InteractionConstants& ic) {
  const auto outer_spec = diagonalize_ungapped(local_hamiltonian(phi, outer));
  const auto inner_spec = diagonalize_ungapped(local_hamiltonian(phi, inner));
  return truncation_check(a, inner_spec, outer_spec, t, phi, consts, ic);
}

#define HLAB_INSTANTIATE(S)                                                                                    \
  template LRConstants lr_constants<S>(const Interaction<S>&, const FFunction&, double);                       \
  template LRBound lr_rhs<S>(const Region&, const Region&, double, const Interaction<S>&, const FFunction&,     \
                             const LRConstants&);                                                              \
  template LRMeasurement lr_empirical<S>(const Observable<S>&, const Observable<S>&, double,                   \
                                         const SpectralData<S>&, const LRBound&);                              \
  template double truncation_rhs<S>(const Region&, const Region&, const Region&, double, const Interaction<S>&, \
                                    const LRConstants&, const InteractionConstants&, double);                  \
  template TruncationCheck truncation_check<S>(const Observable<S>&, const SpectralData<S>&,                   \
                                               const SpectralData<S>&, double, const Interaction<S>&,          \
                                               const LRConstants&, const InteractionConstants&);               \
  template TruncationCheck truncation_check<S>(const Observable<S>&, const Region&, const Region&, double,     \
                                               const Interaction<S>&, const LRConstants&,                      \
                                               const InteractionConstants&);

HLAB_INSTANTIATE(double)
HLAB_INSTANTIATE(cplx)

}  // namespace hlab
