#include "hlab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hlab/spectral.hpp"

namespace hlab {

namespace {

constexpr double kFloor = 1e-14;

double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

template <typename Scalar>
Vector<Scalar> from_product(const BipartitionMap& map, const Matrix<Scalar>& m) {
  Vector<Scalar> v(Index(map.perm.size()));
  for (Index i = 0; i < v.size(); ++i) v(i) = m(map.cut_index(i), map.rest_index(i));
  return v;
}

int max_site_dim(const TensorLayout& layout) {
  int d = 1;
  for (int x : layout.dims) d = std::max(d, x);
  return d;
}

/// log(e^a - e^b) for a > b.
double log_diff(double a, double b) { return a + std::log1p(-std::exp(b - a)); }

Region first_slabs(const Lattice& lat, const Region& volume, int m) {
  int lo = std::numeric_limits<int>::max();
  for (int s : volume) lo = std::min(lo, lat.coords(s)[0]);
  return intersect(volume, lat.slab(lo, lo + m - 1));
}

/// V log(max(w, floor)) V*.
template <typename Scalar>
Matrix<Scalar> floored_log(const Matrix<Scalar>& rho) {
  const auto e = hermitian_eig<Scalar>(rho);
  RealVector w(e.values.size());
  for (Index i = 0; i < w.size(); ++i) w(i) = std::log(std::max(e.values(i), kFloor));
  return spectral_function<Scalar>(e.vectors, w);
}

}  // namespace

Index SchmidtSpectrum::rank(double tol) const {
  Index r = 0;
  for (Index i = 0; i < lambdas.size(); ++i)
    if (lambdas(i) > tol) ++r;
  return r;
}

double SchmidtSpectrum::head(Index k) const {
  k = std::clamp<Index>(k, 0, lambdas.size());
  return lambdas.head(k).sum();
}

template <typename Scalar>
SchmidtDecomposition<Scalar> schmidt_decomposition(const StateVector<Scalar>& omega, const Region& x) {
  SchmidtDecomposition<Scalar> out;
  out.map = bipartition(omega.layout(), x);
  const Matrix<Scalar> m = out.map.reshape(omega.amplitudes());
  Eigen::BDCSVD<Matrix<Scalar>> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RealVector s = svd.singularValues();
  out.spectrum.lambdas = s.cwiseAbs2();
  const double total = out.spectrum.lambdas.sum();
  out.spectrum.lambdas /= total;
  out.left = svd.matrixU();
  out.right = svd.matrixV().conjugate();
  return out;
}

template <typename Scalar>
SchmidtSpectrum schmidt(const StateVector<Scalar>& omega, const Region& x) {
  return schmidt_decomposition(omega, x).spectrum;
}

double entropy(const SchmidtSpectrum& lambda) {
  double s = 0.0;
  for (Index i = 0; i < lambda.lambdas.size(); ++i) s -= xlogx(lambda.lambdas(i));
  return std::max(s, 0.0);
}

template <typename Scalar>
double entropy_of(const StateVector<Scalar>& omega, const Region& region) {
  if (region.empty() || region == omega.volume()) return 0.0;
  return entropy(schmidt(omega, region));
}

template <typename Scalar>
Matrix<Scalar> reduced_density(const StateVector<Scalar>& omega, const Region& region) {
  const Vector<Scalar>& v = omega.amplitudes();
  if (region.empty()) return Matrix<Scalar>::Ones(1, 1);
  if (region == omega.volume()) return v * v.adjoint();
  const BipartitionMap map = bipartition(omega.layout(), region);
  const Matrix<Scalar> m = map.reshape(v);
  return m * m.adjoint();
}

template <typename Scalar>
Fidelity fidelity(const StateVector<Scalar>& omega, const Region& x) {
  const SchmidtSpectrum sp = schmidt(omega, x);
  Fidelity f;
  f.p_x = sp.lambdas.array().cube().sum();
  const BipartitionMap map = bipartition(omega.layout(), x);
  const Matrix<Scalar> m = map.reshape(omega.amplitudes());
  const Matrix<Scalar> rho_x = m * m.adjoint();
  const Matrix<Scalar> rho_rest = m.transpose() * m.conjugate();
  // (rho_X (x) 1)(1 (x) rho_rest) acts on the reshaped vector as rho_X M rho_rest^T.
  const Matrix<Scalar> image = rho_x * m * rho_rest.transpose();
  f.cross_check = std::real(m.conjugate().cwiseProduct(image).sum());
  return f;
}

template <typename Scalar>
SigmaVerdict sigma_check(const StateVector<Scalar>& omega, const Region& x, const LinearMap<Scalar>& o,
                         double d_boundary, double epsilon) {
  const SchmidtDecomposition<Scalar> sd = schmidt_decomposition(omega, x);
  const RealVector& lam = sd.spectrum.lambdas;
  const Vector<Scalar>& w = omega.amplitudes();
  double trace = 0.0, weighted = 0.0;
  for (Index i = 0; i < lam.size(); ++i) {
    if (lam(i) <= 0) continue;
    for (Index j = 0; j < lam.size(); ++j) {
      if (lam(j) <= 0) continue;
      const Matrix<Scalar> prod = sd.left.col(i) * sd.right.col(j).transpose();
      const Vector<Scalar> xi = o(from_product<Scalar>(sd.map, prod));
      const double weight = lam(i) * lam(j);
      trace += weight * xi.squaredNorm();
      weighted += weight * std::norm(w.dot(xi));
    }
  }
  if (trace < 1e-14) throw Error(ErrorCode::ZeroTrace, "O rho_X rho'_X O* has vanishing trace");

  SigmaVerdict v;
  v.trace = trace;
  v.overlap = weighted / trace;
  v.epsilon = epsilon;
  v.p_x = lam.array().cube().sum();
  const double kb = std::floor(std::min<double>(d_boundary, double(lam.size())));
  v.head_sum = kb >= double(lam.size()) ? 1.0 : sd.spectrum.head(Index(kb));
  v.checks.add("sigma_overlap_vs_schmidt_head", v.overlap, v.head_sum, "sigma overlap bounded by the leading Schmidt mass",
               1e-9);
  v.checks.add("sigma_defect", 1.0 - v.overlap, 2.0 * epsilon / v.p_x, "1 - <Omega, sigma Omega> <= 2 eps / p_X", 1e-9);
  v.checks.add("sigma_trace_contraction", trace, 1.0, "Tr sigma-tilde <= 1 for a contraction O", 1e-9);
  return v;
}

template <typename Scalar>
SigmaVerdict sigma_check(const StateVector<Scalar>& omega, const Region& x, const Observable<Scalar>& o,
                         double d_boundary, double epsilon) {
  const TensorLayout& vol = omega.layout();
  LinearMap<Scalar> f = [&](const Vector<Scalar>& v) { return apply(o, v, vol); };
  return sigma_check<Scalar>(omega, x, f, d_boundary, epsilon);
}

double epsilon_symbolic(const QParams& params, double ell) {
  return params.constants.c1 * params.boundary_size * std::exp(-params.c2 * ell);
}

double log_scale(const QParams& params, double ell) {
  const auto& k = params.constants;
  return k.kappa * params.boundary_size * std::pow(3.0 * ell, k.nu) * std::log(k.d_inf);
}

namespace {

void require_constants(double c1, double c2, const EntropyConstants& k, double p_x, double boundary) {
  if (!(c1 > 1.0)) throw Error(ErrorCode::BadConstants, "C1 must exceed 1");
  if (!(c2 > 0.0)) throw Error(ErrorCode::BadConstants, "C2 must be positive");
  if (!(k.kappa > 0.0) || k.nu < 1 || !(k.d_inf >= 2.0))
    throw Error(ErrorCode::BadConstants, "need kappa > 0, nu >= 1, d_inf >= 2");
  if (!(p_x > 0.0) || p_x > 1.0 + 1e-12) throw Error(ErrorCode::BadConstants, "p_X must lie in (0, 1]");
  if (!(boundary >= 1.0)) throw Error(ErrorCode::BadConstants, "boundary size must be at least 1");
}

int first_scale(const QParams& params) {
  int m = 1;
  while (2.0 * epsilon_symbolic(params, m) / params.p_x >= 1.0) ++m;
  return m;
}

}  // namespace

QDistribution q_distribution(const QParams& params, Index n) {
  require_constants(params.constants.c1, params.c2, params.constants, params.p_x, params.boundary_size);
  if (params.n0 < 1) throw Error(ErrorCode::BadConstants, "n0 must be a positive integer");
  if (n < 1) throw Error(ErrorCode::BadConstants, "empty support");
  QDistribution q;
  q.m0 = first_scale(params);
  q.n0 = params.n0;
  q.weights = RealVector::Zero(n);
  const double log_n = std::log(double(n));
  auto edge = [&](double log_d) -> Index {
    if (log_d >= log_n) return n;
    return std::min<Index>(n, Index(std::floor(std::exp(log_d) + 1e-9)));
  };

  const double log_d0 = log_scale(params, q.m0);
  q.log_d_scales.push_back(log_d0);
  q.plateau = std::exp(std::log1p(-2.0 * epsilon_symbolic(params, q.m0) / params.p_x) - log_d0);
  Index lo = edge(log_d0);
  q.edges.push_back(lo);
  for (Index j = 0; j < lo; ++j) q.weights(j) = q.plateau;
  q.capped = lo == n;

  for (int m = 0; lo < n; ++m) {
    const double l0 = q.m0 + double(q.n0) * m, l1 = q.m0 + double(q.n0) * (m + 1);
    const double ld0 = log_scale(params, l0), ld1 = log_scale(params, l1);
    q.log_d_scales.push_back(ld1);
    const double e0 = epsilon_symbolic(params, l0), e1 = epsilon_symbolic(params, l1);
    const double log_w = std::log(2.0 / params.p_x) + std::log(e0 - e1) - log_diff(ld1, ld0);
    const Index hi = edge(ld1);
    for (Index j = lo; j < hi; ++j) q.weights(j) = std::exp(log_w);
    q.edges.push_back(hi);
    if (hi == n) q.capped = ld1 > log_n;
    lo = hi;
  }
  q.raw_mass = q.weights.sum();
  if (q.raw_mass > 0) q.weights /= q.raw_mass;
  return q;
}

QBound q_bound(const SchmidtSpectrum& lambda, const RealVector& q) {
  if (q.size() < lambda.size()) throw Error(ErrorCode::SupportMismatch, "q is shorter than the spectrum");
  QBound b;
  for (Index j = 0; j < lambda.size(); ++j) {
    const double l = lambda.lambdas(j);
    if (l <= 0) continue;
    if (q(j) <= 0) throw Error(ErrorCode::SupportMismatch, "q vanishes on the support of lambda");
    b.value -= l * std::log(q(j));
  }
  b.entropy = entropy(lambda);
  b.gibbs = Check{"gibbs", b.entropy, b.value, 1e-10, "sum -lambda log lambda <= sum -lambda log q", true};
  return b;
}

QBound q_bound(const SchmidtSpectrum& lambda, const QDistribution& q) { return q_bound(lambda, q.weights); }

EntropyBound entropy_bound(double boundary_size, double p_x, double c2, const EntropyConstants& k) {
  require_constants(k.c1, c2, k, p_x, boundary_size);
  EntropyBound b;
  b.n0 = 1;
  const double r = std::exp(-c2 * b.n0);
  b.ratio = r;
  const double nu = k.nu, logd = std::log(k.d_inf);
  b.c3_mid = std::pow(6.0, nu) * k.kappa * logd / 2.0;
  b.c3p = std::pow(3.0, nu) * k.kappa * logd + b.c3_mid / (1.0 - r);

  // sum_{m>=1} m^nu r^m, summed past the peak until the terms are negligible
  double series = 0.0;
  for (int m = 1; m < 10000000; ++m) {
    const double term = std::pow(double(m), nu) * std::pow(r, m);
    series += term;
    if (m > nu / std::max(-std::log(r), 1e-300) && term < 1e-17 * series) break;
  }
  b.c4p = std::pow(6.0 * b.n0, nu) * k.kappa * logd / 2.0 * series;
  b.c5p = 1.0 / std::numbers::e + c2 * b.n0 * r / ((1.0 - r) * (1.0 - r)) + (c2 - std::log(1.0 - r)) / (1.0 - r);
  b.c4 = std::pow(3.0, nu - 1.0) / std::pow(c2, nu) * b.c3p;
  b.c3_final = b.c4 + b.c4 * std::pow(c2 + std::log(2.0 * k.c1), nu) + b.c4p + b.c5p;

  QParams qp{k, c2, boundary_size, p_x, b.n0};
  b.m0 = first_scale(qp);
  b.with_m0 = b.c3p * boundary_size * std::pow(double(b.m0), nu) + b.c4p * boundary_size + b.c5p;
  b.intermediate =
      b.c3p * boundary_size * std::pow(1.0 + std::log(2.0 * k.c1 * boundary_size / p_x) / c2, nu) +
      b.c4p * boundary_size + b.c5p;
  b.value = b.c3_final * boundary_size * std::pow(std::log(boundary_size), nu) +
            b.c4 * boundary_size * std::pow(std::log(1.0 / p_x), nu);
  b.final_form_dominates = boundary_size >= std::numbers::e;
  return b;
}

template <typename Scalar>
double relative_entropy(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  if (a.rows() != b.rows() || a.rows() != a.cols() || b.rows() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "relative entropy needs square matrices of equal size");
  const auto ea = hermitian_eig<Scalar>(a);
  const auto eb = hermitian_eig<Scalar>(b);
  // mass of A on the kernel of B
  Matrix<Scalar> kernel = Matrix<Scalar>::Zero(b.rows(), 0);
  std::vector<Index> ker;
  for (Index i = 0; i < eb.values.size(); ++i)
    if (eb.values(i) < kFloor) ker.push_back(i);
  if (!ker.empty()) {
    kernel.resize(b.rows(), Index(ker.size()));
    for (size_t c = 0; c < ker.size(); ++c) kernel.col(Index(c)) = eb.vectors.col(ker[c]);
    const double leak = std::real((kernel.adjoint() * a * kernel).trace());
    if (leak > 1e-12) return std::numeric_limits<double>::infinity();
  }
  double s = 0.0;
  for (Index i = 0; i < ea.values.size(); ++i) s += xlogx(std::max(ea.values(i), 0.0) >= kFloor ? ea.values(i) : 0.0);
  RealVector logb(eb.values.size());
  for (Index i = 0; i < eb.values.size(); ++i) logb(i) = std::log(std::max(eb.values(i), kFloor));
  const Matrix<Scalar> ab = eb.vectors.adjoint() * a * eb.vectors;
  for (Index i = 0; i < logb.size(); ++i) s -= std::real(ab(i, i)) * logb(i);
  return std::max(s, 0.0);
}

double binary_relative_entropy(double t, double s) {
  t = std::clamp(t, 0.0, 1.0);
  s = std::clamp(s, 0.0, 1.0);
  auto term = [](double a, double b) {
    if (a <= 0) return 0.0;
    if (b <= 0) return std::numeric_limits<double>::infinity();
    return a * std::log(a / b);
  };
  return term(t, s) + term(1.0 - t, 1.0 - s);
}

template <typename Scalar>
DivisionVerdict division_check(const StateVector<Scalar>& omega, const Region& x, const Region& y,
                               const Observable<Scalar>& o_b, double epsilon) {
  DivisionVerdict v;
  v.epsilon = epsilon;
  const Region y_in = intersect(y, x), y_out = minus(y, x);
  v.s_y = entropy_of(omega, y);
  v.s_y_in = entropy_of(omega, y_in);
  v.s_y_out = entropy_of(omega, y_out);
  v.mutual_information = v.s_y_in + v.s_y_out - v.s_y;
  v.p_x = fidelity(omega, x).p_x;
  v.checks.add("subadditivity", v.s_y, v.s_y_in + v.s_y_out, "s(Y) <= s(Y cap X) + s(Y minus X)", 1e-10);

  const Index d_y = omega.layout().restrict_to(y).dim();
  if (d_y <= 1024 && !y_in.empty() && !y_out.empty()) {
    // log of the product state taken factor by factor, so tiny products stay resolvable
    const TensorLayout li = omega.layout().restrict_to(y_in), lo = omega.layout().restrict_to(y_out);
    const Observable<Scalar> log_in(li, floored_log<Scalar>(reduced_density(omega, y_in)));
    const Observable<Scalar> log_out(lo, floored_log<Scalar>(reduced_density(omega, y_out)));
    const Matrix<Scalar> log_b =
        tensor(log_in, Observable<Scalar>::identity(lo)).matrix() + tensor(Observable<Scalar>::identity(li), log_out).matrix();
    const Matrix<Scalar> rho_y = reduced_density(omega, y);
    double direct = -std::real(rho_y.transpose().cwiseProduct(log_b).sum());
    const RealVector ev = hermitian_eigvals<Scalar>(rho_y);
    for (Index i = 0; i < ev.size(); ++i) direct += ev(i) >= kFloor ? xlogx(ev(i)) : 0.0;
    v.checks.add("mutual_information_identity", std::abs(direct - v.mutual_information), 0.0,
                 "relative entropy to the product of marginals equals the mutual information", 1e-8);
  }

  if (!o_b.support().subset_of(y)) {
    v.reason = "support of O_B is not inside Y";
    return v;
  }
  const RealVector ev = hermitian_eigvals<Scalar>(o_b.matrix());
  if (ev.minCoeff() < -1e-9 || ev.maxCoeff() > 1.0 + 1e-9) {
    v.reason = "O_B is not a positive contraction";
    return v;
  }

  const TensorLayout& vol = omega.layout();
  const Vector<Scalar>& w = omega.amplitudes();
  v.omega_ob = std::real(w.dot(apply(o_b, w, vol)));
  const Region s = o_b.support();
  const Region s_in = intersect(s, x), s_out = minus(s, x);
  Matrix<Scalar> prod;
  if (s_in.empty() || s_out.empty()) {
    prod = reduced_density(omega, s);
  } else {
    const Observable<Scalar> a(vol.restrict_to(s_in), reduced_density(omega, s_in));
    const Observable<Scalar> b(vol.restrict_to(s_out), reduced_density(omega, s_out));
    prod = tensor(a, b).matrix();
  }
  v.product_ob = std::real(prod.transpose().cwiseProduct(o_b.matrix()).sum());
  v.pinched = binary_relative_entropy(v.omega_ob, v.product_ob);
  v.checks.add("pinched_data_processing", v.pinched, v.mutual_information,
               "two-outcome relative entropy of {O_B, 1 - O_B} below the full relative entropy", 1e-9);
  v.checks.add("occupation_lower", 1.0 - v.omega_ob, 3.0 * epsilon, "1 - omega(O_B) <= 3 eps");

  const double root = std::sqrt(epsilon);
  if (v.p_x > 0.25) {
    v.reason = "p_X exceeds 1/4";
    return v;
  }
  if (24.0 * root >= 1.0) {
    v.reason = "24 sqrt(eps) >= 1";
    return v;
  }
  v.checks.add("product_occupation_upper", v.product_ob, v.p_x + 2.0 * (5.0 * epsilon + root),
               "omega_product(O_B) <= p_X + 2 (5 eps + sqrt eps)");
  v.rhs = v.s_y_in + v.s_y_out - 0.5 * std::log(1.0 / (v.p_x + 6.0 * root)) + std::log(2.0);
  v.checks.add("division", v.s_y, v.rhs, "entropy division inequality", 1e-8);
  v.status = v.checks.all_passed() ? DivisionStatus::Passed : DivisionStatus::Failed;
  return v;
}

double window_threshold(double range, int n, int nu, double c1, double c2, double ell0) {
  return 4.0 * range * std::pow(double(n), nu - 1) * c1 * std::exp(-c2 * ell0);
}

template <typename Scalar>
WindowSearch window_search(const StateVector<Scalar>& omega, const Lattice& lattice, int a, int b, int ell0,
                           double threshold) {
  if (!lattice.is_truncation()) throw Error(ErrorCode::BadGeometry, "window search needs a chain or grid");
  if (a > b || ell0 < 0) throw Error(ErrorCode::BadGeometry, "need a <= b and ell0 >= 0");
  const Region& vol = omega.volume();
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  for (int s : vol) {
    lo = std::min(lo, lattice.coords(s)[0]);
    hi = std::max(hi, lattice.coords(s)[0]);
  }
  if (a - ell0 < lo || b + ell0 > hi)
    throw Error(ErrorCode::GeometryOverflow, "search window leaves the volume");
  WindowSearch ws;
  ws.threshold = threshold;
  ws.p = -1.0;
  for (int a0 = a; a0 >= a - ell0; --a0) {
    for (int b0 = b; b0 <= b + ell0; ++b0) {
      const Region slab = intersect(vol, lattice.slab(a0, b0));
      const double p = fidelity(omega, slab).p_x;
      ws.candidates.push_back({a0, b0, p});
      if (p > ws.p) {
        ws.p = p;
        ws.a0 = a0;
        ws.b0 = b0;
      }
    }
  }
  ws.met = ws.p >= threshold;
  return ws;
}

template <typename Scalar>
WindowSearch window_search(const Interaction<Scalar>& phi, const Region& volume, int a, int b, int ell0,
                           double threshold) {
  const SpectralData<Scalar> spec = diagonalize(local_hamiltonian(phi, volume));
  return window_search(spec.ground(), phi.lattice(), a, b, ell0, threshold);
}

template <typename Scalar>
EntropyReport entropy_report(const StateVector<Scalar>& omega, const Region& x) {
  EntropyReport r;
  r.region = x;
  r.schmidt = schmidt(omega, x);
  r.s = entropy(r.schmidt);
  r.p_x = r.schmidt.lambdas.array().cube().sum();
  r.max_entropy = x.size() * std::log(double(max_site_dim(omega.layout())));
  return r;
}

template <typename Scalar>
AreaSweep area_sweep(const StateVector<Scalar>& omega, const Lattice& lattice, const std::vector<int>& cuts) {
  AreaSweep out;
  out.cuts = cuts;
  for (int m : cuts) {
    if (m < 1) throw Error(ErrorCode::DegenerateCut, "cut must keep at least one slab");
    out.reports.push_back(entropy_report(omega, first_slabs(lattice, omega.volume(), m)));
  }
  if (!out.reports.empty()) {
    size_t last = 0;
    double top = out.reports[0].s;
    for (size_t i = 0; i < cuts.size(); ++i) {
      if (cuts[i] > cuts[last]) last = i;
      top = std::max(top, out.reports[i].s);
    }
    out.saturation = top - out.reports[last].s;
  }
  return out;
}

template <typename Scalar>
AreaSweep area_sweep(const Interaction<Scalar>& phi, const Region& volume, const std::vector<int>& cuts) {
  const SpectralData<Scalar> spec = diagonalize(local_hamiltonian(phi, volume));
  return area_sweep(spec.ground(), phi.lattice(), cuts);
}

#define HLAB_INSTANTIATE(S)                                                                                   \
  template SchmidtDecomposition<S> schmidt_decomposition<S>(const StateVector<S>&, const Region&);            \
  template SchmidtSpectrum schmidt<S>(const StateVector<S>&, const Region&);                                  \
  template double entropy_of<S>(const StateVector<S>&, const Region&);                                        \
  template Matrix<S> reduced_density<S>(const StateVector<S>&, const Region&);                                \
  template Fidelity fidelity<S>(const StateVector<S>&, const Region&);                                        \
  template SigmaVerdict sigma_check<S>(const StateVector<S>&, const Region&, const LinearMap<S>&, double,     \
                                       double);                                                               \
  template SigmaVerdict sigma_check<S>(const StateVector<S>&, const Region&, const Observable<S>&, double,    \
                                       double);                                                               \
  template double relative_entropy<S>(const Matrix<S>&, const Matrix<S>&);                                    \
  template DivisionVerdict division_check<S>(const StateVector<S>&, const Region&, const Region&,             \
                                             const Observable<S>&, double);                                   \
  template WindowSearch window_search<S>(const StateVector<S>&, const Lattice&, int, int, int, double);       \
  template WindowSearch window_search<S>(const Interaction<S>&, const Region&, int, int, int, double);        \
  template EntropyReport entropy_report<S>(const StateVector<S>&, const Region&);                             \
  template AreaSweep area_sweep<S>(const StateVector<S>&, const Lattice&, const std::vector<int>&);           \
  template AreaSweep area_sweep<S>(const Interaction<S>&, const Region&, const std::vector<int>&);

HLAB_INSTANTIATE(double)
HLAB_INSTANTIATE(cplx)

}  // namespace hlab
