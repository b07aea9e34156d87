#include "hlab/spectral.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hlab {

namespace {

template <typename Scalar>
void fix_phases(Matrix<Scalar>& v) {
  for (Index k = 0; k < v.cols(); ++k) {
    Index best = 0;
    double mag = -1.0;
    for (Index i = 0; i < v.rows(); ++i) {
      const double m = std::abs(v(i, k));
      if (m > mag + 1e-12) {
        mag = m;
        best = i;
      }
    }
    const Scalar c = v(best, k);
    if constexpr (is_complex_v<Scalar>) {
      v.col(k) *= std::conj(c) / std::abs(c);
      v(best, k) = std::abs(c);
    } else if (c < 0) {
      v.col(k) = -v.col(k);
    }
  }
}

template <typename Scalar>
SpectralData<Scalar> decompose(const Observable<Scalar>& h) {
  if (!h.hermitian()) throw Error(ErrorCode::NotHermitian, "Hamiltonian is not self-adjoint");
  if (h.dim() > kDimensionCap) throw Error(ErrorCode::DimensionCap, "Hamiltonian too large");
  auto eig = hermitian_eig<Scalar>(h.matrix());
  SpectralData<Scalar> out;
  out.layout = h.layout();
  out.e0 = eig.values(0);
  out.h_norm = std::max(std::abs(eig.values(0)), std::abs(eig.values(eig.values.size() - 1)));
  out.energies = eig.values.array() - out.e0;
  out.energies(0) = 0.0;
  out.gap = out.energies.size() > 1 ? out.energies(1) : std::numeric_limits<double>::infinity();
  out.eigvecs = std::move(eig.vectors);
  fix_phases(out.eigvecs);
  return out;
}

}  // namespace

template <typename Scalar>
Observable<Scalar> SpectralData<Scalar>::ground_projector() const {
  const Vector<Scalar> g = eigvecs.col(0);
  return Observable<Scalar>(layout, g * g.adjoint());
}

template <typename Scalar>
SpectralData<Scalar> diagonalize(const Observable<Scalar>& h, double gap_tol) {
  SpectralData<Scalar> out = decompose(h);
  if (!(out.gap > gap_tol))
    throw Error(ErrorCode::NotGapped, "E1 - E0 = " + std::to_string(out.gap) + " within gap tolerance");
  return out;
}

template <typename Scalar>
SpectralData<Scalar> diagonalize_ungapped(const Observable<Scalar>& h) {
  return decompose(h);
}

template <typename Scalar>
std::pair<double, double> spectral_residuals(const Observable<Scalar>& h, const SpectralData<Scalar>& spec) {
  const Matrix<Scalar>& v = spec.eigvecs;
  const RealVector e = spec.energies.array() + spec.e0;
  const Matrix<Scalar> r = h.matrix() * v - v * e.asDiagonal();
  const double residual = r.colwise().norm().maxCoeff();
  const Matrix<Scalar> gram = v.adjoint() * v - Matrix<Scalar>::Identity(v.cols(), v.cols());
  return {residual, gram.cwiseAbs().maxCoeff()};
}

template <typename Scalar>
double expectation(const Observable<Scalar>& a, const SpectralData<Scalar>& spec) {
  const Vector<Scalar> g = spec.eigvecs.col(0);
  const Observable<Scalar> ea = embed(a, spec.layout);
  return std::real(g.dot(ea.matrix() * g));
}

template <typename Scalar>
Observable<cplx> evolve(const Observable<Scalar>& a, double t, const SpectralData<Scalar>& spec) {
  const Matrix<Scalar>& v = spec.eigvecs;
  const Matrix<Scalar> b = v.adjoint() * (embed(a, spec.layout).matrix() * v);
  const Index n = spec.dim();
  Matrix<cplx> c(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) c(i, j) = cplx(b(i, j)) * std::polar(1.0, t * (spec.energies(i) - spec.energies(j)));
  return Observable<cplx>(spec.layout, conjugate_by<Scalar>(v, c));
}

template <typename Scalar>
Observable<Scalar> gaussian_filter(const Observable<Scalar>& a, double alpha, const SpectralData<Scalar>& spec) {
  if (!(alpha > 0)) throw Error(ErrorCode::BadConstants, "filter strength must be positive");
  const Matrix<Scalar>& v = spec.eigvecs;
  Matrix<Scalar> b = v.adjoint() * (embed(a, spec.layout).matrix() * v);
  const Index n = spec.dim();
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) {
      const double d = spec.energies(i) - spec.energies(j);
      b(i, j) *= std::exp(-d * d / (4.0 * alpha));
    }
  Matrix<Scalar> out = v * (b * v.adjoint());
  if (a.hermitian()) out = (out + out.adjoint()).eval() / 2.0;
  return Observable<Scalar>(spec.layout, std::move(out));
}

template <typename Scalar>
HeatProjector<Scalar> heat_projector(const SpectralData<Scalar>& spec, double alpha) {
  if (!(alpha > 0)) throw Error(ErrorCode::BadConstants, "filter strength must be positive");
  const RealVector w = spec.energies.unaryExpr([&](double e) { return std::exp(-e * e / (4.0 * alpha)); });
  HeatProjector<Scalar> out;
  out.p = Observable<Scalar>(spec.layout, spectral_function<Scalar>(spec.eigvecs, w));
  out.defect = spec.dim() > 1 ? w.tail(spec.dim() - 1).maxCoeff() : 0.0;
  Matrix<Scalar> diff = out.p.matrix() - spec.ground_projector().matrix();
  diff = (diff + diff.adjoint()).eval() / 2.0;
  out.measured = op_norm<Scalar>(diff, true);
  return out;
}

template <typename Scalar>
WindowProjection<Scalar> window_projection(const Observable<Scalar>& m, double a) {
  if (!m.hermitian()) throw Error(ErrorCode::NotHermitian, "window projection of a non-self-adjoint operator");
  if (a < 0) throw Error(ErrorCode::BadConstants, "window half-width must be nonnegative");
  const auto eig = hermitian_eig<Scalar>(m.matrix());
  RealVector keep = RealVector::Zero(eig.values.size());
  WindowProjection<Scalar> out;
  for (Index k = 0; k < keep.size(); ++k) {
    const double lam = std::abs(eig.values(k));
    if (std::abs(lam - a) <= 1e-12) out.boundary_warning = true;
    if (lam <= a + 1e-12) {
      keep(k) = 1.0;
      ++out.rank;
    }
  }
  Matrix<Scalar> p = spectral_function<Scalar>(eig.vectors, keep);
  p = (p + p.adjoint()).eval() / 2.0;
  out.p = Observable<Scalar>(m.layout(), std::move(p));
  return out;
}

GaussHermite gauss_hermite(int n) {
  if (n < 2) throw Error(ErrorCode::QuadratureUnstable, "need at least two nodes");
  RealMatrix jac = RealMatrix::Zero(n, n);
  for (int k = 1; k < n; ++k) jac(k, k - 1) = jac(k - 1, k) = std::sqrt(k / 2.0);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(jac);
  GaussHermite out;
  out.nodes = es.eigenvalues();
  out.weights = std::sqrt(std::numbers::pi) * es.eigenvectors().row(0).transpose().array().square();
  for (int k = 0; k < n / 2; ++k) {
    const int m = n - 1 - k;
    const double x = (out.nodes(m) - out.nodes(k)) / 2.0;
    const double w = (out.weights(m) + out.weights(k)) / 2.0;
    out.nodes(k) = -x;
    out.nodes(m) = x;
    out.weights(k) = out.weights(m) = w;
  }
  if (n % 2) out.nodes(n / 2) = 0.0;
  for (int k = 0; k < n; ++k)
    if (!std::isfinite(out.weights(k)) || out.weights(k) < std::numeric_limits<double>::min())
      throw Error(ErrorCode::QuadratureUnstable, "Gauss-Hermite weight underflow");
  if (std::abs(out.weights.sum() - std::sqrt(std::numbers::pi)) > 1e-12)
    throw Error(ErrorCode::QuadratureUnstable, "Gauss-Hermite weights do not sum to sqrt(pi)");
  return out;
}

double gaussian_density(double t, double alpha) {
  return std::sqrt(alpha / std::numbers::pi) * std::exp(-alpha * t * t);
}

GaussHermite gaussian_time_rule(int n, double alpha) {
  if (!(alpha > 0)) throw Error(ErrorCode::QuadratureUnstable, "filter strength must be positive");
  GaussHermite rule = gauss_hermite(n);
  rule.nodes /= std::sqrt(alpha);
  rule.weights /= std::sqrt(std::numbers::pi);
  return rule;
}

template <typename Scalar>
Observable<cplx> heat_projector_quadrature(const SpectralData<Scalar>& spec, double alpha, int nodes) {
  const GaussHermite rule = gaussian_time_rule(nodes, alpha);
  const Index n = spec.dim();
  Matrix<cplx> c = Matrix<cplx>::Zero(n, n);
  for (Index m = 0; m < n; ++m) {
    cplx acc = 0;
    for (int k = 0; k < nodes; ++k) acc += rule.weights(k) * std::polar(1.0, rule.nodes(k) * spec.energies(m));
    c(m, m) = acc;
  }
  return Observable<cplx>(spec.layout, conjugate_by<Scalar>(spec.eigvecs, c));
}

#define HLAB_INSTANTIATE(S)                                                                                \
  template struct SpectralData<S>;                                                                         \
  template SpectralData<S> diagonalize<S>(const Observable<S>&, double);                                   \
  template SpectralData<S> diagonalize_ungapped<S>(const Observable<S>&);                                  \
  template std::pair<double, double> spectral_residuals<S>(const Observable<S>&, const SpectralData<S>&);  \
  template double expectation<S>(const Observable<S>&, const SpectralData<S>&);                            \
  template Observable<cplx> evolve<S>(const Observable<S>&, double, const SpectralData<S>&);               \
  template Observable<S> gaussian_filter<S>(const Observable<S>&, double, const SpectralData<S>&);         \
  template HeatProjector<S> heat_projector<S>(const SpectralData<S>&, double);                             \
  template WindowProjection<S> window_projection<S>(const Observable<S>&, double);                         \
  template Observable<cplx> heat_projector_quadrature<S>(const SpectralData<S>&, double, int);

HLAB_INSTANTIATE(double)
HLAB_INSTANTIATE(cplx)

}  // namespace hlab
