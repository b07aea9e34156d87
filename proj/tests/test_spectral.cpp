#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "hlab/model.hpp"
#include "hlab/spectral.hpp"
#include "oracles.hpp"

using namespace hlab;

namespace {

const TensorLayout kQutrit(Region{0}, {3});

Observable<double> diag3(double a, double b, double c) {
  Matrix<double> m = Matrix<double>::Zero(3, 3);
  m.diagonal() << a, b, c;
  return Observable<double>(kQutrit, m);
}

SpectralData<double> tfim_spec(int L, double g) {
  auto lat = std::make_shared<const Lattice>(Lattice::chain(0, L - 1));
  return diagonalize(local_hamiltonian(preset("tfim", {{"g", g}}, lat, lat->all()), lat->all()));
}

/// Composite Simpson rule on [a, b].
template <typename F>
double simpson(F f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

}  // namespace

TEST(Spectral, DiagonalExample) {
  const auto spec = diagonalize(diag3(0, 1, 3));
  EXPECT_NEAR(spec.energies(0), 0, 1e-15);
  EXPECT_NEAR(spec.energies(1), 1, 1e-15);
  EXPECT_NEAR(spec.energies(2), 3, 1e-15);
  EXPECT_NEAR(spec.gap, 1, 1e-15);
}

TEST(Spectral, ShiftedOnsiteEnergies) {
  auto lat = std::make_shared<const Lattice>(Lattice::chain(0, 1));
  const auto spec = diagonalize(local_hamiltonian(preset("onsite", {}, lat, lat->all()), lat->all()));
  EXPECT_NEAR(spec.e0, -2, 1e-12);
  const RealVector expect = (RealVector(4) << 0, 2, 2, 4).finished();
  EXPECT_LT((spec.energies - expect).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_NEAR(spec.gap, 2, 1e-12);
}

TEST(Spectral, EigenpairsMatchIndependentSolver) {
  const auto spec = tfim_spec(8, 1.5);
  const RealVector ev = oracle::eigenvalues<double>(oracle::tfim_matrix(8, 1.5));
  EXPECT_LT((spec.energies.array() + spec.e0 - ev.array()).abs().maxCoeff(), 1e-10);
  auto lat = std::make_shared<const Lattice>(Lattice::chain(0, 7));
  const auto [res, orth] = spectral_residuals(local_hamiltonian(preset("tfim", {{"g", 1.5}}, lat, lat->all()),
                                                                lat->all()), spec);
  EXPECT_LT(res, 1e-10);
  EXPECT_LT(orth, 1e-12);
  // phase convention: the first component of largest magnitude (ties within 1e-12) is positive
  for (Index k = 0; k < 5; ++k) {
    const double top = spec.eigvecs.col(k).cwiseAbs().maxCoeff();
    Index i = 0;
    while (std::abs(spec.eigvecs(i, k)) < top - 1e-12) ++i;
    EXPECT_GT(spec.eigvecs(i, k), 0.0);
  }
}

TEST(Spectral, Errors) {
  EXPECT_THROW(diagonalize(diag3(0, 0, 1)), Error);
  Matrix<double> m(3, 3);
  m << 0, 1, 0, 0, 0, 0, 0, 0, 0;
  EXPECT_THROW(diagonalize(Observable<double>(kQutrit, m)), Error);
}

TEST(Spectral, EvolveIdentities) {
  const auto rspec = tfim_spec(6, 1.5);
  const Matrix<cplx> h = oracle::tfim_matrix(6, 1.5).cast<cplx>();
  const auto spec = diagonalize(Observable<cplx>(rspec.layout, h));
  Rng rng(7);
  const Observable<cplx> a(spec.layout, random_hermitian<cplx>(64, rng));
  EXPECT_LT((evolve(a, 0.0, spec).matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-12);

  const Observable<cplx> hobs(spec.layout, h);
  EXPECT_LT((evolve(hobs, 1.7, spec).matrix() - h).cwiseAbs().maxCoeff(), 1e-10);

  const auto ab = evolve(evolve(a, 0.4, spec), 0.9, spec);
  EXPECT_LT((ab.matrix() - evolve(a, 1.3, spec).matrix()).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_NEAR(evolve(a, 2.0, spec).norm(), a.norm(), 1e-10);

  // the real-scalar path agrees with the complex one
  const Observable<double> z(rspec.layout, oracle::embed<double>(oracle::pauli_z(), std::vector<int>(6, 2), {2}));
  EXPECT_LT((evolve(z, 0.8, rspec).matrix() - evolve(to_complex(z), 0.8, spec).matrix()).cwiseAbs().maxCoeff(),
            1e-10);
}

TEST(Spectral, GaussianFilterExamples) {
  const auto spec = diagonalize(diag3(0, 1, 3));
  const Observable<double> commuting = diag3(5, -1, 2);
  EXPECT_LT((gaussian_filter(commuting, 0.7, spec).matrix() - commuting.matrix()).cwiseAbs().maxCoeff(), 1e-15);

  Matrix<double> r = Matrix<double>::Zero(3, 3);
  r(0, 1) = 1;
  const auto f = gaussian_filter(Observable<double>(kQutrit, r), 0.5, spec);
  EXPECT_NEAR(f.matrix()(0, 1), std::exp(-1.0 / 2.0), 1e-15);

  Rng rng(3);
  const auto tspec = tfim_spec(5, 2.0);
  const Observable<double> a(tspec.layout, random_hermitian<double>(32, rng));
  EXPECT_LT((gaussian_filter(a, 1e8, tspec).matrix() - a.matrix()).cwiseAbs().maxCoeff(), 1e-6);
  for (double alpha : {0.1, 1.0, 10.0}) {
    const auto fa = gaussian_filter(a, alpha, tspec);
    EXPECT_TRUE(fa.hermitian());
    EXPECT_LE(fa.norm(), a.norm() + 1e-10);
  }
  EXPECT_THROW(gaussian_filter(a, 0.0, tspec), Error);
}

TEST(Spectral, HeatProjector) {
  const auto spec = diagonalize(diag3(0, 1, 3));
  const auto hp = heat_projector(spec, 1.0);
  EXPECT_NEAR(hp.defect, std::exp(-0.25), 1e-15);
  EXPECT_NEAR(hp.measured, 0.778801, 1e-6);
  EXPECT_LT(heat_projector(spec, 1e-3).measured, 1e-100);

  const Observable<double> one(TensorLayout(Region{0}, {1}), Matrix<double>::Constant(1, 1, 4.0));
  const auto s1 = diagonalize_ungapped(one);
  const auto p1 = heat_projector(s1, 1.0);
  EXPECT_EQ(p1.measured, 0.0);
  EXPECT_EQ(p1.p.matrix()(0, 0), 1.0);
}

TEST(Spectral, WindowProjection) {
  Matrix<double> m = Matrix<double>::Zero(3, 3);
  m.diagonal() << 0.1, -0.05, 2;
  const auto w = window_projection(Observable<double>(kQutrit, m), 0.5);
  Matrix<double> expect = Matrix<double>::Zero(3, 3);
  expect(0, 0) = expect(1, 1) = 1;
  EXPECT_LT((w.p.matrix() - expect).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(w.rank, 2);
  EXPECT_TRUE(window_projection(Observable<double>(kQutrit, m), 2.5).p.matrix().isIdentity(1e-14));
  EXPECT_TRUE(window_projection(Observable<double>(kQutrit, m), 2.0).boundary_warning);

  Rng rng(19);
  const TensorLayout lay = TensorLayout::uniform(Region::range(0, 3), 2);
  for (int trial = 0; trial < 20; ++trial) {
    const Observable<cplx> h(lay, random_hermitian<cplx>(16, rng));
    const double a = 0.3 + 0.1 * trial;
    const auto p = window_projection(h, a).p.matrix();
    EXPECT_LT((p * p - p).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((p - p.adjoint()).cwiseAbs().maxCoeff(), 1e-10);
    for (int s = 0; s < 20; ++s) {
      const Vector<cplx> phi = random_unit_vector<cplx>(16, rng);
      const Vector<cplx> off = p * phi - phi;
      EXPECT_GE((h.matrix() * phi).squaredNorm() + 1e-12, a * a * off.squaredNorm());
    }
  }
}

TEST(Spectral, FilteredGroundVectorBound) {
  // ||(A)_alpha Omega|| <= e^{-gamma^2/4 alpha} / gamma * ||i[H, A] Omega|| for <Omega, A Omega> = 0
  const auto spec = tfim_spec(6, 2.0);
  const Matrix<double> h = spec.eigvecs * spec.energies.asDiagonal() * spec.eigvecs.transpose();
  const Vector<double> omega = spec.ground_vector();
  Rng rng(41);
  const TensorLayout local = TensorLayout::uniform(Region{2, 3}, 2);
  for (int trial = 0; trial < 50; ++trial) {
    Observable<double> a = embed(Observable<double>(local, random_hermitian<double>(4, rng)), spec.layout);
    const double mean = omega.dot(a.matrix() * omega);
    a = Observable<double>(spec.layout, a.matrix() - mean * Matrix<double>::Identity(64, 64));
    for (double alpha : {0.2, 1.0, 5.0}) {
      const double lhs = (gaussian_filter(a, alpha, spec).matrix() * omega).norm();
      const double delta = ((h * a.matrix() - a.matrix() * h) * omega).norm();
      EXPECT_LE(lhs, std::exp(-spec.gap * spec.gap / (4 * alpha)) / spec.gap * delta + 1e-12);
    }
  }
}

TEST(Spectral, GaussianTailIdentity) {
  for (double alpha : {0.1, 1.0, 10.0})
    for (double c : {0.0, 0.5, 2.0}) {
      const double upper = c + 40.0 / std::sqrt(alpha);
      const double num = simpson([&](double t) { return t * gaussian_density(t, alpha); }, c, upper, 20000);
      EXPECT_NEAR(num, gaussian_density(c, alpha) / (2 * alpha), 1e-10);
    }
}

TEST(Spectral, GaussHermiteRule) {
  const GaussHermite gh = gauss_hermite(64);
  EXPECT_NEAR(gh.weights.sum(), std::sqrt(M_PI), 1e-12);
  // x^2 and x^4 moments
  EXPECT_NEAR((gh.weights.array() * gh.nodes.array().square()).sum(), std::sqrt(M_PI) / 2, 1e-12);
  EXPECT_NEAR((gh.weights.array() * gh.nodes.array().pow(4)).sum(), 3 * std::sqrt(M_PI) / 4, 1e-11);
  const GaussHermite tr = gaussian_time_rule(64, 0.5);
  EXPECT_NEAR(tr.weights.sum(), 1.0, 1e-13);
  EXPECT_THROW(gauss_hermite(1), Error);
}

TEST(Spectral, QuadratureMatchesHeatProjector) {
  Rng rng(43);
  for (int trial = 0; trial < 4; ++trial) {
    RealVector e = RealVector::Random(16).cwiseAbs() * 10.0;
    e(0) = 0.0;
    std::sort(e.data(), e.data() + e.size());
    e(1) = std::max(e(1), 0.05);
    const Matrix<cplx> u = haar_unitary(16, rng);
    const Matrix<cplx> h = u * e.cast<cplx>().asDiagonal() * u.adjoint();
    const auto spec = diagonalize(Observable<cplx>(TensorLayout::uniform(Region::range(0, 3), 2), h));
    for (double alpha : {0.5, 1.0, 10.0}) {
      const auto q = heat_projector_quadrature(spec, alpha, 64);
      const auto exact = heat_projector(spec, alpha);
      EXPECT_LT((q.matrix() - exact.p.matrix()).cwiseAbs().maxCoeff(), 1e-8);
    }
  }
}

TEST(Spectral, QuadratureResolutionLimit) {
  // 64 nodes resolve e^{itE} only while E / sqrt(alpha) stays below about 15; at alpha = 0.1 and
  // E near 7 the rule misses the Gaussian entirely, and 256 nodes recover it
  Matrix<double> m = Matrix<double>::Zero(3, 3);
  m.diagonal() << 0, 7.17, 10;
  const auto spec = diagonalize(Observable<double>(kQutrit, m));
  const auto exact = heat_projector(spec, 0.1).p.matrix();
  const double err64 = (heat_projector_quadrature(spec, 0.1, 64).matrix() - exact).cwiseAbs().maxCoeff();
  const double err256 = (heat_projector_quadrature(spec, 0.1, 256).matrix() - exact).cwiseAbs().maxCoeff();
  EXPECT_GT(err64, 0.5);
  EXPECT_LT(err256, 1e-8);
}
