#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "hlab/entropy.hpp"
#include "hlab/hastings.hpp"
#include "oracles.hpp"

using namespace hlab;

namespace {

TensorLayout qubits(const Region& r) { return TensorLayout::uniform(r, 2); }

const double kLog2 = std::log(2.0);

/// Bell pairs on (0,1), (2,3), ...
StateVector<double> dimers(int pairs) {
  Vector<double> bell(4);
  bell << 1, 0, 0, 1;
  bell /= std::sqrt(2.0);
  Vector<double> psi = Vector<double>::Ones(1);
  for (int k = 0; k < pairs; ++k) {
    Vector<double> next(psi.size() * 4);
    for (Index i = 0; i < psi.size(); ++i) next.segment(i * 4, 4) = psi(i) * bell;
    psi = next;
  }
  return StateVector<double>(qubits(Region::range(0, 2 * pairs - 1)), psi);
}

StateVector<cplx> random_state(int n, Rng& rng) {
  return StateVector<cplx>(qubits(Region::range(0, n - 1)), random_unit_vector<cplx>(Index(1) << n, rng));
}

std::vector<int> positions(const Region& r) { return std::vector<int>(r.begin(), r.end()); }

double entropy_oracle(const Matrix<cplx>& rho) {
  double s = 0;
  const RealVector ev = oracle::eigenvalues<cplx>(rho);
  for (Index i = 0; i < ev.size(); ++i) s -= oracle::xlogx(std::max(ev(i), 0.0));
  return s;
}

SchmidtSpectrum spectrum_of(std::vector<double> v) {
  std::sort(v.rbegin(), v.rend());
  SchmidtSpectrum s;
  s.lambdas = Eigen::Map<RealVector>(v.data(), Index(v.size()));
  return s;
}

}  // namespace

TEST(Entropy, ProductAndBell) {
  const auto bell = dimers(1);
  const SchmidtSpectrum s = schmidt(bell, Region{0});
  ASSERT_EQ(s.size(), 2);
  EXPECT_NEAR(s.lambdas(0), 0.5, 1e-15);
  EXPECT_NEAR(entropy(s), kLog2, 1e-15);
  EXPECT_NEAR(fidelity(bell, Region{0}).p_x, 0.25, 1e-15);
  EXPECT_NEAR(fidelity(bell, Region{0}).cross_check, 0.25, 1e-14);

  const StateVector<double> prod(qubits(Region{0, 1}), Vector<double>::Unit(4, 2));
  const SchmidtSpectrum p = schmidt(prod, Region{0});
  EXPECT_EQ(p.rank(), 1);
  EXPECT_EQ(entropy(p), 0.0);
  EXPECT_NEAR(fidelity(prod, Region{1}).p_x, 1.0, 1e-15);

  EXPECT_THROW(schmidt(bell, Region{}), Error);
  EXPECT_THROW(schmidt(bell, Region{0, 1}), Error);
  EXPECT_EQ(entropy_of(bell, Region{}), 0.0);
  EXPECT_NEAR(entropy_of(bell, Region{0, 1}), 0.0, 1e-14);
}

TEST(Entropy, UniformSpectrumIsLogK) {
  for (int k : {1, 2, 3, 7, 64}) EXPECT_NEAR(entropy(spectrum_of(std::vector<double>(k, 1.0 / k))), std::log(k), 1e-13);
}

TEST(Entropy, SchmidtMatchesPartialTrace) {
  Rng rng(61);
  const auto omega = random_state(8, rng);
  const std::vector<int> dims(8, 2);
  for (const Region& x : {Region{0, 3, 5}, Region{1, 2, 7}, Region{4}}) {
    const SchmidtSpectrum s = schmidt(omega, x);
    EXPECT_NEAR(s.lambdas.sum(), 1.0, 1e-12);
    const Matrix<cplx> rho = oracle::partial_trace<cplx>(omega.amplitudes(), dims, positions(x));
    EXPECT_LT((reduced_density(omega, x) - rho).cwiseAbs().maxCoeff(), 1e-13);
    RealVector ev = oracle::eigenvalues<cplx>(rho).reverse();
    const Index k = std::min(ev.size(), s.size());
    EXPECT_LT((s.lambdas.head(k) - ev.head(k)).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_NEAR(entropy(s), entropy_oracle(rho), 1e-11);
    for (Index i = 1; i < s.size(); ++i) EXPECT_GE(s.lambdas(i - 1), s.lambdas(i));
  }
}

TEST(Entropy, FidelityRoutesAgree) {
  Rng rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 9;
    const auto omega = random_state(n, rng);
    const Region x = Region::range(0, int(rng() % (n - 1)));
    const Fidelity f = fidelity(omega, x);
    EXPECT_NEAR(f.p_x, f.cross_check, 1e-10);
    const SchmidtSpectrum s = schmidt(omega, x);
    EXPECT_GT(f.p_x, 0.0);
    EXPECT_LE(f.p_x, 1.0 + 1e-12);
    EXPECT_GE(f.p_x + 1e-12, std::pow(s.lambdas.squaredNorm(), 2));
  }
}

TEST(Entropy, SigmaWithExactProjector) {
  Rng rng(71);
  const auto omega = random_state(6, rng);
  const Vector<cplx>& w = omega.amplitudes();
  const Observable<cplx> p0(omega.layout(), w * w.adjoint());
  const SigmaVerdict v = sigma_check(omega, Region{0, 1, 2}, p0, 8.0, 0.0);
  EXPECT_NEAR(v.overlap, 1.0, 1e-12);
  EXPECT_NEAR(v.head_sum, 1.0, 1e-12);
  EXPECT_TRUE(v.passed());
  const Observable<cplx> zero(omega.layout(), Matrix<cplx>::Zero(64, 64));
  EXPECT_THROW(sigma_check(omega, Region{0, 1, 2}, zero, 8.0, 0.0), Error);
}

TEST(Entropy, GibbsInequalityFuzz) {
  Rng rng(73);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const int k = 1 + int(rng() % 12);
    std::vector<double> l(k);
    RealVector q(k);
    for (int i = 0; i < k; ++i) {
      l[i] = u(rng) < 0.2 ? 0.0 : u(rng);
      q(i) = 1e-6 + u(rng);
    }
    double sum = 0;
    for (double v : l) sum += v;
    if (sum == 0) l[0] = sum = 1;
    for (double& v : l) v /= sum;
    q /= q.sum();
    const QBound b = q_bound(spectrum_of(l), q);
    ASSERT_TRUE(b.gibbs.passed()) << trial;
  }
}

TEST(Entropy, QBoundEdgeCases) {
  const SchmidtSpectrum l = spectrum_of({0.5, 0.3, 0.2});
  EXPECT_NEAR(q_bound(l, l.lambdas).value, entropy(l), 1e-15);
  EXPECT_NEAR(q_bound(l, RealVector::Constant(5, 0.2)).value, std::log(5.0), 1e-14);
  RealVector holey(3);
  holey << 0.5, 0.5, 0.0;
  EXPECT_THROW(q_bound(l, holey), Error);
}

TEST(Entropy, QDistributionIsProbability) {
  QParams qp;
  qp.constants = EntropyConstants{1.0, 1, 2.0, 2.0};
  qp.c2 = 0.5;
  qp.boundary_size = 2;
  qp.p_x = 0.3;
  for (Index n : {Index(4), Index(64), Index(4096)}) {
    const QDistribution q = q_distribution(qp, n);
    EXPECT_NEAR(q.weights.sum(), 1.0, 1e-12);
    EXPECT_GT(q.weights.minCoeff(), 0.0);
    EXPECT_EQ(q.edges.back(), n);
    for (size_t i = 1; i < q.edges.size(); ++i) EXPECT_GE(q.edges[i], q.edges[i - 1]);
  }
  qp.constants.c1 = 1.0;
  EXPECT_THROW(q_distribution(qp, 8), Error);
}

TEST(Entropy, BoundHandAssembly) {
  // kappa 2, nu 1, d 2, C1 2, C2 1/2, |b| 4, p 0.1, n0 1; geometric series in closed form
  const double k = 2, l2 = kLog2, c1 = 2, c2 = 0.5, b = 4, p = 0.1;
  const double r = std::exp(-c2);
  const double s0 = 1 / (1 - r), s1 = r / ((1 - r) * (1 - r));
  const double c3 = 6 * k * l2 / 2;
  const double c3p = 3 * k * l2 + c3 * s0;
  const double c4p = 6 * k * l2 / 2 * s1;
  const double c5p = 1 / std::numbers::e + c2 * s1 + (c2 - std::log(1 - r)) * s0;
  const double c4 = c3p / c2;
  const double c3f = c4 + c4 * (c2 + std::log(2 * c1)) + c4p + c5p;
  const double value = c3f * b * std::log(b) + c4 * b * std::log(1 / p);

  const EntropyBound eb = entropy_bound(b, p, c2, EntropyConstants{k, 1, 2.0, c1});
  EXPECT_NEAR(eb.c3_mid, c3, 1e-12);
  EXPECT_NEAR(eb.c3p, c3p, 1e-12);
  EXPECT_NEAR(eb.c4p, c4p, 1e-10);
  EXPECT_NEAR(eb.c5p, c5p, 1e-12);
  EXPECT_NEAR(eb.c4, c4, 1e-12);
  EXPECT_NEAR(eb.c3_final, c3f, 1e-10);
  EXPECT_NEAR(eb.value, value, 1e-9);
  // frozen
  EXPECT_NEAR(eb.value, 866.2196677209613, 1e-8);
  EXPECT_LE(eb.intermediate, eb.value);
  EXPECT_LE(eb.with_m0, eb.intermediate + 1e-12);

  const EntropyBound one = entropy_bound(b, 1.0, c2, EntropyConstants{k, 1, 2.0, c1});
  EXPECT_NEAR(one.value, c3f * b * std::log(b), 1e-9);
  EXPECT_THROW(entropy_bound(b, 0.0, c2, EntropyConstants{k, 1, 2.0, c1}), Error);
  EXPECT_THROW(entropy_bound(b, p, c2, EntropyConstants{k, 1, 2.0, 1.0}), Error);
}

TEST(Entropy, DivisionOnDimers) {
  // X = {1..4} cuts the pairs (0,1) and (4,5); O_B projects both onto their Bell state
  const auto omega = dimers(4);
  const Region x = Region::range(1, 4), y{0, 1, 4, 5};
  Vector<double> bell(4);
  bell << 1, 0, 0, 1;
  bell /= std::sqrt(2.0);
  const Matrix<double> pb = bell * bell.transpose();
  const Observable<double> o_b =
      tensor(Observable<double>(qubits(Region{0, 1}), pb), Observable<double>(qubits(Region{4, 5}), pb));
  const DivisionVerdict v = division_check(omega, x, y, o_b, 0.0);
  EXPECT_EQ(v.status, DivisionStatus::Passed) << v.reason;
  EXPECT_NEAR(v.p_x, 1.0 / 16, 1e-14);
  EXPECT_NEAR(v.s_y, 0.0, 1e-12);
  EXPECT_NEAR(v.mutual_information, 4 * kLog2, 1e-12);
  EXPECT_NEAR(v.omega_ob, 1.0, 1e-14);
  EXPECT_NEAR(v.product_ob, 1.0 / 16, 1e-14);
  EXPECT_NEAR(v.pinched, 4 * kLog2, 1e-12);
  EXPECT_NEAR(v.rhs, 3 * kLog2, 1e-12);
}

TEST(Entropy, DivisionPreconditionOnTfim) {
  auto lat = std::make_shared<const Lattice>(Lattice::chain(0, 7));
  const auto phi = preset("tfim", {{"g", 2.0}}, lat, lat->all());
  const FFunction f = FFunction::power_law(1);
  const auto spec = diagonalize(local_hamiltonian(phi, lat->all()));
  FactorizationConfig cfg;
  cfg.x = Region::range(2, 5);
  cfg.ell = 1;
  const auto res = positivize(factorize(cfg, phi, spec, constants(phi, f), lr_constants(phi, f, 1.0)));
  const Region y = unite(r_boundary(*lat, cfg.x, 4.0), res.o_b_pos.support());
  const DivisionVerdict v = division_check(spec.ground(), cfg.x, y, res.o_b_pos, res.defect);
  EXPECT_EQ(v.status, DivisionStatus::PreconditionNotMet);
  EXPECT_FALSE(v.reason.empty());
  const Check* sub = v.checks.find("subadditivity");
  ASSERT_NE(sub, nullptr);
  EXPECT_TRUE(sub->passed());

  // a product ground state never meets p_X <= 1/4
  const StateVector<double> prod(qubits(Region::range(0, 3)), Vector<double>::Unit(16, 0));
  const Observable<double> id = Observable<double>::identity(qubits(Region{1, 2}));
  EXPECT_EQ(division_check(prod, Region{0, 1}, Region{1, 2}, id, 0.0).status, DivisionStatus::PreconditionNotMet);
}

TEST(Entropy, SubadditivityOnRandomStates) {
  Rng rng(79);
  for (int trial = 0; trial < 30; ++trial) {
    const auto omega = random_state(6, rng);
    const Region x = oracle::random_region(Lattice::chain(0, 5), rng);
    const Region y = oracle::random_region(Lattice::chain(0, 5), rng);
    const Observable<cplx> id = Observable<cplx>::identity(qubits(y));
    const DivisionVerdict v = division_check(omega, x, y, id, 0.0);
    EXPECT_LE(v.s_y, v.s_y_in + v.s_y_out + 1e-10);
    for (const Check& c : v.checks.items())
      if (c.name == "subadditivity" || c.name == "mutual_information_identity") EXPECT_TRUE(c.passed()) << c.name;
  }
}

TEST(Entropy, RestrictionBound) {
  Rng rng(83);
  for (int trial = 0; trial < 40; ++trial) {
    const auto omega = random_state(7, rng);
    const Region y = oracle::random_region(Lattice::chain(0, 6), rng);
    std::vector<int> xs;
    for (int s : y)
      if (rng() % 2) xs.push_back(s);
    const Region x(xs);
    const double sy = entropy_of(omega, y), sx = entropy_of(omega, x);
    // removing k qubits changes the entropy by at most k log 2
    const double k = double(y.size() - x.size());
    EXPECT_LE(sy, sx + k * kLog2 + 1e-10);
    EXPECT_LE(sx, sy + k * kLog2 + 1e-10);
  }
  // a pure pair has zero entropy while each half carries log 2
  const auto bell = dimers(1);
  EXPECT_GT(entropy_of(bell, Region{0}), entropy_of(bell, Region{0, 1}) + 0.5);
}

TEST(Entropy, RelativeEntropy) {
  Rng rng(89);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix<cplx> ga = random_gaussian<cplx>(4, 4, rng), gb = random_gaussian<cplx>(4, 4, rng);
    Matrix<cplx> a = ga * ga.adjoint(), b = gb * gb.adjoint();
    a /= a.trace();
    b /= b.trace();
    EXPECT_GE(relative_entropy<cplx>(a, b), 0.0);
    EXPECT_NEAR(relative_entropy<cplx>(a, a), 0.0, 1e-10);
  }
  Matrix<double> pure = Matrix<double>::Zero(2, 2), other = Matrix<double>::Zero(2, 2);
  pure(0, 0) = 1;
  other(1, 1) = 1;
  EXPECT_TRUE(std::isinf(relative_entropy<double>(pure, other)));
  EXPECT_NEAR(relative_entropy<double>(pure, Matrix<double>::Identity(2, 2) / 2), kLog2, 1e-12);
  EXPECT_NEAR(binary_relative_entropy(1.0, 1.0 / 16), std::log(16.0), 1e-14);
  EXPECT_EQ(binary_relative_entropy(0.3, 0.3), 0.0);
}

TEST(Entropy, WindowSearchMatchesExhaustive) {
  const int n = 10;
  auto lat = std::make_shared<const Lattice>(Lattice::chain(0, n - 1));
  const auto phi = preset("tfim", {{"g", 2.0}}, lat, lat->all());
  const auto omega = diagonalize(local_hamiltonian(phi, lat->all())).ground();
  const std::vector<int> dims(n, 2);
  double best = -1;
  for (int a0 = 2; a0 <= 4; ++a0)
    for (int b0 = 5; b0 <= 7; ++b0) {
      std::vector<int> keep;
      for (int s = a0; s <= b0; ++s) keep.push_back(s);
      const RealVector ev = oracle::eigenvalues<double>(oracle::partial_trace<double>(omega.amplitudes(), dims, keep));
      double p = 0;
      for (Index i = 0; i < ev.size(); ++i) p += std::pow(std::max(ev(i), 0.0), 3);
      best = std::max(best, p);
    }
  const WindowSearch ws = window_search(omega, *lat, 4, 5, 2, 0.5);
  EXPECT_EQ(ws.candidates.size(), 9u);
  EXPECT_NEAR(ws.p, best, 1e-10);
  EXPECT_EQ(ws.met, best >= 0.5);

  const WindowSearch zero = window_search(omega, *lat, 4, 5, 0, 0.0);
  EXPECT_EQ(zero.a0, 4);
  EXPECT_EQ(zero.b0, 5);
  EXPECT_THROW(window_search(omega, *lat, 1, 5, 2, 0.0), Error);

  const StateVector<double> prod(qubits(Region::range(0, 5)), Vector<double>::Unit(64, 0));
  const WindowSearch p = window_search(prod, Lattice::chain(0, 5), 2, 3, 1, 1.0);
  EXPECT_TRUE(p.met);
  EXPECT_NEAR(p.p, 1.0, 1e-14);
}

TEST(Entropy, AreaSweepExamples) {
  const auto omega = dimers(4);
  const Lattice lat = Lattice::chain(0, 7);
  const AreaSweep sw = area_sweep(omega, lat, {1, 2, 3, 4, 5, 6, 7});
  ASSERT_EQ(sw.reports.size(), 7u);
  for (size_t i = 0; i < sw.reports.size(); ++i)
    EXPECT_NEAR(sw.reports[i].s, sw.cuts[i] % 2 ? kLog2 : 0.0, 1e-12) << sw.cuts[i];

  auto olat = std::make_shared<const Lattice>(Lattice::chain(0, 5));
  const auto onsite = preset("onsite", {}, olat, olat->all());
  const AreaSweep flat = area_sweep(onsite, olat->all(), {1, 2, 3, 4, 5});
  for (const auto& r : flat.reports) {
    EXPECT_NEAR(r.s, 0.0, 1e-10);
    EXPECT_NEAR(r.p_x, 1.0, 1e-10);
  }
  const auto ising = preset("tfim", {{"g", 0.0}}, olat, olat->all());
  EXPECT_THROW(area_sweep(ising, olat->all(), {3}), Error);
  EXPECT_THROW(area_sweep(omega, lat, {0}), Error);
}
