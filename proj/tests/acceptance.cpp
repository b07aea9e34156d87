// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "hlab/experiments.hpp"
#include "oracles.hpp"

using namespace hlab;

namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

LatticePtr chain(int n) { return std::make_shared<const Lattice>(Lattice::chain(0, n - 1)); }

Interaction<double> tfim(const LatticePtr& lat, double g) { return preset("tfim", {{"g", g}}, lat, lat->all()); }

TensorLayout qubits(const Region& r) { return TensorLayout::uniform(r, 2); }

/// Pipeline data shared by criteria 5 to 9 and 12.
struct PipelineRun {
  ExperimentConfig cfg;
  Region x;
  FactorizeRun run;
  double seconds = 0.0;
};

std::vector<PipelineRun> pipeline_runs;

ExperimentConfig pipeline_config(int L) {
  ExperimentConfig c;
  c.model = "tfim";
  c.L = L;
  c.couplings = {{"g", 2.0}};
  c.x = SiteRange{L / 2 - 2, L / 2 + 2};
  c.ells = {1, 2};
  return c;
}

std::string tables_text(const Outcome& o) {
  std::string s;
  for (const auto& [name, table] : o.tables) s += name + "\n" + table.str();
  return s;
}

Verdict c1_convolution() {
  Verdict v;
  const auto t0 = Clock::now();
  auto check = [&](const Interaction<double>& phi, const std::string& tag) {
    const auto spec = diagonalize(local_hamiltonian(phi, phi.lattice().all()));
    for (double alpha : {0.2, 1.0, 5.0}) {
      const auto hp = heat_projector(spec, alpha);
      const double expect = std::exp(-spec.gap * spec.gap / (4 * alpha));
      v.require(std::abs(hp.measured - expect) <= 1e-10,
                tag + " alpha " + fmt(alpha) + ": " + fmt(hp.measured) + " vs " + fmt(expect));
    }
  };
  for (int L = 2; L <= 6; ++L) {
    auto lat = chain(L);
    check(preset("onsite", {}, lat, lat->all()), "onsite L" + std::to_string(L));
  }
  for (double g : {1.5, 2.0})
    for (int L = 6; L <= 10; ++L) check(tfim(chain(L), g), "tfim g" + fmt(g) + " L" + std::to_string(L));
  const double s = seconds_since(t0);
  v.require(s < 5, "runtime " + fmt(s) + " s");
  if (v.pass) v.detail = "36 cases, " + fmt(s) + " s";
  return v;
}

Verdict c2_lieb_robinson() {
  Verdict v;
  const auto t0 = Clock::now();
  auto lat = chain(8);
  const auto phi = tfim(lat, 1.5);
  const FFunction f = FFunction::power_law(1);
  const LRConstants k = lr_constants(phi, f, 1.0);
  const auto spec = diagonalize_ungapped(local_hamiltonian(phi, lat->all()));
  const Observable<double> a(qubits(Region{1}), oracle::pauli_z()), b(qubits(Region{6}), oracle::pauli_z());
  const Region y = minus(lat->all(), Region{6});
  double worst = 1e300;
  for (int s = 1; s <= 8; ++s) {
    const LRMeasurement m = lr_empirical(a, b, 0.25 * s, spec, lr_rhs(Region{1}, y, 0.25 * s, phi, f, k));
    worst = std::min({worst, m.thm_margin, m.cor_margin});
    v.require(m.thm_margin >= -1e-9 && m.cor_margin >= -1e-9, "t " + fmt(0.25 * s));
  }
  const double secs = seconds_since(t0);
  v.require(secs < 60, "runtime " + fmt(secs) + " s");
  if (v.pass) v.detail = "8/8, smallest margin " + fmt(worst);
  return v;
}

Verdict c3_truncation() {
  Verdict v;
  const auto t0 = Clock::now();
  auto lat = chain(12);
  const auto phi = tfim(lat, 2.0);
  const FFunction f = FFunction::power_law(1);
  const LRConstants k = lr_constants(phi, f, 1.0);
  const InteractionConstants ic = constants(phi, f);
  Matrix<double> zz = Matrix<double>::Zero(4, 4);
  zz.diagonal() << 1, -1, -1, 1;
  const Observable<double> a(qubits(Region{5, 6}), zz);
  const auto outer = diagonalize_ungapped(local_hamiltonian(phi, lat->all()));
  const auto inner = diagonalize_ungapped(local_hamiltonian(phi, Region::range(2, 9)));
  std::string detail;
  for (double t : {0.25, 0.5, 1.0}) {
    const TruncationCheck tc = truncation_check(a, inner, outer, t, phi, k, ic);
    v.require(tc.measured <= tc.rhs, "t " + fmt(t) + ": " + fmt(tc.measured) + " > " + fmt(tc.rhs));
    detail += (detail.empty() ? "" : ", ") + fmt(tc.measured) + " <= " + fmt(tc.rhs);
  }
  const double s = seconds_since(t0);
  v.require(s < 120, "runtime " + fmt(s) + " s");
  if (v.pass) v.detail = detail + ", " + fmt(s) + " s";
  return v;
}

Verdict c4_conditional_expectation() {
  Verdict v;
  const auto t0 = Clock::now();
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 8;
    const Region vol = Region::range(0, n - 1);
    std::vector<int> xs;
    for (int s = 0; s < n; ++s)
      if (rng() % 2) xs.push_back(s);
    if (xs.empty()) xs.push_back(int(rng() % n));
    const Region x(xs);
    const Index d = Index(1) << n, dx = Index(1) << x.size();
    const std::string tag = "instance " + std::to_string(trial);
    const Observable<cplx> a(qubits(vol), random_gaussian<cplx>(d, d, rng));
    const auto e = cond_expect(a, x);
    v.require((cond_expect(e, x).matrix() - e.matrix()).cwiseAbs().maxCoeff() <= 1e-10, tag + " idempotence");
    v.require(e.norm() <= a.norm() + 1e-10, tag + " contraction");
    const Matrix<cplx> g = random_gaussian<cplx>(d, d, rng);
    const Observable<cplx> p(qubits(vol), g * g.adjoint());
    v.require(oracle::eigenvalues<cplx>(cond_expect(p, x).matrix()).minCoeff() >= -1e-10, tag + " positivity");
    const auto b1 = embed(Observable<cplx>(qubits(x), random_gaussian<cplx>(dx, dx, rng)), qubits(vol));
    const auto b2 = embed(Observable<cplx>(qubits(x), random_gaussian<cplx>(dx, dx, rng)), qubits(vol));
    const Matrix<cplx> lhs = cond_expect(b1 * a * b2, x).matrix(), rhs = b1.matrix() * e.matrix() * b2.matrix();
    v.require((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, rhs.cwiseAbs().maxCoeff()), tag + " bimodule");
    if (n <= 6) {
      const double w = (twirl_weyl(a, x).matrix() - twirl(a, x).matrix()).cwiseAbs().maxCoeff();
      v.require(w <= 1e-12, tag + " Weyl average " + fmt(w));
    }
  }
  const double s = seconds_since(t0);
  v.require(s < 30, "runtime " + fmt(s) + " s");
  if (v.pass) v.detail = "100 instances, " + fmt(s) + " s";
  return v;
}

Verdict c5_factorization_chain() {
  Verdict v;
  const std::vector<std::string> required = {
      "filter_ground_bound_r", "filter_ground_bound_b", "filtered_r_ground", "filtered_l_ground",
      "window_r_chain",        "window_l_chain",        "p_tilde_vs_p",      "p0_window",
      "p_hat_vs_p_tilde",      "p_hat_chain_measured",  "o_r_o_l_commute",   "o_r_in_a_x",
      "o_l_in_commutant",      "positivization_quarter"};
  std::string detail;
  for (int L : {10, 12}) {
    PipelineRun pr;
    pr.cfg = pipeline_config(L);
    pr.x = pr.cfg.x->region();
    const auto t0 = Clock::now();
    pr.run = factorize_run(pr.cfg);
    pr.seconds = seconds_since(t0);
    for (const auto& res : pr.run.results) {
      const std::string tag = "L" + std::to_string(L) + " ell " + fmt(res.ell);
      for (const std::string& f : res.diagnostics.failures()) v.require(false, tag + ": " + f);
      for (const std::string& name : required) {
        const Check* c = res.diagnostics.find(name);
        v.require(c != nullptr && c->asserted, tag + ": missing " + name);
      }
      for (const std::string name : {"o_r_o_l_commute", "o_r_in_a_x", "o_l_in_commutant"}) {
        const Check* c = res.diagnostics.find(name);
        if (c) v.require(c->lhs <= 1e-10, tag + ": " + name + " " + fmt(c->lhs));
      }
      v.require(res.defect_pos <= 6 * std::pow(res.defect, 0.25) + 1e-8, tag + ": positivization");
    }
    if (L == 12) v.require(pr.seconds < 600, "L12 runtime " + fmt(pr.seconds) + " s");
    detail += (detail.empty() ? "" : ", ") + ("L" + std::to_string(L) + " " + fmt(pr.seconds) + " s");
    pipeline_runs.push_back(std::move(pr));
  }
  if (v.pass) v.detail = "4 runs, " + detail;
  return v;
}

Verdict c6_defect() {
  Verdict v;
  auto lat = chain(8);
  const auto phi = preset("onsite", {}, lat, lat->all());
  const FFunction f = FFunction::power_law(1);
  const auto spec = diagonalize(local_hamiltonian(phi, lat->all()));
  FactorizationConfig cfg;
  cfg.x = Region{3, 4};
  cfg.ell = 1;
  const auto res = factorize(cfg, phi, spec, constants(phi, f), lr_constants(phi, f, 1.0));
  // regression value from the reference run: exp(-gamma^2 / 4 alpha) with gamma 2, alpha 1
  const double frozen = 0.36787944117144489;
  v.require(res.defect <= frozen + 1e-9, "onsite defect " + fmt(res.defect));
  v.require(res.diagnostics.all_passed(), "onsite diagnostics");
  double d1 = -1, d2 = -1;
  for (const auto& pr : pipeline_runs)
    if (pr.cfg.L == 12)
      for (const auto& r : pr.run.results) (r.ell == 1 ? d1 : d2) = r.defect;
  v.require(d1 >= 0 && d2 >= 0, "L12 pipeline missing");
  v.require(d2 <= d1 + 1e-6, "L12 defect(2) " + fmt(d2) + " > defect(1) " + fmt(d1));
  if (v.pass) v.detail = "onsite " + fmt(res.defect) + ", L12 " + fmt(d1) + " -> " + fmt(d2);
  return v;
}

Verdict c7_fidelity() {
  Verdict v;
  const auto t0 = Clock::now();
  Rng rng(77);
  double worst = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 9;
    const StateVector<cplx> omega(qubits(Region::range(0, n - 1)), random_unit_vector<cplx>(Index(1) << n, rng));
    const Region x = oracle::random_region(Lattice::chain(0, n - 1), rng);
    const Fidelity fid = fidelity(omega, x);
    worst = std::max(worst, std::abs(fid.p_x - fid.cross_check));
  }
  for (const auto& pr : pipeline_runs) {
    const Fidelity fid = fidelity(pr.run.spectrum.ground(), pr.x);
    worst = std::max(worst, std::abs(fid.p_x - fid.cross_check));
  }
  v.require(worst <= 1e-10, "largest gap " + fmt(worst));
  const double s = seconds_since(t0);
  v.require(s < 30, "runtime " + fmt(s) + " s");
  if (v.pass) v.detail = "52 states, largest gap " + fmt(worst);
  return v;
}

struct PipelineEntropy {
  EntropyReport report;
  double boundary = 0.0;
  double kappa = 1.0;
};

PipelineEntropy pipeline_entropy(const PipelineRun& pr) {
  const Lattice lat = Lattice::chain(0, pr.cfg.L - 1);
  auto lp = std::make_shared<const Lattice>(lat);
  const auto phi = tfim(lp, 2.0);
  PipelineEntropy pe;
  pe.report = entropy_report(pr.run.spectrum.ground(), pr.x);
  pe.boundary = r_boundary(lat, pr.x, phi.range()).size();
  pe.kappa = std::max(growth_constants(phi, 1, {pr.x}).kappa_a3, 1.0);
  return pe;
}

Verdict c8_gibbs_sigma() {
  Verdict v;
  Rng rng(88);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 10000; ++trial) {
    const int k = 1 + int(rng() % 16);
    std::vector<double> l(k);
    RealVector q(k);
    double sum = 0;
    for (int i = 0; i < k; ++i) {
      l[i] = u(rng);
      q(i) = 1e-9 + u(rng);
      sum += l[i];
    }
    std::sort(l.rbegin(), l.rend());
    SchmidtSpectrum s;
    s.lambdas = Eigen::Map<RealVector>(l.data(), k) / sum;
    q /= q.sum();
    if (!q_bound(s, q).gibbs.passed()) v.require(false, "random q, trial " + std::to_string(trial));
  }
  int sigma_runs = 0;
  for (const auto& pr : pipeline_runs) {
    const PipelineEntropy pe = pipeline_entropy(pr);
    const Lattice lat = Lattice::chain(0, pr.cfg.L - 1);
    for (const auto& res : pr.run.results) {
      const std::string tag = "L" + std::to_string(pr.cfg.L) + " ell " + fmt(res.ell);
      const EntropyConstants k{pe.kappa, 1, 2.0, 2.0};
      const QDistribution q = q_distribution(QParams{k, 0.5, pe.boundary, pe.report.p_x, 1}, pe.report.schmidt.size());
      v.require(q_bound(pe.report.schmidt, q).gibbs.passed(), tag + ": constructed q");
      const Region bnd = r_boundary(lat, pr.x, 3 * res.ell + 1);
      const TensorLayout& vol = res.volume;
      LinearMap<double> prod = [&](const Vector<double>& w) {
        return apply(res.o_b, apply(res.o_l, apply(res.o_r, w, vol), vol), vol);
      };
      const SigmaVerdict sv = sigma_check(pr.run.spectrum.ground(), pr.x, prod, std::pow(2.0, bnd.size()), res.defect);
      for (const std::string& f : sv.checks.failures()) v.require(false, tag + ": " + f);
      ++sigma_runs;
    }
  }
  if (v.pass) v.detail = "10000 random q, " + std::to_string(sigma_runs) + " sigma checks";
  return v;
}

Verdict c9_entropy_bound() {
  Verdict v;
  int n = 0;
  double tightest = 1e300;
  for (const auto& pr : pipeline_runs) {
    const PipelineEntropy pe = pipeline_entropy(pr);
    for (const auto& res : pr.run.results)
      for (double c2 : {0.25, 0.5, 1.0}) {
        // smallest admissible C1 above 1, and a larger one
        const double c1_min = std::max(1.01, 1.01 * res.defect * std::exp(c2 * res.ell) / pe.boundary);
        for (double c1 : {c1_min, 10 * c1_min}) {
          v.require(c1 * pe.boundary * std::exp(-c2 * res.ell) >= res.defect, "inconsistent constants");
          const EntropyBound eb = entropy_bound(pe.boundary, pe.report.p_x, c2, EntropyConstants{pe.kappa, 1, 2.0, c1});
          v.require(pe.report.s <= eb.value, "L" + std::to_string(pr.cfg.L) + ": s " + fmt(pe.report.s) +
                                                  " > bound " + fmt(eb.value));
          tightest = std::min(tightest, eb.value / std::max(pe.report.s, 1e-300));
          ++n;
        }
      }
  }
  v.require(n > 0, "no pipeline instances");
  if (v.pass) v.detail = std::to_string(n) + " instances, smallest bound/s ratio " + fmt(tightest);
  return v;
}

Verdict c10_area_law() {
  Verdict v;
  const auto t0 = Clock::now();
  auto lat = chain(12);
  const std::vector<int> cuts{2, 3, 4, 5, 6};
  const AreaSweep sw = area_sweep(tfim(lat, 2.0), lat->all(), cuts);
  std::vector<double> inc;
  for (size_t i = 0; i + 1 < sw.reports.size(); ++i) inc.push_back(sw.reports[i + 1].s - sw.reports[i].s);
  for (size_t i = 0; i < inc.size(); ++i) {
    v.require(inc[i] > 0, "increment at m=" + std::to_string(cuts[i]) + " is " + fmt(inc[i]));
    if (i > 0) v.require(inc[i] <= inc[i - 1] + 1e-3, "increments not decreasing at m=" + std::to_string(cuts[i]));
  }
  const double half = sw.reports.back().s;
  const AreaSweep crit = area_sweep(tfim(lat, 1.0), lat->all(), {6});
  const double half_crit = crit.reports.back().s;
  v.require(half < half_crit, "half-chain g=2 " + fmt(half) + " vs g=1 " + fmt(half_crit));
  // regression values from the reference run
  v.require(std::abs(half - 0.088840994841581797) < 1e-8, "half-chain g=2 moved: " + fmt(half));
  v.require(std::abs(half_crit - 0.39651621108587148) < 1e-8, "half-chain g=1 moved: " + fmt(half_crit));
  const double s = seconds_since(t0);
  v.require(s < 300, "runtime " + fmt(s) + " s");
  if (v.pass) v.detail = "increments " + fmt(inc[0]) + " .. " + fmt(inc.back()) + ", s(6) " + fmt(half) + " < " + fmt(half_crit);
  return v;
}

Verdict c11_geometry() {
  Verdict v;
  const auto t0 = Clock::now();
  Rng rng(11);
  const Lattice lines = Lattice::chain(0, 29), grid = Lattice::grid({10, 10});
  const auto line_supports = oracle::pair_supports(lines, 1), grid_supports = oracle::pair_supports(grid, 1);
  for (int trial = 0; trial < 500; ++trial) {
    const bool on_grid = trial % 2;
    const Lattice& lat = on_grid ? grid : lines;
    const auto& supports = on_grid ? grid_supports : line_supports;
    const Region x = oracle::random_region(lat, rng);
    const std::string tag = (on_grid ? "grid " : "chain ") + std::to_string(trial);
    for (double r : {0.0, 1.0, 2.0, 3.0}) {
      v.require(r_boundary(lat, x, r) == oracle::r_boundary(lat, x, r), tag + " r_boundary");
      v.require(interior(lat, x, r) == oracle::interior(lat, x, r), tag + " interior");
      v.require(thicken(lat, x, r) == oracle::thicken(lat, x, r), tag + " thicken");
    }
    v.require(phi_boundary(x, supports) == oracle::phi_boundary(x, supports), tag + " phi_boundary");
    const CheckList growth = geometry_checks(lat, x, 1.0, supports, 3);
    for (const std::string& f : growth.failures()) v.require(false, tag + ": " + f);
  }
  const double s = seconds_since(t0);
  v.require(s < 10, "runtime " + fmt(s) + " s");
  if (v.pass) v.detail = "500 regions, " + fmt(s) + " s";
  return v;
}

Verdict c12_determinism() {
  Verdict v;
  for (const auto& pr : pipeline_runs) {
    const FactorizeRun again = factorize_run(pr.cfg);
    v.require(tables_text(again.outcome) == tables_text(pr.run.outcome), "L" + std::to_string(pr.cfg.L) + " CSV differs");
  }
  v.require(!pipeline_runs.empty(), "no pipeline runs");
  if (v.pass) v.detail = std::to_string(pipeline_runs.size()) + " configs byte-identical";
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"convolution exactness", c1_convolution},
      {"Lieb-Robinson dominance", c2_lieb_robinson},
      {"truncation bound", c3_truncation},
      {"conditional expectation and twirl", c4_conditional_expectation},
      {"factorization inequality chain", c5_factorization_chain},
      {"defect behavior", c6_defect},
      {"fidelity identity", c7_fidelity},
      {"Gibbs inequality and sigma checks", c8_gibbs_sigma},
      {"entropy bound validity", c9_entropy_bound},
      {"area-law saturation", c10_area_law},
      {"geometry oracle equivalence", c11_geometry},
      {"determinism", c12_determinism},
  };
  int failed = 0;
  for (size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failed += !v.pass;
    std::printf("%s criterion %zu (%s): %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                v.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
