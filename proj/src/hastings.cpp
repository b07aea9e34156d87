#include "hlab/hastings.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace hlab {

namespace {

constexpr double kExact = 1e-10;

template <typename Scalar>
Vector<Scalar> apply_q(const FactorizationResult<Scalar>& r, const Vector<Scalar>& v) {
  return apply(r.o_r, apply(r.o_l, v, r.volume), r.volume);
}

/// ||A v - omega <omega, v>|| over unit v, for A given with its adjoint.
template <typename Scalar>
double norm_minus_ground(Index n, const LinearMap<Scalar>& a, const LinearMap<Scalar>& a_adj,
                         const Vector<Scalar>& omega) {
  LinearMap<Scalar> f = [&](const Vector<Scalar>& v) -> Vector<Scalar> {
    return a(v) - omega * omega.dot(v);
  };
  LinearMap<Scalar> fa = [&](const Vector<Scalar>& v) -> Vector<Scalar> {
    return a_adj(v) - omega * omega.dot(v);
  };
  return lanczos_norm<Scalar>(n, f, fa, false);
}

/// Eigenbasis of J = M_L + M_R for disjoint supports, expressed on `volume`.
template <typename Scalar>
std::pair<Matrix<Scalar>, RealVector> joint_basis(const Observable<Scalar>& m_l, const Observable<Scalar>& m_r,
                                                  const TensorLayout& volume) {
  const auto el = hermitian_eig<Scalar>(m_l.matrix());
  const auto er = hermitian_eig<Scalar>(m_r.matrix());
  const Observable<Scalar> vl(m_l.layout(), el.vectors), vr(m_r.layout(), er.vectors);
  auto diag = [](const RealVector& v) {
    Matrix<Scalar> d = Matrix<Scalar>::Zero(v.size(), v.size());
    for (Index i = 0; i < v.size(); ++i) d(i, i) = v(i);
    return d;
  };
  const Observable<Scalar> dl(m_l.layout(), diag(el.values)), dr(m_r.layout(), diag(er.values));
  const Vector<Scalar> ones = Vector<Scalar>::Ones(volume.dim());
  const RealVector j = (apply(dl, ones, volume) + apply(dr, ones, volume)).real();
  Observable<Scalar> w = tensor(vr, vl);
  if (!(w.layout() == volume)) w = embed(w, volume);
  return {w.matrix(), j};
}

/// Kernel F_mn for energies k_m of K and j_n of J: exact Gaussian or Gauss-Hermite sum.
RealMatrix phat_kernel(const RealVector& k, const RealVector& j, double alpha, const GaussHermite* rule) {
  RealMatrix f(k.size(), j.size());
  for (Index n = 0; n < j.size(); ++n)
    for (Index m = 0; m < k.size(); ++m) {
      const double d = k(m) - j(n);
      if (!rule) {
        f(m, n) = std::exp(-d * d / (4.0 * alpha));
      } else {
        double acc = 0.0;
        for (Index q = 0; q < rule->nodes.size(); ++q) acc += rule->weights(q) * std::cos(rule->nodes(q) * d);
        f(m, n) = acc;
      }
    }
  return f;
}

template <typename Scalar>
Matrix<Scalar> hadamard(const RealMatrix& f, const Matrix<Scalar>& b) {
  return b.cwiseProduct(f.cast<Scalar>());
}

template <typename Scalar>
Matrix<Scalar> real_part_if_real(const Matrix<cplx>& m) {
  if constexpr (is_complex_v<Scalar>) return m;
  else return m.real();
}

/// Per-node evaluation with dense exponentials; used when M_L and M_R fail to commute.
template <typename Scalar>
Matrix<Scalar> phat_dense(const Matrix<Scalar>& k, const Matrix<Scalar>& ml, const Matrix<Scalar>& mr, double alpha,
                          int nodes, PhatOrder order) {
  const GaussHermite rule = gaussian_time_rule(nodes, alpha);
  const auto ek = hermitian_eig<Scalar>(k), el = hermitian_eig<Scalar>(ml), er = hermitian_eig<Scalar>(mr);
  const Index n = k.rows();
  auto expi = [](const EigenDecomposition<Scalar>& e, double t) {
    Matrix<cplx> c = Matrix<cplx>::Zero(e.values.size(), e.values.size());
    for (Index i = 0; i < e.values.size(); ++i) c(i, i) = std::polar(1.0, t * e.values(i));
    return conjugate_by<Scalar>(e.vectors, c);
  };
  Matrix<cplx> acc = Matrix<cplx>::Zero(n, n);
  for (int q = 0; q < nodes; ++q) {
    const double t = rule.nodes(q);
    const Matrix<cplx> a = expi(ek, t), l = expi(el, -t), r = expi(er, -t);
    acc += rule.weights(q) * (order == PhatOrder::RightLeft ? Matrix<cplx>(a * r * l) : Matrix<cplx>(a * l * r));
  }
  return real_part_if_real<Scalar>(acc);
}

}  // namespace

double positivization_bound(double eps) { return std::sqrt(2.0 * eps) + 3.0 * eps + eps * eps; }

template <typename Scalar>
Localized<Scalar> localize(const Observable<Scalar>& a, const Region& region, LocalizeMode mode) {
  const Region target =
      mode == LocalizeMode::Subalgebra ? intersect(a.support(), region) : minus(a.support(), region);
  Localized<Scalar> out;
  out.m = reduce(a, target);
  Matrix<Scalar> diff = a.matrix();
  embed_add<Scalar>(diff, a.layout(), out.m.layout(), out.m.matrix(), Scalar(-1));
  if (a.hermitian()) diff = (diff + diff.adjoint()).eval() / 2.0;
  out.deviation = op_norm<Scalar>(diff, a.hermitian());
  return out;
}

Thresholds thresholds(double ell, double gamma, double mu, double v_mu) {
  if (!(ell > 0 && gamma > 0 && mu > 0 && v_mu > 0))
    throw Error(ErrorCode::BadConstants, "thresholds need positive inputs");
  const double a = std::exp(-gamma * gamma * ell / 16.0);
  const double c = std::exp(-ell / (16.0 * v_mu * v_mu));
  return Thresholds{std::max({a, std::exp(-mu * ell / 4.0), c}), std::max({a, std::exp(-mu * ell / 8.0), c})};
}

template <typename Scalar>
PhatResult<Scalar> phat(const Observable<Scalar>& m_l, const Observable<Scalar>& m_b, const Observable<Scalar>& m_r,
                        double alpha, int nodes, PhatOrder order, PhatMethod method) {
  if (!m_l.hermitian() || !m_b.hermitian() || !m_r.hermitian())
    throw Error(ErrorCode::NotHermitian, "P-hat needs self-adjoint inputs");
  if (method == PhatMethod::Quadrature && nodes < 16)
    throw Error(ErrorCode::QuadratureUnstable, "at least 16 nodes required");
  const TensorLayout vol = merge(merge(m_l.layout(), m_b.layout()), m_r.layout());
  Matrix<Scalar> k = Matrix<Scalar>::Zero(vol.dim(), vol.dim());
  embed_add<Scalar>(k, vol, m_l.layout(), m_l.matrix());
  embed_add<Scalar>(k, vol, m_b.layout(), m_b.matrix());
  embed_add<Scalar>(k, vol, m_r.layout(), m_r.matrix());
  k = (k + k.adjoint()).eval() / 2.0;

  PhatResult<Scalar> out;
  const bool disjoint = !m_l.support().intersects(m_r.support());
  if (!disjoint) out.lr_commutator = norm_commutator(m_l, m_r).commutator;
  const GaussHermite rule = method == PhatMethod::Quadrature ? gaussian_time_rule(nodes, alpha) : GaussHermite{};

  if (disjoint || out.lr_commutator <= kExact) {
    Matrix<Scalar> w;
    RealVector j;
    if (disjoint) {
      std::tie(w, j) = joint_basis(m_l, m_r, vol);
    } else {
      Matrix<Scalar> jm = embed(m_l, vol).matrix() + embed(m_r, vol).matrix();
      auto ej = hermitian_eig<Scalar>((jm + jm.adjoint()).eval() / 2.0);
      w = std::move(ej.vectors);
      j = ej.values;
    }
    const auto ek = hermitian_eig<Scalar>(k);
    const RealMatrix f = phat_kernel(ek.values, j, alpha, method == PhatMethod::Quadrature ? &rule : nullptr);
    const Matrix<Scalar> b = hadamard<Scalar>(f, ek.vectors.adjoint() * w);
    out.p = Observable<Scalar>(vol, ek.vectors * (b * w.adjoint()));
    out.closed_form = method == PhatMethod::ClosedForm;
    return out;
  }
  out.p = Observable<Scalar>(vol, phat_dense<Scalar>(k, embed(m_l, vol).matrix(), embed(m_r, vol).matrix(), alpha,
                                                     std::max(nodes, 16), order));
  return out;
}

template <typename Scalar>
FactorizationResult<Scalar> factorize(const FactorizationConfig& cfg, const Interaction<Scalar>& phi,
                                      const SpectralData<Scalar>& spec, const InteractionConstants& ic,
                                      const LRConstants& lr) {
  const Lattice& lat = phi.lattice();
  const double r = phi.range();
  const double ell = cfg.ell;
  const Region volume = cfg.volume.empty() ? spec.layout.region : cfg.volume;
  if (!(volume == spec.layout.region))
    throw Error(ErrorCode::DimensionMismatch, "spectrum belongs to another volume");
  if (!(ell > 0)) throw Error(ErrorCode::ConfigInvalid, "ell must be positive");
  if (!cfg.allow_short_ell && !(ell > r)) throw Error(ErrorCode::ConfigInvalid, "ell must exceed the range");
  if (cfg.x.empty() || cfg.x == volume || !cfg.x.subset_of(volume))
    throw Error(ErrorCode::DegenerateCut, "X must be a proper nonempty part of the volume");
  if (!thicken(lat, cfg.x, 3 * ell + r).subset_of(volume))
    throw Error(ErrorCode::GeometryOverflow, "X(3 ell + r) leaves the volume");
  if (!(spec.gap > 1e-8)) throw Error(ErrorCode::NotGapped, "spectrum is not gapped");
  if (std::abs(lr.mu - cfg.mu) > 1e-12) throw Error(ErrorCode::ConfigInvalid, "mu differs from the LR constants");
  if (cfg.method == PhatMethod::Quadrature && cfg.quad_nodes < 16)
    throw Error(ErrorCode::QuadratureUnstable, "at least 16 nodes required");

  FactorizationResult<Scalar> res;
  const TensorLayout& vol = spec.layout;
  const Index n = vol.dim();
  const Region& x = cfg.x;
  const Region xc = minus(volume, x);
  const double alpha = cfg.effective_alpha();
  const double gamma = spec.gap;
  const double sq = std::sqrt(std::numbers::pi * alpha);
  const double heat = std::exp(-gamma * gamma / (4.0 * alpha));
  const double tail = std::exp(-alpha * ell * ell / (4.0 * lr.v_mu * lr.v_mu));
  const double decay = std::exp(-lr.mu * ell / 2.0);
  const double jj = ic.j1 * ic.j2;
  const Vector<Scalar> omega = spec.ground_vector();
  CheckList& ck = res.diagnostics;
  auto& info = res.info;

  res.volume = vol;
  res.x = x;
  res.ell = ell;
  res.alpha = alpha;
  res.gamma = gamma;
  res.omega = omega;
  const Thresholds th = thresholds(ell, gamma, lr.mu, lr.v_mu);
  res.xi = th.xi;
  res.eta = th.eta;
  info["ell_exceeds_range"] = ell > r ? 1.0 : 0.0;

  // geometry
  auto dphi = [&](const Region& reg) { return reg.empty() ? 0.0 : double(phi_boundary(reg, phi).size()); };
  const double b_int_plus = dphi(interior(lat, x, ell + r));
  const double b_int_minus = dphi(interior(lat, x, ell - r));
  const double b_thick = dphi(thicken(lat, x, ell + r));
  const double b_thick2 = dphi(thicken(lat, x, ell + 2 * r));
  const double b_thick3 = dphi(thicken(lat, x, 2 * ell + r));
  const double b_x = dphi(x);
  const double b_shell2 = dphi(r_boundary(lat, x, ell + 2 * r));
  const double shell = r_boundary(lat, x, ell + r).size();
  const Region m_b_region = intersect(r_boundary(lat, x, 2 * ell + r), volume);
  const Region o_b_region = intersect(r_boundary(lat, x, 3 * ell + r), volume);
  info["dphi_x_int_l_plus_r"] = b_int_plus;
  info["dphi_x_int_l_minus_r"] = b_int_minus;
  info["dphi_x_l_plus_r"] = b_thick;
  info["boundary_l_plus_r"] = shell;
  info["gamma"] = gamma;
  info["alpha"] = alpha;
  info["xi"] = th.xi;
  info["eta"] = th.eta;

  // split and filter
  const HamiltonianSplit<Scalar> sp = split(phi, volume, x, ell, spec);
  info["partition_residual"] = sp.partition_residual;
  Matrix<Scalar> h_omega = sp.h_l_primed.matrix();
  embed_add<Scalar>(h_omega, vol, sp.h_r_primed.layout(), sp.h_r_primed.matrix());
  embed_add<Scalar>(h_omega, vol, sp.h_b_primed.layout(), sp.h_b_primed.matrix());
  const Observable<Scalar> fr = gaussian_filter(sp.h_r_primed, alpha, spec);
  const Observable<Scalar> fb = gaussian_filter(sp.h_b_primed, alpha, spec);
  Observable<Scalar> fl(vol, h_omega - fr.matrix() - fb.matrix());
  {
    Matrix<Scalar> s = fl.matrix();
    fl = Observable<Scalar>(vol, (s + s.adjoint()).eval() / 2.0);
  }

  // ground-vector bounds
  const double fr_omega = (fr.matrix() * omega).norm();
  const double fb_omega = (fb.matrix() * omega).norm();
  const double fl_omega = (fl.matrix() * omega).norm();
  const double delta_r = (h_omega * apply(sp.h_r_primed, omega, vol)).norm();
  const double delta_b = (h_omega * apply(sp.h_b_primed, omega, vol)).norm();
  const double delta_l = (h_omega * (sp.h_l_primed.matrix() * omega)).norm();
  ck.add("filter_ground_bound_r", fr_omega, heat / gamma * delta_r, "filtered ground-vector bound, H'_R");
  ck.add("filter_ground_bound_b", fb_omega, heat / gamma * delta_b, "filtered ground-vector bound, H'_B");
  ck.add("filter_ground_bound_l", fl_omega, heat / gamma * delta_l, "filtered ground-vector bound, H'_L");
  ck.add("filtered_r_ground", fr_omega, 2 * jj / gamma * heat * b_int_plus, "filtered H'_R on the ground vector");
  ck.add("filtered_l_ground", fl_omega, 2 * jj / gamma * heat * b_thick, "filtered H'_L on the ground vector");

  // commutator norms of the local Hamiltonians with H
  {
    const Observable<Scalar>& hr = sp.h_r;
    const Observable<Scalar>& hb = sp.h_b;
    LinearMap<Scalar> cr = [&](const Vector<Scalar>& v) -> Vector<Scalar> {
      return h_omega * apply(hr, v, vol) - apply(hr, Vector<Scalar>(h_omega * v), vol);
    };
    LinearMap<Scalar> cr_adj = [&](const Vector<Scalar>& v) -> Vector<Scalar> { return -cr(v); };
    LinearMap<Scalar> cx = [&](const Vector<Scalar>& v) -> Vector<Scalar> {
      const Vector<Scalar> hv = h_omega * v;
      return h_omega * (apply(hr, v, vol) + apply(hb, v, vol)) - apply(hr, hv, vol) - apply(hb, hv, vol);
    };
    LinearMap<Scalar> cx_adj = [&](const Vector<Scalar>& v) -> Vector<Scalar> { return -cx(v); };
    const double comm_r = lanczos_norm<Scalar>(n, cr, cr_adj, false);
    const double comm_x = lanczos_norm<Scalar>(n, cx, cx_adj, false);
    ck.add("commutator_h_r", comm_r, 2 * jj * b_int_plus, "commutator of H with H_R");
    ck.add("commutator_h_x", comm_x, 2 * jj * b_thick, "commutator of H with H_X(l+r)");
    const double hb_norm = hb.norm();
    const double hbp_norm = sp.h_b_primed.norm();
    ck.add("h_b_norm", hb_norm, ic.j * shell, "norm of the boundary Hamiltonian");
    ck.add("h_b_primed_norm", hbp_norm, 2 * ic.j * shell, "norm of the centred boundary Hamiltonian");
    ck.add("h_b_primed_norm_j1", hbp_norm, 2 * ic.j1 * shell, "same with j' in place of j");
  }

  // localization
  const Localized<Scalar> lr_ = localize(fr, x, LocalizeMode::Subalgebra);
  const Localized<Scalar> lb_ = localize(fb, m_b_region, LocalizeMode::Subalgebra);
  const Localized<Scalar> ll_ = localize(fl, x, LocalizeMode::Commutant);
  res.m_r = lr_.m;
  res.m_b = lb_.m;
  res.m_l = ll_.m;
  const double bound_r = 2 * jj * lr.c_mu * std::exp(lr.mu * r) / sq * b_int_plus * b_int_minus * decay +
                         4 * jj / sq * b_int_plus * tail;
  const double b_sum = b_thick + b_int_plus;
  const double bound_b =
      2 * jj * lr.c_mu * std::exp(lr.mu * r) / sq * b_sum * b_shell2 * decay + 4 * jj / sq * b_sum * tail;
  const double bound_l =
      8 * jj / sq * b_thick * tail +
      2 * lr.c_mu * jj * std::exp(lr.mu * r) / sq * b_thick *
          (b_x + ic.j1 * std::exp(lr.mu * r) / (lr.mu * lr.v_mu) * b_thick2 * b_thick3) * decay;
  ck.add("localize_r", lr_.deviation, bound_r, "interior localization");
  ck.add("localize_b", lb_.deviation, bound_b, "boundary localization");
  ck.add("localize_l", ll_.deviation, bound_l, "exterior localization by the twirl");
  const double mb_norm = res.m_b.norm();
  ck.add("m_b_norm", mb_norm, 2 * ic.j * shell, "norm of the boundary localization");
  info["m_r_norm"] = res.m_r.norm();
  info["m_b_norm"] = mb_norm;
  info["m_l_norm"] = res.m_l.norm();

  // Hamiltonian approximation
  Matrix<Scalar> k = Matrix<Scalar>::Zero(n, n);
  embed_add<Scalar>(k, vol, res.m_l.layout(), res.m_l.matrix());
  embed_add<Scalar>(k, vol, res.m_b.layout(), res.m_b.matrix());
  embed_add<Scalar>(k, vol, res.m_r.layout(), res.m_r.matrix());
  k = (k + k.adjoint()).eval() / 2.0;
  Matrix<Scalar> diff = h_omega - k;
  const double approx = op_norm<Scalar>(diff, true);
  const double dev_sum = lr_.deviation + lb_.deviation + ll_.deviation;
  const double bound_sum = bound_r + bound_b + bound_l;
  ck.add("approximation_vs_deviations", approx, dev_sum, "H - K against the three localization errors");
  ck.add("approximation_vs_bounds", approx, bound_sum, "H - K against the three localization bounds");
  {
    Rng rng(cfg.seed);
    double sampled = 0.0;
    for (int s = 0; s < cfg.random_vectors; ++s) {
      const Vector<Scalar> phi_v = random_unit_vector<Scalar>(n, rng);
      sampled = std::max(sampled, (diff * phi_v).norm());
    }
    const Matrix<Scalar> kv = k * spec.eigvecs;
    for (Index c = 0; c < n; ++c)
      sampled = std::max(sampled, (spec.eigvecs.col(c) * Scalar(spec.energies(c)) - kv.col(c)).norm());
    ck.add("approximation_sampled", sampled, approx, "sampled vectors never exceed the operator norm");
    ck.add("approximation_sampled_vs_bounds", sampled, bound_sum, "sampled H - K against the localization bounds");
    info["approximation_sampled"] = sampled;
  }
  info["approximation"] = approx;
  diff.resize(0, 0);
  h_omega.resize(0, 0);

  // spectral windows
  const WindowProjection<Scalar> wr = window_projection(res.m_r, th.xi);
  const WindowProjection<Scalar> wl = window_projection(res.m_l, th.eta);
  res.o_r = wr.p;
  res.o_l = wl.p;
  info["rank_o_r"] = double(wr.rank);
  info["rank_o_l"] = double(wl.rank);
  info["window_boundary_warning"] = (wr.boundary_warning || wl.boundary_warning) ? 1.0 : 0.0;
  const Vector<Scalar> or_omega = apply(res.o_r, omega, vol);
  const Vector<Scalar> ol_omega = apply(res.o_l, omega, vol);
  const double or_dev = (or_omega - omega).norm();
  const double ol_dev = (ol_omega - omega).norm();
  ck.add("window_r_chain", or_dev, (fr_omega + lr_.deviation) / th.xi, "Chebyshev window for O_R");
  ck.add("window_l_chain", ol_dev, (fl_omega + ll_.deviation) / th.eta, "Chebyshev window for O_L");

  // algebraic properties of the projections
  {
    auto proj_err = [](const Observable<Scalar>& p) {
      const Matrix<Scalar>& m = p.matrix();
      return std::max((m * m - m).cwiseAbs().maxCoeff(), (m - m.adjoint()).cwiseAbs().maxCoeff());
    };
    ck.add("o_r_projection", proj_err(res.o_r), 0.0, "O_R idempotent and self-adjoint", kExact);
    ck.add("o_l_projection", proj_err(res.o_l), 0.0, "O_L idempotent and self-adjoint", kExact);
    LinearMap<Scalar> comm = [&](const Vector<Scalar>& v) -> Vector<Scalar> {
      return apply(res.o_r, apply(res.o_l, v, vol), vol) - apply(res.o_l, apply(res.o_r, v, vol), vol);
    };
    LinearMap<Scalar> comm_adj = [&](const Vector<Scalar>& v) -> Vector<Scalar> { return -comm(v); };
    ck.add("o_r_o_l_commute", lanczos_norm<Scalar>(n, comm, comm_adj, false), 0.0, "O_R O_L = O_L O_R", kExact);
    const Observable<Scalar> er = embed(res.o_r, vol);
    ck.add("o_r_in_a_x", (er.matrix() - cond_expect(er, x).matrix()).cwiseAbs().maxCoeff(), 0.0,
           "O_R is fixed by the conditional expectation onto A_X", kExact);
    const Observable<Scalar> el = embed(res.o_l, vol);
    ck.add("o_l_in_commutant", (el.matrix() - twirl(el, x).matrix()).cwiseAbs().maxCoeff(), 0.0,
           "O_L is fixed by the twirl over A_X", kExact);
    ck.add("o_r_support", res.o_r.support().subset_of(x) ? 0.0 : 1.0, 0.0, "support of O_R inside X", 0.0);
    ck.add("o_l_support", res.o_l.support().intersects(x) ? 1.0 : 0.0, 0.0, "support of O_L outside X", 0.0);
  }

  // heat projectors
  const HeatProjector<Scalar> hp = heat_projector(spec, alpha);
  ck.add("heat_projector_equality", std::abs(hp.measured - heat), 0.0, "||P - P_0|| = exp(-gamma^2 / 4 alpha)",
         kExact);
  const auto ek = hermitian_eig<Scalar>(k);
  k.resize(0, 0);
  const RealVector kw = ek.values.unaryExpr([&](double e) { return std::exp(-e * e / (4.0 * alpha)); });
  const Matrix<Scalar> ptilde = spectral_function<Scalar>(ek.vectors, kw);
  {
    Matrix<Scalar> d = ptilde - hp.p.matrix();
    d = (d + d.adjoint()).eval() / 2.0;
    const double lhs = op_norm<Scalar>(d, true);
    ck.add("p_tilde_vs_p", lhs, approx / sq, "P-tilde against P through ||H - K||");
    info["p_tilde_vs_p"] = lhs;
  }

  // P-hat in the mixed eigenbasis of K and M_L + M_R
  Matrix<Scalar> phat_m;
  {
    auto [w, j] = joint_basis(res.m_l, res.m_r, vol);
    const Matrix<Scalar> b = ek.vectors.adjoint() * w;
    const bool use_gh = cfg.method == PhatMethod::Quadrature;
    const GaussHermite rule = gaussian_time_rule(std::max(cfg.quad_nodes, 2), alpha);
    const RealMatrix f = phat_kernel(ek.values, j, alpha, use_gh ? &rule : nullptr);
    const Matrix<Scalar> core = hadamard<Scalar>(f, b);
    info["phat_norm"] = op_norm<Scalar>(core, false);
    if (n <= cfg.quadrature_check_cap && cfg.quad_nodes >= 2) {
      const RealMatrix fg = use_gh ? f : phat_kernel(ek.values, j, alpha, &rule);
      const GaussHermite fine = gaussian_time_rule(2 * cfg.quad_nodes, alpha);
      const RealMatrix f2 = phat_kernel(ek.values, j, alpha, &fine);
      const RealMatrix fe = use_gh ? phat_kernel(ek.values, j, alpha, nullptr) : f;
      ck.note("phat_quadrature_vs_exact", op_norm<Scalar>(hadamard<Scalar>(fg - fe, b), false), 1e-8,
              "Gauss-Hermite P-hat against the exact Gaussian integral");
      ck.note("phat_quadrature_refinement", op_norm<Scalar>(hadamard<Scalar>(fg - f2, b), false), 1e-8,
              "Gauss-Hermite P-hat with n and 2n nodes");
    }
    phat_m = ek.vectors * (core * w.adjoint());
  }
  info["k_min"] = ek.values(0);
  info["k_max"] = ek.values(ek.values.size() - 1);

  const double ptil_p = info["p_tilde_vs_p"];
  const double p0q = [&] {
    const Vector<Scalar> q_omega = apply_q(res, omega);
    return (q_omega - omega).norm();
  }();
  ck.add("p0_window", p0q, ol_dev + or_dev, "||P_0 O_L O_R - P_0|| against the two window errors");
  {
    // e^{itM_L} e^{itM_R} O_L O_R - O_L O_R is diagonal in the joint eigenbasis.
    const auto el = hermitian_eig<Scalar>(res.m_l.matrix());
    const auto er = hermitian_eig<Scalar>(res.m_r.matrix());
    double lmax = 0.0;
    for (Index a = 0; a < er.values.size(); ++a) {
      if (std::abs(er.values(a)) > th.xi + 1e-12) continue;
      for (Index c = 0; c < el.values.size(); ++c)
        if (std::abs(el.values(c)) <= th.eta + 1e-12)
          lmax = std::max(lmax, std::abs(er.values(a) + el.values(c)));
    }
    for (double t : {0.1, 0.5, 1.0, 2.0, 5.0}) {
      const double lhs = lmax * t < std::numbers::pi ? 2.0 * std::sin(lmax * t / 2.0) : 2.0;
      ck.add("window_phase_t" + std::to_string(t).substr(0, 3), lhs, 2 * (th.xi + th.eta) * t,
             "window phase estimate on a t-grid");
    }
  }
  const Matrix<Scalar> dp = phat_m - ptilde;
  {
    LinearMap<Scalar> f = [&](const Vector<Scalar>& v) -> Vector<Scalar> { return dp * apply_q(res, v); };
    LinearMap<Scalar> fa = [&](const Vector<Scalar>& v) -> Vector<Scalar> {
      return apply_q(res, Vector<Scalar>(dp.adjoint() * v));
    };
    const double lhs = lanczos_norm<Scalar>(n, f, fa, false);
    ck.add("p_hat_vs_p_tilde", lhs, 2 * (th.xi + th.eta) / sq, "(P-hat - P-tilde) O_L O_R");
    info["p_hat_vs_p_tilde"] = lhs;
  }
  {
    LinearMap<Scalar> f = [&](const Vector<Scalar>& v) -> Vector<Scalar> { return phat_m * apply_q(res, v); };
    LinearMap<Scalar> fa = [&](const Vector<Scalar>& v) -> Vector<Scalar> {
      return apply_q(res, Vector<Scalar>(phat_m.adjoint() * v));
    };
    const double lhs = norm_minus_ground<Scalar>(n, f, fa, omega);
    const double measured = info["p_hat_vs_p_tilde"] + ptil_p + hp.measured + p0q;
    const double bounds = 2 * (th.xi + th.eta) / sq + bound_sum / sq + heat + ol_dev + or_dev;
    ck.add("p_hat_chain_measured", lhs, measured, "P-hat O_L O_R - P_0 against measured chain terms");
    ck.add("p_hat_chain_bounds", lhs, bounds, "P-hat O_L O_R - P_0 against the bound chain");
    info["p_hat_defect"] = lhs;
  }

  // boundary contraction
  {
    Observable<Scalar> ob = reduce(Observable<Scalar>(vol, std::move(phat_m)), o_b_region);
    double nb = ob.norm();
    info["o_b_norm_raw"] = nb;
    if (nb > 1.0) {
      if (nb - 1.0 > 1e-8) throw Error(ErrorCode::QuadratureUnstable, "boundary factor is not a contraction");
      ob = Scalar(1.0 / nb) * ob;
      nb = ob.norm();
    }
    res.o_b = std::move(ob);
    ck.add("o_b_contraction", nb, 1.0, "O_B is a contraction", kExact);
    ck.add("o_b_support", res.o_b.support().subset_of(o_b_region) ? 0.0 : 1.0, 0.0, "support of O_B", 0.0);
  }
  {
    LinearMap<Scalar> f = [&](const Vector<Scalar>& v) -> Vector<Scalar> {
      return apply(res.o_b, apply_q(res, v), vol);
    };
    LinearMap<Scalar> fa = [&](const Vector<Scalar>& v) -> Vector<Scalar> {
      return apply_q(res, apply(res.o_b.adjoint(), v, vol));
    };
    res.defect = norm_minus_ground<Scalar>(n, f, fa, omega);
    const Vector<Scalar> img = f(omega);
    ck.add("defect_on_ground", (img - omega).norm(), res.defect, "||O_B O_L O_R Omega - Omega|| <= defect");
    info["ground_overlap"] = std::real(omega.dot(img));
  }
  info["defect"] = res.defect;
  if (res.defect < 1.0) res = positivize(std::move(res));
  return res;
}

template <typename Scalar>
FactorizationResult<Scalar> positivize(FactorizationResult<Scalar> res) {
  const double eps = res.defect;
  if (!(eps < 1.0)) throw Error(ErrorCode::DefectTooLarge, "defect " + std::to_string(eps) + " is not below 1");
  const TensorLayout& vol = res.volume;
  const Matrix<Scalar> pos = res.o_b.matrix().adjoint() * res.o_b.matrix();
  res.o_b_pos = Observable<Scalar>(res.o_b.layout(), (pos + pos.adjoint()).eval() / 2.0);
  LinearMap<Scalar> f = [&](const Vector<Scalar>& v) -> Vector<Scalar> {
    return apply(res.o_b_pos, apply_q(res, v), vol);
  };
  LinearMap<Scalar> fa = [&](const Vector<Scalar>& v) -> Vector<Scalar> {
    return apply_q(res, apply(res.o_b_pos, v, vol));
  };
  res.defect_pos = norm_minus_ground<Scalar>(vol.dim(), f, fa, res.omega);
  res.positivized = true;
  res.info["defect_pos"] = res.defect_pos;
  res.diagnostics.add("positivization_chain", res.defect_pos, positivization_bound(eps),
                      "positive boundary factor, square-root chain", 1e-9);
  res.diagnostics.add("positivization_quarter", res.defect_pos, 6.0 * std::pow(eps, 0.25),
                      "positive boundary factor, fourth-root form", 1e-9);
  return res;
}

#define HLAB_INSTANTIATE(S)                                                                                  \
  template Localized<S> localize<S>(const Observable<S>&, const Region&, LocalizeMode);                      \
  template PhatResult<S> phat<S>(const Observable<S>&, const Observable<S>&, const Observable<S>&, double,    \
                                 int, PhatOrder, PhatMethod);                                                \
  template FactorizationResult<S> factorize<S>(const FactorizationConfig&, const Interaction<S>&,            \
                                               const SpectralData<S>&, const InteractionConstants&,          \
                                               const LRConstants&);                                          \
  template FactorizationResult<S> positivize<S>(FactorizationResult<S>);

HLAB_INSTANTIATE(double)
HLAB_INSTANTIATE(cplx)

}  // namespace hlab
