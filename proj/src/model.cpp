#include "hlab/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "hlab/spectral.hpp"
#include "json.hpp"

namespace hlab {

namespace {

RealMatrix pauli_x() { return (RealMatrix(2, 2) << 0, 1, 1, 0).finished(); }
RealMatrix pauli_z() { return (RealMatrix(2, 2) << 1, 0, 0, -1).finished(); }

// XX + YY for two qubits.
RealMatrix flip_flop() {
  RealMatrix m = RealMatrix::Zero(4, 4);
  m(1, 2) = m(2, 1) = 2.0;
  return m;
}

double coupling(const Couplings& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void check_keys(const std::string& model, const Couplings& params, std::set<std::string> allowed) {
  for (const auto& [key, value] : params) {
    if (!allowed.count(key)) throw Error(ErrorCode::BadCoupling, model + " has no coupling '" + key + "'");
    if (!std::isfinite(value)) throw Error(ErrorCode::BadCoupling, model + " coupling '" + key + "' is not finite");
  }
}

bool collinear_step(const Lattice& lat, int a, int b, int c) {
  const auto &ca = lat.coords(a), &cb = lat.coords(b), &cc = lat.coords(c);
  for (size_t k = 0; k < ca.size(); ++k)
    if (cb[k] - ca[k] != cc[k] - cb[k]) return false;
  return true;
}

}  // namespace

template <typename Scalar>
Interaction<Scalar>::Interaction(LatticePtr lattice, double range) : lattice_(std::move(lattice)), range_(range) {
  if (!(range_ > 0)) throw Error(ErrorCode::BadCoupling, "declared range must be positive");
}

template <typename Scalar>
void Interaction<Scalar>::add(const Region& support, const Matrix<Scalar>& m) {
  if (support.empty()) throw Error(ErrorCode::EmptyRegion, "interaction term on the empty set");
  if (diameter(*lattice_, support) > range_)
    throw Error(ErrorCode::RangeViolation, "term support wider than the declared range");
  const TensorLayout layout = TensorLayout::of(*lattice_, support);
  if (hermitian_deviation<Scalar>(m) > 1e-12) throw Error(ErrorCode::NotHermitian, "interaction term");
  Observable<Scalar> op(layout, m);
  auto it = std::find_if(terms_.begin(), terms_.end(), [&](const Term<Scalar>& t) { return t.support == support; });
  if (it != terms_.end()) {
    it->op += op;
    it->norm = it->op.norm();
    return;
  }
  Term<Scalar> t{support, op, op.norm()};
  terms_.insert(std::upper_bound(terms_.begin(), terms_.end(), t,
                                 [](const Term<Scalar>& a, const Term<Scalar>& b) { return a.support < b.support; }),
                std::move(t));
}

template <typename Scalar>
std::vector<Region> Interaction<Scalar>::supports() const {
  std::vector<Region> out;
  for (const auto& t : terms_)
    if (t.norm > 0) out.push_back(t.support);
  return out;
}

Interaction<double> preset(const std::string& name, const Couplings& params, LatticePtr lattice,
                           const Region& volume) {
  const Lattice& lat = *lattice;
  for (int s : volume)
    if (lat.site_dim(s) != 2) throw Error(ErrorCode::BadCoupling, "presets act on qubits");
  std::vector<std::pair<int, int>> bonds;
  for (int a : volume)
    for (int b : volume)
      if (a < b && lat.distance(a, b) == 1.0) bonds.push_back({a, b});
  const RealMatrix x = pauli_x(), z = pauli_z();

  if (name == "tfim") {
    check_keys(name, params, {"g", "J"});
    const double g = coupling(params, "g", 1.0), j = coupling(params, "J", 1.0);
    Interaction<double> phi(lattice, 1.0);
    if (g != 0)
      for (int s : volume) phi.add(Region{s}, -g * x);
    if (j != 0)
      for (auto [a, b] : bonds) phi.add(Region{a, b}, -j * kron<double>(z, z));
    return phi;
  }
  if (name == "xxz") {
    check_keys(name, params, {"J", "delta"});
    const double j = coupling(params, "J", 1.0), delta = coupling(params, "delta", 1.0);
    Interaction<double> phi(lattice, 1.0);
    if (j != 0)
      for (auto [a, b] : bonds) phi.add(Region{a, b}, j * (flip_flop() + delta * kron<double>(z, z)));
    return phi;
  }
  if (name == "cluster") {
    check_keys(name, params, {"J", "g"});
    const double j = coupling(params, "J", 1.0), g = coupling(params, "g", 0.0);
    Interaction<double> phi(lattice, 2.0);
    if (j != 0)
      for (int b : volume)
        for (int a : volume)
          for (int c : volume)
            if (a < c && lat.distance(a, b) == 1.0 && lat.distance(b, c) == 1.0 && lat.distance(a, c) == 2.0 &&
                collinear_step(lat, a, b, c)) {
              // sites are stored sorted, so the middle factor is the X
              phi.add(Region{a, b, c}, -j * kron<double>(kron<double>(z, x), z));
            }
    if (g != 0)
      for (int s : volume) phi.add(Region{s}, -g * x);
    return phi;
  }
  if (name == "onsite") {
    check_keys(name, params, {"g"});
    const double g = coupling(params, "g", 1.0);
    if (g == 0) throw Error(ErrorCode::BadCoupling, "onsite needs g != 0");
    Interaction<double> phi(lattice, 1.0);
    for (int s : volume) phi.add(Region{s}, -g * x);
    return phi;
  }
  throw Error(ErrorCode::UnknownModel, name);
}

Interaction<cplx> interaction_from_json(const std::string& text, LatticePtr lattice, double range) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("interaction json: ") + e.what());
  }
  if (doc.is_object() && doc.contains("terms")) doc = doc["terms"];
  if (!doc.is_array()) throw Error(ErrorCode::ConfigInvalid, "interaction json must be a list of terms");
  Interaction<cplx> phi(lattice, range);
  for (const auto& entry : doc) {
    const Region support(entry.at("sites").get<std::vector<int>>());
    const Index d = TensorLayout::of(*lattice, support).dim();
    const auto& m = entry.at("matrix");
    std::vector<cplx> flat;
    for (const auto& item : m) {
      if (item.is_array() && !item.empty() && item[0].is_array()) {
        for (const auto& z : item) flat.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
      } else {
        flat.emplace_back(item.at(0).get<double>(), item.at(1).get<double>());
      }
    }
    if (Index(flat.size()) != d * d) throw Error(ErrorCode::DimensionMismatch, "term matrix has the wrong size");
    Matrix<cplx> mat(d, d);
    for (Index i = 0; i < d; ++i)
      for (Index j = 0; j < d; ++j) mat(i, j) = flat[i * d + j];
    phi.add(support, mat);
  }
  return phi;
}

template <typename Scalar>
double phi_f_norm(const Interaction<Scalar>& phi, const FFunction& f) {
  const Lattice& lat = phi.lattice();
  RealMatrix pair_sum = RealMatrix::Zero(lat.size(), lat.size());
  for (const auto& t : phi.terms())
    for (int a : t.support)
      for (int b : t.support) pair_sum(a, b) += t.norm;
  double best = 0.0;
  for (int a = 0; a < lat.size(); ++a)
    for (int b = 0; b < lat.size(); ++b)
      if (pair_sum(a, b) > 0) best = std::max(best, pair_sum(a, b) / f(lat.distance(a, b)));
  return best;
}

template <typename Scalar>
InteractionConstants constants(const Interaction<Scalar>& phi, const FFunction& f) {
  const Lattice& lat = phi.lattice();
  std::vector<double> j(lat.size()), j1(lat.size()), j2(lat.size());
  for (const auto& t : phi.terms()) {
    const double size = t.support.size();
    for (int s : t.support) {
      j[s] += t.norm / size;
      j1[s] += t.norm;
      j2[s] += t.norm * size;
    }
  }
  InteractionConstants c;
  c.j = *std::max_element(j.begin(), j.end());
  c.j1 = *std::max_element(j1.begin(), j1.end());
  c.j2 = *std::max_element(j2.begin(), j2.end());
  c.phi_f_norm = phi_f_norm(phi, f);
  c.range = phi.range();
  const double ratio = f_constants(f, lat).f_norm / f(phi.range());
  c.j1_bound = c.j * ratio;
  c.j2_bound = c.j1 * ratio;
  return c;
}

template <typename Scalar>
Observable<Scalar> local_hamiltonian(const Interaction<Scalar>& phi, const Region& volume) {
  const TensorLayout layout = TensorLayout::of(phi.lattice(), volume);
  Matrix<Scalar> h = Matrix<Scalar>::Zero(layout.dim(), layout.dim());
  for (const auto& t : phi.terms())
    if (t.support.subset_of(volume)) embed_add<Scalar>(h, layout, t.op.layout(), t.op.matrix());
  return Observable<Scalar>(layout, std::move(h));
}

template <typename Scalar>
HamiltonianSplit<Scalar> split(const Interaction<Scalar>& phi, const Region& volume, const Region& x, double n,
                               const SpectralData<Scalar>& ground) {
  const Lattice& lat = phi.lattice();
  const double width = n + phi.range();
  const Region thick = thicken(lat, x, width);
  if (!thick.subset_of(volume)) throw Error(ErrorCode::GeometryOverflow, "X(n+r) leaves the volume");
  if (!(ground.layout.region == volume)) throw Error(ErrorCode::DimensionMismatch, "ground state on another volume");
  const Region inner = interior(lat, x, width);
  const Region shell = r_boundary(lat, x, width);

  const TensorLayout lx = TensorLayout::of(lat, x), lb = TensorLayout::of(lat, shell), lt = TensorLayout::of(lat, thick);
  Matrix<Scalar> hr = Matrix<Scalar>::Zero(lx.dim(), lx.dim());
  Matrix<Scalar> hb = Matrix<Scalar>::Zero(lb.dim(), lb.dim());
  Matrix<Scalar> hx = Matrix<Scalar>::Zero(lt.dim(), lt.dim());
  for (const auto& t : phi.terms()) {
    if (!t.support.subset_of(volume)) continue;
    if (t.support.intersects(inner)) embed_add<Scalar>(hr, lx, t.op.layout(), t.op.matrix());
    if (t.support.subset_of(shell)) embed_add<Scalar>(hb, lb, t.op.layout(), t.op.matrix());
    if (t.support.subset_of(thick)) embed_add<Scalar>(hx, lt, t.op.layout(), t.op.matrix());
  }
  HamiltonianSplit<Scalar> out;
  out.n = n;
  out.h_r = Observable<Scalar>(lx, std::move(hr));
  out.h_b = Observable<Scalar>(lb, std::move(hb));
  {
    Matrix<Scalar> sum = Matrix<Scalar>::Zero(lt.dim(), lt.dim());
    embed_add<Scalar>(sum, lt, lx, out.h_r.matrix());
    embed_add<Scalar>(sum, lt, lb, out.h_b.matrix());
    out.partition_residual = (sum - hx).cwiseAbs().maxCoeff();
  }
  out.h_r_expectation = expectation(out.h_r, ground);
  out.h_b_expectation = expectation(out.h_b, ground);
  out.h_r_primed = out.h_r - Scalar(out.h_r_expectation) * Observable<Scalar>::identity(lx);
  out.h_b_primed = out.h_b - Scalar(out.h_b_expectation) * Observable<Scalar>::identity(lb);

  Observable<Scalar> h_omega = local_hamiltonian(phi, volume);
  Matrix<Scalar> hl = h_omega.matrix();
  hl.diagonal().array() -= Scalar(ground.e0);
  embed_add<Scalar>(hl, ground.layout, lx, out.h_r_primed.matrix(), Scalar(-1));
  embed_add<Scalar>(hl, ground.layout, lb, out.h_b_primed.matrix(), Scalar(-1));
  out.h_l_primed = Observable<Scalar>(ground.layout, std::move(hl));
  return out;
}

#define HLAB_INSTANTIATE(S)                                                                                 \
  template class Interaction<S>;                                                                            \
  template double phi_f_norm<S>(const Interaction<S>&, const FFunction&);                                   \
  template InteractionConstants constants<S>(const Interaction<S>&, const FFunction&);                      \
  template Observable<S> local_hamiltonian<S>(const Interaction<S>&, const Region&);                        \
  template HamiltonianSplit<S> split<S>(const Interaction<S>&, const Region&, const Region&, double,          \
                                        const SpectralData<S>&);

HLAB_INSTANTIATE(double)
HLAB_INSTANTIATE(cplx)

}  // namespace hlab
