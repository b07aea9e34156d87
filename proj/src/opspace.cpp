#include "hlab/opspace.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

namespace hlab {

namespace {

// Decomposition of every basis index of `vol` into (index on sub, index on the remaining sites).
struct SplitIndex {
  std::vector<Index> sub, rest, compose;
  Index d_sub = 1, d_rest = 1;
  Index at(Index s, Index r) const { return compose[s * d_rest + r]; }
};

SplitIndex split_index(const TensorLayout& vol, const Region& sub) {
  const int n = vol.region.size();
  std::vector<Index> sub_stride(n, 0), rest_stride(n, 0);
  SplitIndex out;
  for (int k = n - 1; k >= 0; --k) {
    if (sub.contains(vol.region[k])) {
      sub_stride[k] = out.d_sub;
      out.d_sub *= vol.dims[k];
    } else {
      rest_stride[k] = out.d_rest;
      out.d_rest *= vol.dims[k];
    }
  }
  const Index total = vol.dim();
  out.sub.resize(total);
  out.rest.resize(total);
  out.compose.resize(total);
  std::vector<int> digit(n, 0);
  Index s = 0, r = 0;
  for (Index i = 0; i < total; ++i) {
    out.sub[i] = s;
    out.rest[i] = r;
    out.compose[s * out.d_rest + r] = i;
    for (int k = n - 1; k >= 0; --k) {
      const Index step = sub_stride[k] ? sub_stride[k] : rest_stride[k];
      Index& acc = sub.contains(vol.region[k]) ? s : r;
      if (++digit[k] < vol.dims[k]) {
        acc += step;
        break;
      }
      acc -= step * (vol.dims[k] - 1);
      digit[k] = 0;
    }
  }
  return out;
}

void require_subset(const TensorLayout& small, const TensorLayout& big) {
  if (!small.region.subset_of(big.region))
    throw Error(ErrorCode::SupportNotContained, "support is not inside the volume");
  for (int s : small.region)
    if (small.dim_of(s) != big.dim_of(s))
      throw Error(ErrorCode::DimensionMismatch, "site dimension differs at site " + std::to_string(s));
}

}  // namespace

TensorLayout::TensorLayout(Region r, std::vector<int> d) : region(std::move(r)), dims(std::move(d)) {
  if (int(dims.size()) != region.size())
    throw Error(ErrorCode::DimensionMismatch, "layout needs one dimension per site");
}

TensorLayout TensorLayout::of(const Lattice& lat, const Region& r) {
  std::vector<int> d;
  for (int s : r) {
    if (s < 0 || s >= lat.size()) throw Error(ErrorCode::SupportNotContained, "site outside lattice");
    d.push_back(lat.site_dim(s));
  }
  return TensorLayout(r, std::move(d));
}

TensorLayout TensorLayout::uniform(const Region& r, int d) {
  return TensorLayout(r, std::vector<int>(r.size(), d));
}

Index TensorLayout::dim() const {
  Index n = 1;
  for (int d : dims) n *= d;
  return n;
}

int TensorLayout::dim_of(int site) const {
  const auto& s = region.sites();
  const auto it = std::lower_bound(s.begin(), s.end(), site);
  if (it == s.end() || *it != site) throw Error(ErrorCode::SupportNotContained, "site not in layout");
  return dims[it - s.begin()];
}

TensorLayout TensorLayout::restrict_to(const Region& r) const {
  if (!r.subset_of(region)) throw Error(ErrorCode::SupportNotContained, "restriction outside layout");
  std::vector<int> d;
  for (int s : r) d.push_back(dim_of(s));
  return TensorLayout(r, std::move(d));
}

TensorLayout merge(const TensorLayout& a, const TensorLayout& b) {
  const Region u = unite(a.region, b.region);
  std::vector<int> d;
  for (int s : u) {
    const bool in_a = a.region.contains(s), in_b = b.region.contains(s);
    if (in_a && in_b && a.dim_of(s) != b.dim_of(s))
      throw Error(ErrorCode::DimensionMismatch, "site dimension differs at site " + std::to_string(s));
    d.push_back(in_a ? a.dim_of(s) : b.dim_of(s));
  }
  return TensorLayout(u, std::move(d));
}

template <typename Scalar>
Observable<Scalar>::Observable(TensorLayout layout, Matrix<Scalar> m)
    : layout_(std::move(layout)), matrix_(std::move(m)) {
  const Index n = layout_.dim();
  if (n > kDimensionCap) throw Error(ErrorCode::DimensionCap, "dimension " + std::to_string(n));
  if (matrix_.rows() != n || matrix_.cols() != n)
    throw Error(ErrorCode::DimensionMismatch, "matrix does not match the support dimension");
  hermitian_ = hermitian_deviation<Scalar>(matrix_) <= 1e-12 * std::max(1.0, matrix_.cwiseAbs().maxCoeff());
}

template <typename Scalar>
Observable<Scalar> Observable<Scalar>::identity(const TensorLayout& layout) {
  return Observable(layout, Matrix<Scalar>::Identity(layout.dim(), layout.dim()));
}

template <typename Scalar>
Observable<Scalar> Observable<Scalar>::zero(const TensorLayout& layout) {
  return Observable(layout, Matrix<Scalar>::Zero(layout.dim(), layout.dim()));
}

template <typename Scalar>
double Observable<Scalar>::norm() const {
  return op_norm<Scalar>(matrix_, hermitian_);
}

template <typename Scalar>
Observable<Scalar>& Observable<Scalar>::operator+=(const Observable& o) {
  if (!(o.layout_ == layout_)) return *this = embed(*this, merge(layout_, o.layout_)) += embed(o, merge(layout_, o.layout_));
  matrix_ += o.matrix_;
  hermitian_ = hermitian_ && o.hermitian_;
  return *this;
}

template <typename Scalar>
Observable<Scalar>& Observable<Scalar>::operator-=(const Observable& o) {
  if (!(o.layout_ == layout_)) return *this = embed(*this, merge(layout_, o.layout_)) -= embed(o, merge(layout_, o.layout_));
  matrix_ -= o.matrix_;
  hermitian_ = hermitian_ && o.hermitian_;
  return *this;
}

template <typename Scalar>
Observable<Scalar> operator*(const Observable<Scalar>& a, const Observable<Scalar>& b) {
  if (a.layout() == b.layout()) return Observable<Scalar>(a.layout(), a.matrix() * b.matrix());
  const TensorLayout u = merge(a.layout(), b.layout());
  return Observable<Scalar>(u, embed(a, u).matrix() * embed(b, u).matrix());
}

template <typename Scalar>
Observable<Scalar> operator*(Scalar c, const Observable<Scalar>& a) {
  return Observable<Scalar>(a.layout(), c * a.matrix());
}

template <typename Scalar>
Observable<cplx> to_complex(const Observable<Scalar>& a) {
  return Observable<cplx>(a.layout(), a.matrix().template cast<cplx>());
}

template <typename Scalar>
void save_binary(const Observable<Scalar>& a, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  const std::int64_t n = a.dim();
  out.write(reinterpret_cast<const char*>(&n), sizeof n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const cplx z(a.matrix()(i, j));
      const double parts[2] = {z.real(), z.imag()};
      out.write(reinterpret_cast<const char*>(parts), sizeof parts);
    }
}

template <typename Scalar>
StateVector<Scalar>::StateVector(TensorLayout layout, Vector<Scalar> amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != layout_.dim())
    throw Error(ErrorCode::DimensionMismatch, "state length does not match the volume");
  if (std::abs(amplitudes_.norm() - 1.0) > 1e-12)
    throw Error(ErrorCode::DimensionMismatch, "state is not normalized");
}

std::vector<Index> BipartitionMap::inverse() const {
  std::vector<Index> inv(perm.size());
  for (size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = Index(i);
  return inv;
}

template <typename Scalar>
Matrix<Scalar> BipartitionMap::to_product_basis(const Matrix<Scalar>& a) const {
  const Index n = Index(perm.size());
  Matrix<Scalar> out(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) out(perm[i], perm[j]) = a(i, j);
  return out;
}

template <typename Scalar>
Matrix<Scalar> BipartitionMap::from_product_basis(const Matrix<Scalar>& a) const {
  const Index n = Index(perm.size());
  Matrix<Scalar> out(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) out(i, j) = a(perm[i], perm[j]);
  return out;
}

template <typename Scalar>
Matrix<Scalar> BipartitionMap::reshape(const Vector<Scalar>& v) const {
  Matrix<Scalar> m(d_cut, d_rest);
  for (Index i = 0; i < Index(perm.size()); ++i) m(cut_index(i), rest_index(i)) = v(i);
  return m;
}

BipartitionMap bipartition(const TensorLayout& volume, const Region& x) {
  if (x.empty() || !x.subset_of(volume.region) || x == volume.region)
    throw Error(ErrorCode::DegenerateCut, "cut must be a proper nonempty subregion of the volume");
  const SplitIndex si = split_index(volume, x);
  BipartitionMap map;
  map.cut = x;
  map.rest = minus(volume.region, x);
  map.d_cut = si.d_sub;
  map.d_rest = si.d_rest;
  map.perm.resize(si.sub.size());
  for (size_t i = 0; i < si.sub.size(); ++i) map.perm[i] = si.sub[i] * si.d_rest + si.rest[i];
  return map;
}

template <typename Scalar>
void embed_add(Matrix<Scalar>& target, const TensorLayout& volume, const TensorLayout& local,
               const Matrix<Scalar>& m, Scalar coeff) {
  require_subset(local, volume);
  const SplitIndex si = split_index(volume, local.region);
  const Index n = volume.dim();
  for (Index j = 0; j < n; ++j) {
    const Index sj = si.sub[j], r = si.rest[j];
    for (Index s = 0; s < si.d_sub; ++s) target(si.at(s, r), j) += coeff * m(s, sj);
  }
}

template <typename Scalar>
Observable<Scalar> embed(const Observable<Scalar>& a, const TensorLayout& volume) {
  if (a.layout() == volume) return a;
  Matrix<Scalar> out = Matrix<Scalar>::Zero(volume.dim(), volume.dim());
  embed_add<Scalar>(out, volume, a.layout(), a.matrix());
  return Observable<Scalar>(volume, std::move(out));
}

template <typename Scalar>
Vector<Scalar> apply(const Observable<Scalar>& a, const Vector<Scalar>& v, const TensorLayout& volume) {
  if (a.layout() == volume) return a.matrix() * v;
  require_subset(a.layout(), volume);
  const SplitIndex si = split_index(volume, a.support());
  Matrix<Scalar> m(si.d_sub, si.d_rest);
  for (Index r = 0; r < si.d_rest; ++r)
    for (Index s = 0; s < si.d_sub; ++s) m(s, r) = v(si.at(s, r));
  const Matrix<Scalar> am = a.matrix() * m;
  Vector<Scalar> out(v.size());
  for (Index r = 0; r < si.d_rest; ++r)
    for (Index s = 0; s < si.d_sub; ++s) out(si.at(s, r)) = am(s, r);
  return out;
}

template <typename Scalar>
Observable<Scalar> tensor(const Observable<Scalar>& a, const Observable<Scalar>& b) {
  if (a.support().intersects(b.support()))
    throw Error(ErrorCode::BadGeometry, "tensor product needs disjoint supports");
  const TensorLayout u = merge(a.layout(), b.layout());
  const SplitIndex si = split_index(u, a.support());
  const Index n = u.dim();
  Matrix<Scalar> out(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < n; ++i) out(i, j) = a.matrix()(si.sub[i], si.sub[j]) * b.matrix()(si.rest[i], si.rest[j]);
  return Observable<Scalar>(u, std::move(out));
}

template <typename Scalar>
CommutatorNorms norm_commutator(const Observable<Scalar>& a, const Observable<Scalar>& b) {
  const TensorLayout u = merge(a.layout(), b.layout());
  const Matrix<Scalar> ea = embed(a, u).matrix(), eb = embed(b, u).matrix();
  const Matrix<Scalar> c = ea * eb - eb * ea;
  CommutatorNorms out;
  if constexpr (is_complex_v<Scalar>) {
    const bool herm = a.hermitian() && b.hermitian();
    out.commutator = herm ? op_norm<cplx>(cplx(0, 1) * c, true) : op_norm<cplx>(c, false);
  } else {
    out.commutator = op_norm<Scalar>(c, false);
  }
  out.norm_a = a.norm();
  out.norm_b = b.norm();
  return out;
}

template <typename Scalar>
Observable<Scalar> reduce(const Observable<Scalar>& a, const Region& x) {
  const Region keep = intersect(x, a.support());
  const SplitIndex si = split_index(a.layout(), keep);
  Matrix<Scalar> out = Matrix<Scalar>::Zero(si.d_sub, si.d_sub);
  for (Index t = 0; t < si.d_sub; ++t)
    for (Index s = 0; s < si.d_sub; ++s) {
      Scalar acc(0);
      for (Index r = 0; r < si.d_rest; ++r) acc += a.matrix()(si.at(s, r), si.at(t, r));
      out(s, t) = acc / double(si.d_rest);
    }
  return Observable<Scalar>(a.layout().restrict_to(keep), std::move(out));
}

template <typename Scalar>
Observable<Scalar> cond_expect(const Observable<Scalar>& a, const Region& x) {
  return embed(reduce(a, x), a.layout());
}

template <typename Scalar>
Observable<Scalar> twirl(const Observable<Scalar>& a, const Region& x) {
  return embed(reduce(a, minus(a.support(), x)), a.layout());
}

template <typename Scalar>
Observable<cplx> twirl_weyl(const Observable<Scalar>& a, const Region& x) {
  const TensorLayout& vol = a.layout();
  const Region xs = intersect(x, a.support());
  const Index n = vol.dim();
  const int nsites = vol.region.size();
  // digits of every basis index
  std::vector<std::vector<int>> digits(n, std::vector<int>(nsites));
  std::vector<Index> stride(nsites);
  {
    Index acc = 1;
    for (int k = nsites - 1; k >= 0; --k) {
      stride[k] = acc;
      acc *= vol.dims[k];
    }
    for (Index i = 0; i < n; ++i)
      for (int k = 0; k < nsites; ++k) digits[i][k] = int((i / stride[k]) % vol.dims[k]);
  }
  std::vector<int> pos;
  for (int k = 0; k < nsites; ++k)
    if (xs.contains(vol.region[k])) pos.push_back(k);
  // group element: shift a_k and clock b_k for every site of x
  std::vector<int> shift(pos.size(), 0), clock(pos.size(), 0);
  const Matrix<cplx> am = a.matrix().template cast<cplx>();
  Matrix<cplx> sum = Matrix<cplx>::Zero(n, n);
  std::vector<Index> perm(n);
  std::vector<cplx> phase(n);
  Index order = 0;
  for (;;) {
    for (Index i = 0; i < n; ++i) {
      Index target = i;
      double angle = 0.0;
      for (size_t p = 0; p < pos.size(); ++p) {
        const int k = pos[p], d = vol.dims[k], s = digits[i][k];
        angle += 2.0 * std::numbers::pi * clock[p] * s / d;
        target += Index(((s + shift[p]) % d) - s) * stride[k];
      }
      perm[i] = target;
      phase[i] = std::polar(1.0, angle);
    }
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) sum(i, j) += std::conj(phase[i]) * phase[j] * am(perm[i], perm[j]);
    ++order;
    size_t p = 0;
    for (; p < pos.size(); ++p) {
      const int d = vol.dims[pos[p]];
      if (++shift[p] < d) break;
      shift[p] = 0;
      if (++clock[p] < d) break;
      clock[p] = 0;
    }
    if (p == pos.size()) break;
  }
  return Observable<cplx>(vol, sum / double(order));
}

#define HLAB_INSTANTIATE(S)                                                                          \
  template class Observable<S>;                                                                      \
  template class StateVector<S>;                                                                     \
  template Observable<S> operator*(const Observable<S>&, const Observable<S>&);                      \
  template Observable<S> operator*(S, const Observable<S>&);                                         \
  template Observable<cplx> to_complex<S>(const Observable<S>&);                                     \
  template void save_binary<S>(const Observable<S>&, const std::string&);                            \
  template Matrix<S> BipartitionMap::to_product_basis<S>(const Matrix<S>&) const;                    \
  template Matrix<S> BipartitionMap::from_product_basis<S>(const Matrix<S>&) const;                  \
  template Matrix<S> BipartitionMap::reshape<S>(const Vector<S>&) const;                             \
  template void embed_add<S>(Matrix<S>&, const TensorLayout&, const TensorLayout&, const Matrix<S>&, S); \
  template Observable<S> embed<S>(const Observable<S>&, const TensorLayout&);                        \
  template Vector<S> apply<S>(const Observable<S>&, const Vector<S>&, const TensorLayout&);           \
  template Observable<S> tensor<S>(const Observable<S>&, const Observable<S>&);                      \
  template CommutatorNorms norm_commutator<S>(const Observable<S>&, const Observable<S>&);           \
  template Observable<S> reduce<S>(const Observable<S>&, const Region&);                             \
  template Observable<S> cond_expect<S>(const Observable<S>&, const Region&);                        \
  template Observable<S> twirl<S>(const Observable<S>&, const Region&);                              \
  template Observable<cplx> twirl_weyl<S>(const Observable<S>&, const Region&);

HLAB_INSTANTIATE(double)
HLAB_INSTANTIATE(cplx)

}  // namespace hlab
