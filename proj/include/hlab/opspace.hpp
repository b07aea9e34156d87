#pragma once

#include <string>
#include <vector>

#include "hlab/core.hpp"
#include "hlab/geometry.hpp"
#include "hlab/linalg.hpp"

namespace hlab {

/// Sites of a tensor product together with their local dimensions. The first site is the
/// most significant factor of the basis index.
struct TensorLayout {
  Region region;
  std::vector<int> dims;

  TensorLayout() = default;
  TensorLayout(Region r, std::vector<int> d);
  static TensorLayout of(const Lattice& lat, const Region& r);
  static TensorLayout uniform(const Region& r, int d);

  Index dim() const;
  int dim_of(int site) const;
  /// Sub-layout on r, which must lie inside region.
  TensorLayout restrict_to(const Region& r) const;
  friend bool operator==(const TensorLayout&, const TensorLayout&) = default;
};

TensorLayout merge(const TensorLayout& a, const TensorLayout& b);

template <typename Scalar>
class Observable {
 public:
  Observable() = default;
  Observable(TensorLayout layout, Matrix<Scalar> m);

  static Observable identity(const TensorLayout& layout);
  static Observable zero(const TensorLayout& layout);

  const TensorLayout& layout() const { return layout_; }
  const Region& support() const { return layout_.region; }
  const Matrix<Scalar>& matrix() const { return matrix_; }
  Index dim() const { return matrix_.rows(); }
  bool hermitian() const { return hermitian_; }
  double norm() const;

  Observable adjoint() const { return Observable(layout_, matrix_.adjoint()); }
  Observable& operator+=(const Observable& o);
  Observable& operator-=(const Observable& o);

 private:
  TensorLayout layout_;
  Matrix<Scalar> matrix_;
  bool hermitian_ = true;
};

template <typename Scalar>
Observable<Scalar> operator+(Observable<Scalar> a, const Observable<Scalar>& b) { return a += b; }
template <typename Scalar>
Observable<Scalar> operator-(Observable<Scalar> a, const Observable<Scalar>& b) { return a -= b; }
template <typename Scalar>
Observable<Scalar> operator*(const Observable<Scalar>& a, const Observable<Scalar>& b);
template <typename Scalar>
Observable<Scalar> operator*(Scalar c, const Observable<Scalar>& a);

template <typename Scalar>
Observable<cplx> to_complex(const Observable<Scalar>& a);

/// Writes dimension (int64) followed by row-major complex doubles.
template <typename Scalar>
void save_binary(const Observable<Scalar>& a, const std::string& path);

template <typename Scalar>
class StateVector {
 public:
  StateVector() = default;
  StateVector(TensorLayout layout, Vector<Scalar> amplitudes);

  const TensorLayout& layout() const { return layout_; }
  const Region& volume() const { return layout_.region; }
  const Vector<Scalar>& amplitudes() const { return amplitudes_; }

 private:
  TensorLayout layout_;
  Vector<Scalar> amplitudes_;
};

/// Basis reindexing of H_volume as H_cut (x) H_rest: index i maps to perm[i] = cut_index * d_rest + rest_index.
struct BipartitionMap {
  Region cut;
  Region rest;
  Index d_cut = 1;
  Index d_rest = 1;
  std::vector<Index> perm;

  Index cut_index(Index i) const { return perm[i] / d_rest; }
  Index rest_index(Index i) const { return perm[i] % d_rest; }
  std::vector<Index> inverse() const;

  /// Matrix in the (cut, rest) ordering.
  template <typename Scalar>
  Matrix<Scalar> to_product_basis(const Matrix<Scalar>& a) const;
  template <typename Scalar>
  Matrix<Scalar> from_product_basis(const Matrix<Scalar>& a) const;
  /// Amplitude vector reshaped to a d_cut x d_rest matrix.
  template <typename Scalar>
  Matrix<Scalar> reshape(const Vector<Scalar>& v) const;
};

BipartitionMap bipartition(const TensorLayout& volume, const Region& x);

template <typename Scalar>
Observable<Scalar> embed(const Observable<Scalar>& a, const TensorLayout& volume);

/// target += coeff * embed(local), without forming the embedded matrix.
template <typename Scalar>
void embed_add(Matrix<Scalar>& target, const TensorLayout& volume, const TensorLayout& local,
               const Matrix<Scalar>& m, Scalar coeff = Scalar(1));

/// embed(a, volume) * v, computed on the reshaped vector.
template <typename Scalar>
Vector<Scalar> apply(const Observable<Scalar>& a, const Vector<Scalar>& v, const TensorLayout& volume);

/// Operator on the product of two disjoint supports, a (x) b reordered into canonical site order.
template <typename Scalar>
Observable<Scalar> tensor(const Observable<Scalar>& a, const Observable<Scalar>& b);

struct CommutatorNorms {
  double commutator = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
};

template <typename Scalar>
CommutatorNorms norm_commutator(const Observable<Scalar>& a, const Observable<Scalar>& b);

/// Normalized partial trace of a onto x, as an operator supported on x within support(a).
template <typename Scalar>
Observable<Scalar> reduce(const Observable<Scalar>& a, const Region& x);

/// Conditional expectation onto A_x, re-embedded into support(a).
template <typename Scalar>
Observable<Scalar> cond_expect(const Observable<Scalar>& a, const Region& x);

/// Conditional expectation onto the commutant of A_x inside support(a): I_x (x) Tr_x(a)/d_x.
template <typename Scalar>
Observable<Scalar> twirl(const Observable<Scalar>& a, const Region& x);

/// The same map written as the average of U* a U over the Weyl-Heisenberg group on x.
template <typename Scalar>
Observable<cplx> twirl_weyl(const Observable<Scalar>& a, const Region& x);

}  // namespace hlab
