#include "hlab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#ifdef HLAB_HAVE_LAPACKE
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>
#endif

namespace hlab {

namespace {

constexpr Index kDenseNormLimit = 512;
constexpr Index kLapackMinDim = 48;

#ifdef HLAB_HAVE_LAPACKE
lapack_int syevd(char jobz, Index n, double* a, double* w) {
  return LAPACKE_dsyevd(LAPACK_COL_MAJOR, jobz, 'L', lapack_int(n), a, lapack_int(n), w);
}
lapack_int syevd(char jobz, Index n, cplx* a, double* w) {
  return LAPACKE_zheevd(LAPACK_COL_MAJOR, jobz, 'L', lapack_int(n), a, lapack_int(n), w);
}
#endif

template <typename Scalar>
double real_part(const Scalar& z) {
  return std::real(z);
}

}  // namespace

template <typename Scalar>
EigenDecomposition<Scalar> hermitian_eig(const Matrix<Scalar>& h) {
  EigenDecomposition<Scalar> out;
  const Index n = h.rows();
#ifdef HLAB_HAVE_LAPACKE
  if (n >= kLapackMinDim) {
    out.vectors = h;
    out.values.resize(n);
    if (syevd('V', n, out.vectors.data(), out.values.data()) != 0)
      throw Error(ErrorCode::NotHermitian, "eigensolver failed to converge");
    return out;
  }
#endif
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(h);
  if (es.info() != Eigen::Success) throw Error(ErrorCode::NotHermitian, "eigensolver failed to converge");
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  return out;
}

template <typename Scalar>
RealVector hermitian_eigvals(const Matrix<Scalar>& h) {
  const Index n = h.rows();
#ifdef HLAB_HAVE_LAPACKE
  if (n >= kLapackMinDim) {
    Matrix<Scalar> work = h;
    RealVector w(n);
    if (syevd('N', n, work.data(), w.data()) != 0)
      throw Error(ErrorCode::NotHermitian, "eigensolver failed to converge");
    return w;
  }
#endif
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

template <typename Scalar>
double op_norm(const Matrix<Scalar>& a, bool hermitian) {
  const Index n = a.rows();
  if (n == 0) return 0.0;
  if (hermitian && n <= 4 * kDenseNormLimit) {
    const RealVector w = hermitian_eigvals<Scalar>(a);
    return std::max(std::abs(w(0)), std::abs(w(n - 1)));
  }
  if (n <= kDenseNormLimit && a.cols() <= kDenseNormLimit) {
    Eigen::BDCSVD<Matrix<Scalar>> svd(a);
    return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  }
  LinearMap<Scalar> fwd = [&a](const Vector<Scalar>& v) -> Vector<Scalar> { return a * v; };
  LinearMap<Scalar> adj = [&a](const Vector<Scalar>& v) -> Vector<Scalar> { return a.adjoint() * v; };
  return lanczos_norm<Scalar>(n, fwd, adj, hermitian);
}

template <typename Scalar>
double lanczos_norm(Index n, const LinearMap<Scalar>& apply, const LinearMap<Scalar>& apply_adjoint,
                    bool hermitian, double rel_tol) {
  if (n == 0) return 0.0;
  auto op = [&](const Vector<Scalar>& v) -> Vector<Scalar> {
    return hermitian ? apply(v) : apply_adjoint(apply(v));
  };
  const Index max_steps = std::min<Index>(n, 600);
  Rng rng(0x5eed);
  Matrix<Scalar> q(n, max_steps);
  q.col(0) = random_unit_vector<Scalar>(n, rng);
  std::vector<double> alpha, beta;
  double theta = 0.0;
  for (Index j = 0; j < max_steps; ++j) {
    Vector<Scalar> w = op(q.col(j));
    const double a = real_part(q.col(j).dot(w));
    alpha.push_back(a);
    for (int pass = 0; pass < 2; ++pass) {
      const auto basis = q.leftCols(j + 1);
      w -= basis * (basis.adjoint() * w);
    }
    const double b = w.norm();
    const Index m = j + 1;
    RealMatrix t = RealMatrix::Zero(m, m);
    for (Index i = 0; i < m; ++i) {
      t(i, i) = alpha[i];
      if (i + 1 < m) t(i, i + 1) = t(i + 1, i) = beta[i];
    }
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(t);
    const RealVector& vals = es.eigenvalues();
    Index top = m - 1;
    if (hermitian && std::abs(vals(0)) > std::abs(vals(m - 1))) top = 0;
    theta = std::abs(vals(top));
    const double residual = b * std::abs(es.eigenvectors()(m - 1, top));
    const double scale = std::max(theta, std::numeric_limits<double>::min());
    if (b <= 1e-14 * std::max(1.0, theta) || residual <= rel_tol * scale || m == max_steps) break;
    beta.push_back(b);
    q.col(j + 1) = w / b;
  }
  return hermitian ? theta : std::sqrt(theta);
}

template <typename Scalar>
Matrix<cplx> conjugate_by(const Matrix<Scalar>& v, const Matrix<cplx>& c) {
  if constexpr (is_complex_v<Scalar>) {
    return v * c * v.adjoint();
  } else {
    const RealMatrix re = v * c.real() * v.transpose();
    const RealMatrix im = v * c.imag() * v.transpose();
    Matrix<cplx> out(v.rows(), v.rows());
    out.real() = re;
    out.imag() = im;
    return out;
  }
}

template <typename Scalar>
Matrix<Scalar> spectral_function(const Matrix<Scalar>& v, const RealVector& w) {
  Matrix<Scalar> scaled = v * w.asDiagonal();
  return scaled * v.adjoint();
}

template <typename Scalar>
Matrix<Scalar> random_gaussian(Index rows, Index cols, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix<Scalar> m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) {
      if constexpr (is_complex_v<Scalar>) {
        const double re = g(rng);
        const double im = g(rng);
        m(i, j) = Scalar(re, im);
      } else {
        m(i, j) = g(rng);
      }
    }
  return m;
}

template <typename Scalar>
Matrix<Scalar> random_hermitian(Index n, Rng& rng) {
  const Matrix<Scalar> g = random_gaussian<Scalar>(n, n, rng);
  return (g + g.adjoint()) / 2.0;
}

Matrix<cplx> haar_unitary(Index n, Rng& rng) {
  const Matrix<cplx> g = random_gaussian<cplx>(n, n, rng);
  Eigen::HouseholderQR<Matrix<cplx>> qr(g);
  Matrix<cplx> q = qr.householderQ();
  const Matrix<cplx> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Index k = 0; k < n; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

template <typename Scalar>
Vector<Scalar> random_unit_vector(Index n, Rng& rng) {
  Vector<Scalar> v = random_gaussian<Scalar>(n, 1, rng);
  return v / v.norm();
}

template <typename Scalar>
Matrix<Scalar> kron(const Matrix<Scalar>& a, const Matrix<Scalar>& b) {
  Matrix<Scalar> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

#define HLAB_INSTANTIATE(S)                                                                      \
  template EigenDecomposition<S> hermitian_eig<S>(const Matrix<S>&);                             \
  template RealVector hermitian_eigvals<S>(const Matrix<S>&);                                    \
  template double op_norm<S>(const Matrix<S>&, bool);                                            \
  template double lanczos_norm<S>(Index, const LinearMap<S>&, const LinearMap<S>&, bool, double); \
  template Matrix<cplx> conjugate_by<S>(const Matrix<S>&, const Matrix<cplx>&);                  \
  template Matrix<S> spectral_function<S>(const Matrix<S>&, const RealVector&);                  \
  template Matrix<S> random_gaussian<S>(Index, Index, Rng&);                                     \
  template Matrix<S> random_hermitian<S>(Index, Rng&);                                           \
  template Vector<S> random_unit_vector<S>(Index, Rng&);                                         \
  template Matrix<S> kron<S>(const Matrix<S>&, const Matrix<S>&);

HLAB_INSTANTIATE(double)
HLAB_INSTANTIATE(cplx)

}  // namespace hlab
