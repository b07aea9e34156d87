#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <Eigen/Dense>

namespace hlab {

using cplx = std::complex<double>;
using Index = Eigen::Index;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};
template <typename T>
inline constexpr bool is_complex_v = is_complex<T>::value;

/// Largest Hilbert-space dimension any dense routine accepts.
inline constexpr Index kDimensionCap = Index(1) << 13;

enum class ErrorCode {
  EmptyRegion,
  FullVolume,
  SupportNotContained,
  DimensionMismatch,
  DegenerateCut,
  UnknownModel,
  BadCoupling,
  GeometryOverflow,
  NotGapped,
  NotHermitian,
  DimensionCap,
  BadGeometry,
  RangeViolation,
  QuadratureUnstable,
  DefectTooLarge,
  ZeroTrace,
  SupportMismatch,
  BadConstants,
  ConfigInvalid,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hlab
