#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace cornersampler {

using cplx = std::complex<double>;
using Vec2 = Eigen::Vector2d;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Error hierarchy. Everything the library throws derives from Error so the
// CLI can map it to a single exit path.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : Error {
  using Error::Error;
};
struct OverflowError : Error {
  using Error::Error;
};
struct InvalidGeometry : Error {
  using Error::Error;
};
struct SingularSystem : Error {
  SingularSystem(const std::string &what, double condition)
      : Error(what), condition_estimate(condition) {}
  double condition_estimate;
};
struct ConfigError : Error {
  using Error::Error;
};

/// Polar angle of a 2-vector in (-pi, pi].
inline double polar_angle(const Vec2 &v) { return std::atan2(v.y(), v.x()); }

/// i^m for any integer m.
inline cplx ipow(int m) {
  switch (((m % 4) + 4) % 4) {
  case 0: return {1.0, 0.0};
  case 1: return {0.0, 1.0};
  case 2: return {-1.0, 0.0};
  default: return {0.0, -1.0};
  }
}

} // namespace cornersampler
