#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace tto {

using cplx = std::complex<double>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

enum class ErrorCode {
  kInvalidArgument = 1,
  kDomain,
  kNonFinite,
  kNotConverged,
  kConfig,
  kIo,
  kAssertion,
  kInternal,
};

/// Library-wide exception; the C API maps `code()` onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

/// Reduce an angle to [0, 2pi).
inline double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

/// A point e^{i angle} of the unit circle, parametrized by its angle in [0, 2pi).
class CirclePoint {
 public:
  CirclePoint() = default;
  explicit CirclePoint(double angle) : angle_(wrap_angle(angle)) {}

  double angle() const { return angle_; }
  cplx value() const { return {std::cos(angle_), std::sin(angle_)}; }

 private:
  double angle_ = 0.0;
};

inline cplx unit(double angle) { return {std::cos(angle), std::sin(angle)}; }

}  // namespace tto
