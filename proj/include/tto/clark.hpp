#pragma once

#include <vector>

#include "tto/blaschke.hpp"
#include "tto/quadrature.hpp"

namespace tto {

/// Continuous argument theta -> Theta(theta) of B(e^{i theta}), anchored so that
/// Theta(0) lies in [0, 2 pi). Strictly increasing with derivative |B'(e^{i theta})|.
class PhaseFunction {
 public:
  explicit PhaseFunction(const FiniteBlaschke& b);

  double operator()(double angle) const { return b_->unwrapped_phase(angle) - raw_origin_ + origin_; }
  double derivative(double angle) const { return b_->abs_derivative(angle); }
  double origin() const { return origin_; }
  /// Theta(2 pi) - Theta(0); equals 2 pi N.
  double winding() const { return (*this)(kTwoPi) - origin_; }

 private:
  const FiniteBlaschke* b_;
  double raw_origin_;
  double origin_;
};

struct ClarkAtom {
  CirclePoint zeta;
  double weight = 0.0;  // 1/|B'(zeta)|
};

struct ClarkMeasure {
  cplx alpha{1.0};
  std::vector<ClarkAtom> atoms;   // sorted by angle
  std::vector<cplx> basis_zeros;  // zeros of the B the measure belongs to
  double max_residual = 0.0;      // max_k |B(zeta_k) - alpha|

  double total_mass() const;
  double max_weight() const;
  // Residual reachable with a double angle: one ulp of theta in [0, 2pi) times max|B'|.
  // Above 1e-10 once max|B'| exceeds about 7e4 (frostman_fast from N of roughly 20).
  double residual_floor() const;
};

/// The N solutions of B(zeta) = alpha on the circle, in increasing angle.
std::vector<CirclePoint> clark_support(const FiniteBlaschke& b, cplx alpha);
ClarkMeasure clark_measure(const FiniteBlaschke& b, cplx alpha);

/// max_k 1/|B'(zeta_k)|, the operator norm of beta_N(U_alpha).
double clark_beta_norm(const FiniteBlaschke& b, cplx alpha);

/// e^{2 pi i (k + offset)/count}, k < count.
std::vector<cplx> alpha_grid(std::size_t count, double offset = 0.0);

struct DisintegrationResult {
  cplx lhs{};
  cplx rhs{};
  double gap = 0.0;
  std::size_t alpha_count = 0;
  bool converged = false;
};

/// Average over equispaced alpha of int f d mu_alpha, against int f dm. The alpha
/// grid doubles from `alpha_count` until successive averages agree to the quadrature
/// tolerances or `max_alpha_count` is reached.
DisintegrationResult disintegration_check(const Sampler& f, const FiniteBlaschke& b, std::size_t alpha_count,
                                          const QuadratureConfig& cfg, std::size_t max_alpha_count = 1 << 14);

}  // namespace tto
