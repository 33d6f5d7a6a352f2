#include "tto/clark.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <sstream>

namespace tto {

PhaseFunction::PhaseFunction(const FiniteBlaschke& b)
    : b_(&b), raw_origin_(b.unwrapped_phase(0.0)), origin_(wrap_angle(raw_origin_)) {}

double ClarkMeasure::total_mass() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.weight;
  return s;
}

double ClarkMeasure::max_weight() const {
  double m = 0.0;
  for (const auto& a : atoms) m = std::max(m, a.weight);
  return m;
}

double ClarkMeasure::residual_floor() const {
  double m = 0.0;
  for (const auto& a : atoms) m = std::max(m, 1.0 / a.weight);
  return kTwoPi * std::numeric_limits<double>::epsilon() * m;
}

namespace {

constexpr int kMaxIterations = 300;

// Solves phase(x) = target on [lo, hi] for the increasing phase, Newton steps
// safeguarded by bisection.
double solve_phase(const PhaseFunction& phase, double target, double lo, double hi) {
  double flo = phase(lo) - target;
  if (flo >= 0.0) return lo;
  double fhi = phase(hi) - target;
  if (fhi <= 0.0) return hi;

  double x = lo + (hi - lo) * (-flo) / (fhi - flo);
  double dx_old = hi - lo, dx = dx_old;
  double f = phase(x) - target;
  double df = phase.derivative(x);
  for (int it = 0; it < kMaxIterations; ++it) {
    if (f == 0.0) return x;
    if (f < 0.0) lo = x; else hi = x;
    const bool newton_leaves = ((x - hi) * df - f) * ((x - lo) * df - f) > 0.0;
    if (newton_leaves || std::abs(2.0 * f) > std::abs(dx_old * df)) {
      dx_old = dx;
      dx = 0.5 * (hi - lo);
      x = lo + dx;
    } else {
      dx_old = dx;
      dx = f / df;
      x -= dx;
    }
    if (std::abs(dx) <= 1e-16 * std::max(1.0, std::abs(x)) || hi - lo <= 4e-16 * std::max(1.0, std::abs(x)))
      return x;
    f = phase(x) - target;
    df = phase.derivative(x);
  }
  std::ostringstream os;
  os.precision(17);
  os << "clark_support: refinement did not converge for phase target " << target << " in bracket [" << lo << ", "
     << hi << "]";
  fail(ErrorCode::kNotConverged, os.str());
}

}  // namespace

std::vector<CirclePoint> clark_support(const FiniteBlaschke& b, cplx alpha) {
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12) fail(ErrorCode::kDomain, "clark_support needs |alpha| = 1");
  const PhaseFunction phase(b);
  const std::size_t n = b.degree();

  // Minimum of |B'| on the circle bounds the distance to the next root from above.
  double min_slope = 0.0;
  for (const auto& z : b.zeros()) {
    const double r = std::abs(z);
    min_slope += (1.0 - r) / (1.0 + r);
  }

  const double base = phase.origin() + wrap_angle(std::arg(alpha) - phase.origin());
  std::vector<CirclePoint> roots;
  roots.reserve(n);
  double lo = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double target = base + kTwoPi * static_cast<double>(k);
    const double gap = target - phase(lo);
    const double hi = std::min(kTwoPi, lo + std::max(gap, 0.0) / min_slope * (1.0 + 1e-12) + 1e-15);
    const double x = solve_phase(phase, target, lo, hi);
    roots.emplace_back(x);
    lo = x;
  }
  std::sort(roots.begin(), roots.end(), [](const CirclePoint& a, const CirclePoint& c) { return a.angle() < c.angle(); });
  return roots;
}

ClarkMeasure clark_measure(const FiniteBlaschke& b, cplx alpha) {
  ClarkMeasure m;
  m.alpha = alpha;
  m.basis_zeros.assign(b.zeros().begin(), b.zeros().end());
  for (const auto& z : clark_support(b, alpha)) {
    m.atoms.push_back({z, 1.0 / b.abs_derivative(z)});
    m.max_residual = std::max(m.max_residual, std::abs(b(z.value()) - alpha));
  }
  return m;
}

double clark_beta_norm(const FiniteBlaschke& b, cplx alpha) { return clark_measure(b, alpha).max_weight(); }

std::vector<cplx> alpha_grid(std::size_t count, double offset) {
  std::vector<cplx> g;
  g.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    g.push_back(unit(kTwoPi * (static_cast<double>(k) + offset) / static_cast<double>(count)));
  return g;
}

DisintegrationResult disintegration_check(const Sampler& f, const FiniteBlaschke& b, std::size_t alpha_count,
                                          const QuadratureConfig& cfg, std::size_t max_alpha_count) {
  if (!std::has_single_bit(alpha_count)) fail(ErrorCode::kInvalidArgument, "alpha_count must be a power of two");
  const auto clark_sum = [&](cplx alpha) {
    cplx s{};
    for (const auto& atom : clark_measure(b, alpha).atoms) s += f(atom.zeta) * atom.weight;
    return s;
  };

  std::size_t count = alpha_count;
  cplx sum{};
  for (const auto& a : alpha_grid(count)) sum += clark_sum(a);
  cplx lhs = sum / static_cast<double>(count);
  bool converged = false;
  while (count < max_alpha_count) {
    // New points of the doubled grid are the odd multiples of pi/count.
    for (const auto& a : alpha_grid(count, 0.5)) sum += clark_sum(a);
    count *= 2;
    const cplx next = sum / static_cast<double>(count);
    const double change = std::abs(next - lhs);
    lhs = next;
    if (change <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(lhs))) {
      converged = true;
      break;
    }
  }

  DisintegrationResult out;
  out.lhs = lhs;
  out.rhs = integrate_circle(f, cfg).value;
  out.gap = std::abs(out.lhs - out.rhs);
  out.alpha_count = count;
  out.converged = converged;
  return out;
}

}  // namespace tto
