#include "tto/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace tto {

void QuadratureConfig::validate() const {
  if (!std::has_single_bit(initial_points) || !std::has_single_bit(max_points))
    fail(ErrorCode::kInvalidArgument, "quadrature grid sizes must be powers of two");
  if (initial_points > max_points) fail(ErrorCode::kInvalidArgument, "quadrature initial_points exceeds max_points");
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) fail(ErrorCode::kInvalidArgument, "quadrature tolerances must be positive");
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

namespace {

bool finite(std::span<const cplx> v) {
  return std::all_of(v.begin(), v.end(), [](cplx x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

[[noreturn]] void report_non_finite(std::size_t dim, const ChunkKernel& kernel, std::span<const double> angles) {
  std::vector<cplx> probe(dim);
  for (double a : angles) {
    std::fill(probe.begin(), probe.end(), cplx{});
    kernel(std::span<const double>(&a, 1), probe);
    if (!finite(probe)) {
      std::ostringstream os;
      os.precision(17);
      os << "non-finite integrand sample at angle " << a;
      fail(ErrorCode::kNonFinite, os.str());
    }
  }
  fail(ErrorCode::kNonFinite, "non-finite integrand sum");
}

// Sum of the integrand over angles 2 pi (offset + stride k) / total, k < count.
std::vector<cplx> level_sum(std::size_t dim, const ChunkKernel& kernel, std::size_t total, std::size_t offset,
                            std::size_t stride, std::size_t count) {
  const std::size_t chunk = std::max<std::size_t>(256, count / 64);
  const std::size_t chunks = (count + chunk - 1) / chunk;
  std::vector<std::vector<cplx>> partial(chunks, std::vector<cplx>(dim));

  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = c * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    std::vector<double> angles(end - begin);
    for (std::size_t k = begin; k < end; ++k)
      angles[k - begin] = kTwoPi * static_cast<double>(offset + stride * k) / static_cast<double>(total);
    kernel(angles, partial[c]);
    if (!finite(partial[c])) report_non_finite(dim, kernel, angles);
  });

  for (std::size_t width = 1; width < chunks; width *= 2)
    for (std::size_t c = 0; c + width < chunks; c += 2 * width)
      for (std::size_t k = 0; k < dim; ++k) partial[c][k] += partial[c + width][k];
  return std::move(partial.front());
}

}  // namespace

VectorIntegral integrate_circle_vector(std::size_t dim, const ChunkKernel& kernel, const QuadratureConfig& cfg,
                                       std::size_t min_points) {
  cfg.validate();
  std::size_t m = std::bit_ceil(std::max(cfg.initial_points, std::max<std::size_t>(min_points, 1)));
  m = std::min(m, std::max(cfg.initial_points, cfg.max_points / 2));

  std::vector<cplx> sum = level_sum(dim, kernel, m, 0, 1, m);
  VectorIntegral out;
  out.values.resize(dim);
  for (std::size_t k = 0; k < dim; ++k) out.values[k] = sum[k] / static_cast<double>(m);
  out.points_used = m;
  out.estimated_error = std::numeric_limits<double>::infinity();

  while (m < cfg.max_points) {
    const auto odd = level_sum(dim, kernel, 2 * m, 1, 2, m);
    m *= 2;
    double change = 0.0, scale = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      sum[k] += odd[k];
      const cplx next = sum[k] / static_cast<double>(m);
      change = std::max(change, std::abs(next - out.values[k]));
      scale = std::max(scale, std::abs(next));
      out.values[k] = next;
    }
    out.points_used = m;
    out.estimated_error = change;
    if (change <= std::max(cfg.abs_tol, cfg.rel_tol * scale)) {
      out.converged = true;
      break;
    }
  }
  return out;
}

IntegralResult integrate_circle(const Sampler& f, const QuadratureConfig& cfg, std::size_t min_points) {
  const ChunkKernel kernel = [&f](std::span<const double> angles, std::span<cplx> accum) {
    cplx s{};
    for (double a : angles) {
      const cplx v = f(CirclePoint(a));
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        std::ostringstream os;
        os.precision(17);
        os << "non-finite integrand sample at angle " << a;
        fail(ErrorCode::kNonFinite, os.str());
      }
      s += v;
    }
    accum[0] += s;
  };
  const auto r = integrate_circle_vector(1, kernel, cfg, min_points);
  return {r.values[0], r.estimated_error, r.points_used, r.converged};
}

double weighted_l2_norm(const Sampler& f, const FiniteBlaschke& b, const QuadratureConfig& cfg) {
  const auto r = integrate_circle(
      [&](const CirclePoint& z) { return cplx{std::norm(f(z)) * nu_density(b, z)}; }, cfg, b.resolving_points());
  return std::sqrt(std::max(0.0, r.value.real()));
}

cplx poisson_integral(const Sampler& f, cplx lambda, const QuadratureConfig& cfg) {
  const double r = std::abs(lambda);
  if (!(r < 1.0)) fail(ErrorCode::kDomain, "poisson_integral needs |lambda| < 1");
  const double weight = (1.0 - r) * (1.0 + r);
  const auto min_points = static_cast<std::size_t>(std::min(8.0 * (1.0 + r) / (1.0 - r), 0x1.0p40));
  return integrate_circle([&](const CirclePoint& z) { return f(z) * (weight / std::norm(z.value() - lambda)); }, cfg,
                          min_points)
      .value;
}

}  // namespace tto
