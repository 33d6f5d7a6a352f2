#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "tto/blaschke.hpp"
#include "tto/common.hpp"

namespace tto {

struct QuadratureConfig {
  std::size_t initial_points = 256;
  std::size_t max_points = std::size_t{1} << 20;
  double abs_tol = 1e-10;
  double rel_tol = 1e-9;

  void validate() const;
};

struct IntegralResult {
  cplx value{};
  double estimated_error = 0.0;
  std::size_t points_used = 0;
  bool converged = false;
};

struct VectorIntegral {
  std::vector<cplx> values;
  double estimated_error = 0.0;
  std::size_t points_used = 0;
  bool converged = false;
};

using Sampler = std::function<cplx(const CirclePoint&)>;

/// Adds sum_{angles} g(e^{i angle}) into `accum` (length = integrand dimension).
/// Must be reentrant: chunks may be evaluated on several threads.
using ChunkKernel = std::function<void(std::span<const double> angles, std::span<cplx> accum)>;

/// Equal-weight periodic rule for a vector-valued integrand against normalized
/// Lebesgue measure. The grid doubles (reusing samples) until the max-abs change
/// between levels is within max(abs_tol, rel_tol * max|value|) or max_points is hit.
/// Chunk partial sums are combined pairwise in a fixed order, so the result is
/// bit-reproducible for a given grid size regardless of thread count.
VectorIntegral integrate_circle_vector(std::size_t dim, const ChunkKernel& kernel, const QuadratureConfig& cfg,
                                       std::size_t min_points = 0);

IntegralResult integrate_circle(const Sampler& f, const QuadratureConfig& cfg, std::size_t min_points = 0);

/// (int |f|^2 d nu_N)^{1/2}.
double weighted_l2_norm(const Sampler& f, const FiniteBlaschke& b, const QuadratureConfig& cfg);

/// int f(zeta) (1 - |lambda|^2)/|zeta - lambda|^2 dm(zeta).
cplx poisson_integral(const Sampler& f, cplx lambda, const QuadratureConfig& cfg);

/// Runs `body(i)` for i in [0, count), spread over hardware threads.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace tto
