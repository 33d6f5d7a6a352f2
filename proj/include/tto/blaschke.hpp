#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tto/common.hpp"

namespace tto {

/// Smallest radius defect 1 - |lambda| allowed for zeros of a materialized
/// Blaschke product. Angular diagnostics work on the exact sequence instead.
inline constexpr double kMinRadiusDefect = 1e-6;

enum class GeneratorKind {
  kUniformZero,
  kConstantModulus,
  kAlternating3k,
  kFrostmanFast,
  kDenseNonBlaschke,
  kExplicit,
};

enum class PhaseRule {
  kRotation,  // psi_j = 2 pi frac(j * gamma)
  kRandom,    // psi_j uniform from a seeded mt19937_64
};

std::string to_string(GeneratorKind kind);
std::optional<GeneratorKind> generator_from_string(const std::string& tag);
std::string valid_generator_tags();  // "uniform_zero, constant_modulus, ..."
std::string to_string(PhaseRule rule);
std::optional<PhaseRule> phase_rule_from_string(const std::string& tag);

/// Polar description of lambda_j with the radius defect kept exactly:
/// lambda_j = (1 - defect) e^{i phase}; defect == 1 encodes lambda_j = 0.
struct ZeroPoint {
  double defect = 1.0;
  double phase = 0.0;

  cplx value() const { return (1.0 - defect) * unit(phase); }
};

/// Rule-generated zero sequence with lambda_0 = 0.
struct ZeroSequence {
  GeneratorKind kind = GeneratorKind::kUniformZero;
  double modulus = 0.5;        // constant_modulus r; alternating_3k lambda
  PhaseRule phase_rule = PhaseRule::kRotation;
  double gamma = 0.6180339887; // rotation number for kRotation and dense_nonblaschke
  std::uint64_t seed = 1;
  std::vector<cplx> points;    // kExplicit

  static ZeroSequence uniform_zero();
  static ZeroSequence constant_modulus(double r, PhaseRule rule = PhaseRule::kRotation, std::uint64_t seed = 1);
  static ZeroSequence alternating_3k(double lambda);
  static ZeroSequence frostman_fast(PhaseRule rule = PhaseRule::kRotation, std::uint64_t seed = 1);
  static ZeroSequence dense_nonblaschke(double gamma = 0.6180339887);
  static ZeroSequence explicit_points(std::vector<cplx> pts);

  /// Throws kInvalidArgument / kDomain on bad parameters.
  void validate() const;

  /// First `count` points in exact polar form (no clamping).
  std::vector<ZeroPoint> polar_prefix(std::size_t count) const;
};

/// lambda_0, ..., lambda_{count-1}; radii clamped to 1 - kMinRadiusDefect.
std::vector<cplx> generate_zeros(const ZeroSequence& seq, std::size_t count);

/// Finite Blaschke product B(w) = prod_j u_j (w - lambda_j) / (1 - conj(lambda_j) w)
/// with u_j = conj(lambda_j)/|lambda_j| (u_j = 1 for lambda_j = 0).
class FiniteBlaschke {
 public:
  explicit FiniteBlaschke(std::vector<cplx> zeros);

  std::size_t degree() const { return zeros_.size(); }
  std::span<const cplx> zeros() const { return zeros_; }
  const cplx& zero(std::size_t j) const { return zeros_[j]; }
  double max_modulus() const { return max_modulus_; }
  bool vanishes_at_origin() const;

  cplx operator()(cplx w) const;
  cplx factor(std::size_t j, cplx w) const;

  /// |B'(zeta)| = sum_j (1 - |lambda_j|^2) / |zeta - lambda_j|^2.
  double abs_derivative(double angle) const;
  double abs_derivative(const CirclePoint& z) const { return abs_derivative(z.angle()); }

  /// Continuous argument of B(e^{i theta}); increases by 2 pi N over a full turn.
  double unwrapped_phase(double angle) const;

  /// All N basis values B_j(w) k^_{lambda_j}(w) written into `out`.
  void basis_values(cplx w, std::span<cplx> out) const;
  std::vector<cplx> basis_values(cplx w) const;

  /// Initial trapezoid size resolving every kernel peak and polynomial degree
  /// `extra_degree`; a power of two.
  std::size_t resolving_points(std::size_t extra_degree = 0) const;

 private:
  std::vector<cplx> zeros_;
  std::vector<cplx> unimodular_;
  std::vector<double> radius_;
  std::vector<double> direction_;
  std::vector<double> weight_;  // 1 - |lambda|^2
  double max_modulus_ = 0.0;
};

cplx eval_blaschke(const FiniteBlaschke& b, cplx w);
double abs_derivative_boundary(const FiniteBlaschke& b, const CirclePoint& z);
double nu_density(const FiniteBlaschke& b, const CirclePoint& z);
double beta_density(const FiniteBlaschke& b, const CirclePoint& z);

cplx szego_kernel(cplx lambda, cplx w);
cplx normalized_szego_kernel(cplx lambda, cplx w);

/// k^B_lambda(w) = (1 - conj(B(lambda)) B(w)) / (1 - conj(lambda) w), for lambda in the
/// closed disk. The removable point w = lambda on the circle evaluates to |B'(lambda)|.
cplx model_kernel(const FiniteBlaschke& b, cplx lambda, cplx w);
/// Kernel normalized in L^2; for lambda on the circle the norm is sqrt|B'(lambda)|.
cplx normalized_model_kernel(const FiniteBlaschke& b, cplx lambda, cplx w);

cplx tmw_basis_eval(const FiniteBlaschke& b, std::size_t j, const CirclePoint& z);

struct AngularDiagnostics {
  std::vector<CirclePoint> grid;
  std::vector<std::size_t> checkpoints;              // term counts J at which sums are kept
  std::vector<std::vector<double>> partial_sums;     // [grid point][checkpoint]
  std::vector<double> thresholds;
  std::vector<std::vector<std::optional<std::size_t>>> first_crossing;  // [grid point][threshold]

  double final_sum(std::size_t point) const { return partial_sums[point].back(); }
  /// Fraction of grid points whose sum at the last checkpoint is below `bound`.
  double fraction_below(double bound) const;
};

/// Running sums of sum_{j<J} (1 - |lambda_j|^2)/|zeta - lambda_j|^2 using the exact
/// (unclamped) sequence. Checkpoints are powers of two up to J, plus J.
AngularDiagnostics angular_partial_sums(const ZeroSequence& seq, std::span<const CirclePoint> grid, std::size_t terms,
                                        std::span<const double> thresholds = {});

std::vector<CirclePoint> equispaced_grid(std::size_t count, double offset = 0.0);

}  // namespace tto
