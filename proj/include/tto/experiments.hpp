#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tto/blaschke.hpp"
#include "tto/quadrature.hpp"
#include "tto/symbol.hpp"

namespace tto {

struct AngularSettings {
  std::size_t terms = 100000;
  std::size_t grid_points = 64;
  std::vector<double> thresholds{100.0, 1000.0};
};

struct LemmaSettings {
  Symbol product_phi = Symbol::preset("z");
  Symbol product_psi = Symbol::preset("zbar");
  std::size_t random_polys = 20;
  int random_degree = 3;
  std::size_t pointwise_points = 16;
};

struct OutputSettings {
  std::string dir = "results";
  bool csv = true;
  bool json = true;
};

struct ExperimentConfig {
  ZeroSequence sequence;
  Symbol symbol = Symbol::preset("cos");
  ScalarFunction function = ScalarFunction::preset("identity");
  std::vector<std::size_t> n_values{8, 16, 32, 64};
  std::size_t alpha_count = 32;
  std::uint64_t seed = 1;
  QuadratureConfig quadrature;
  AngularSettings angular;
  LemmaSettings lemmas;
  std::optional<double> alpha_angle;  // single Clark parameter e^{i angle} for the clark run
  OutputSettings output;

  /// Throws Error(kConfig) naming the offending key.
  void validate() const;
};

using Diagnostics = std::vector<std::pair<std::string, double>>;

struct ConvergenceRecord {
  std::size_t n = 0;
  cplx lhs{};
  cplx rhs{};
  double gap = 0.0;
  Diagnostics diagnostics;
  std::vector<cplx> zeros;

  /// Throws if `name` is missing.
  double diag(const std::string& name) const;
};

/// (1/N) Tr f(T(phi)) against int f(phi) d nu_N.
std::vector<ConvergenceRecord> szego_gap(const ExperimentConfig& cfg);

/// Tr[T(beta_N) f(T(phi))] against int f(phi) dm.
std::vector<ConvergenceRecord> stz_trace(const ExperimentConfig& cfg);

/// Per N the spread of max_k 1/|B'(zeta_k)| over the alpha grid; lhs holds the median.
std::vector<ConvergenceRecord> angular_condition_a(const ExperimentConfig& cfg);

/// Partial sums of |B'| terms on an equispaced grid of the exact sequence.
AngularDiagnostics angular_condition_b(const ExperimentConfig& cfg);

/// (1/N) mean over alpha of ||T(phi) - phi(U_alpha)||_2^2, with the closed form
/// int |phi|^2 d nu_N - ||T(phi)||_2^2 / N as a diagnostic.
std::vector<ConvergenceRecord> hs_approx_gap(const ExperimentConfig& cfg);

/// ||T(phi) T(psi) - T(phi psi)||_1 per N.
std::vector<ConvergenceRecord> product_defect_s1(const ExperimentConfig& cfg, const Symbol& phi, const Symbol& psi);

/// ||T(beta_N) [f(T(phi)) - T(f o phi)]||_1 per N.
std::vector<ConvergenceRecord> stz_defect_s1(const ExperimentConfig& cfg);

/// Fejer-type operator checks per N: lhs = ||E_N phi - phi|| in L^2(nu_N), with the
/// worst contraction ratio over seeded random trig polynomials and pointwise errors.
std::vector<ConvergenceRecord> fejer_suite(const ExperimentConfig& cfg);

/// Seeded random trig polynomial with coefficients in [-1,1] + i[-1,1] for |k| <= degree.
Symbol random_trig_poly(std::uint64_t seed, std::size_t index, int degree);

/// Median of a non-empty list (mean of the middle pair for even sizes).
double median(std::vector<double> values);

}  // namespace tto
