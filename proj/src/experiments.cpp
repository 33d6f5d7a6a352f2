#include "tto/experiments.hpp"

#include <algorithm>
#include <random>

#include "tto/clark.hpp"
#include "tto/matrix.hpp"
#include "tto/operators.hpp"

namespace tto {

namespace {

[[noreturn]] void config_error(const std::string& key, const std::string& msg) {
  fail(ErrorCode::kConfig, key + ": " + msg);
}

FiniteBlaschke blaschke_for(const ExperimentConfig& cfg, std::size_t n) {
  return FiniteBlaschke(generate_zeros(cfg.sequence, n));
}

ConvergenceRecord make_record(const FiniteBlaschke& b, cplx lhs, cplx rhs, Diagnostics diag) {
  ConvergenceRecord r;
  r.n = b.degree();
  r.lhs = lhs;
  r.rhs = rhs;
  r.gap = std::abs(lhs - rhs);
  r.diagnostics = std::move(diag);
  r.zeros.assign(b.zeros().begin(), b.zeros().end());
  return r;
}

double flag(bool b) { return b ? 1.0 : 0.0; }

std::size_t composed_degree(const ScalarFunction& f, const Symbol& phi) {
  if (!f.is_polynomial()) return 0;
  return (f.coefficients().size() - 1) * static_cast<std::size_t>(phi.degree());
}

Symbol beta_symbol(const FiniteBlaschke& b) {
  return Symbol::sampled([&b](double a) { return cplx{1.0 / b.abs_derivative(a)}; }, "beta_N");
}

// T(phi) exactly for trig polynomials, by quadrature otherwise.
CMatrix toeplitz_for_berezin(const FiniteBlaschke& b, const Symbol& phi, const QuadratureConfig& q) {
  if (phi.is_trig()) return truncated_toeplitz_algebraic(b, phi).matrix;
  return build_truncated_toeplitz(b, phi, q).matrix;
}

}  // namespace

void ExperimentConfig::validate() const {
  try {
    sequence.validate();
  } catch (const Error& e) {
    config_error("sequence", e.what());
  }
  if (n_values.empty()) config_error("sweep.n_values", "must not be empty");
  for (std::size_t k = 0; k < n_values.size(); ++k) {
    if (n_values[k] == 0) config_error("sweep.n_values", "entries must be positive");
    if (k > 0 && n_values[k] <= n_values[k - 1]) config_error("sweep.n_values", "must be strictly increasing");
  }
  if (sequence.kind == GeneratorKind::kExplicit && n_values.back() > sequence.points.size())
    config_error("sweep.n_values", "exceeds the number of explicit zeros (" +
                                       std::to_string(sequence.points.size()) + ")");
  if (alpha_count == 0) config_error("sweep.alpha_count", "must be positive");
  try {
    quadrature.validate();
  } catch (const Error& e) {
    config_error("quadrature", e.what());
  }
  if (!function.is_polynomial() && !symbol.is_real())
    config_error("function.f", "pointwise function '" + function.name() + "' needs a real-valued symbol, got '" +
                                   symbol.name() + "'");
  if (angular.terms == 0) config_error("angular.terms", "must be positive");
  if (angular.grid_points == 0) config_error("angular.grid_points", "must be positive");
  for (double t : angular.thresholds)
    if (!(t > 0.0)) config_error("angular.thresholds", "entries must be positive");
  if (!lemmas.product_phi.is_trig()) config_error("lemmas.phi", "must be a trigonometric polynomial");
  if (!lemmas.product_psi.is_trig()) config_error("lemmas.psi", "must be a trigonometric polynomial");
  if (lemmas.random_degree < 0) config_error("lemmas.random_degree", "must be nonnegative");
  if (lemmas.pointwise_points == 0) config_error("lemmas.pointwise_points", "must be positive");
  if (alpha_angle && !std::isfinite(*alpha_angle)) config_error("clark.alpha_angle", "must be finite");
  if (output.dir.empty()) config_error("output.dir", "must not be empty");
}

double ConvergenceRecord::diag(const std::string& name) const {
  for (const auto& [k, v] : diagnostics)
    if (k == name) return v;
  fail(ErrorCode::kInvalidArgument, "record has no diagnostic '" + name + "'");
}

double median(std::vector<double> values) {
  if (values.empty()) fail(ErrorCode::kInvalidArgument, "median of an empty list");
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

Symbol random_trig_poly(std::uint64_t seed, std::size_t index, int degree) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), 0x7f4a7c15u};
  std::mt19937_64 rng(seq);
  const auto uniform = [&] { return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0; };
  Symbol::Coefficients c;
  for (int k = -degree; k <= degree; ++k) {
    const double re = uniform();
    c[k] = {re, uniform()};
  }
  return Symbol::trig(std::move(c));
}

std::vector<ConvergenceRecord> szego_gap(const ExperimentConfig& cfg) {
  cfg.validate();
  std::vector<ConvergenceRecord> out;
  for (std::size_t n : cfg.n_values) {
    const auto b = blaschke_for(cfg, n);
    const auto t = build_truncated_toeplitz(b, cfg.symbol, cfg.quadrature);
    const cplx lhs = trace(apply_function(t.matrix, cfg.function)) / static_cast<double>(n);
    const auto rhs = integrate_circle(
        [&](const CirclePoint& z) { return cfg.function(cfg.symbol(z)) * nu_density(b, z); }, cfg.quadrature,
        b.resolving_points(composed_degree(cfg.function, cfg.symbol)));
    const auto moment = integrate_circle([&](const CirclePoint& z) { return z.value() * nu_density(b, z); },
                                         cfg.quadrature, b.resolving_points(1));
    out.push_back(make_record(b, lhs, rhs.value,
                              {{"matrix_points", static_cast<double>(t.quadrature.points_used)},
                               {"matrix_converged", flag(t.quadrature.converged)},
                               {"rhs_points", static_cast<double>(rhs.points_used)},
                               {"rhs_converged", flag(rhs.converged)},
                               {"nu_moment_re", moment.value.real()},
                               {"nu_moment_im", moment.value.imag()}}));
  }
  return out;
}

std::vector<ConvergenceRecord> stz_trace(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto rhs = integrate_circle([&](const CirclePoint& z) { return cfg.function(cfg.symbol(z)); },
                                    cfg.quadrature, 4 * composed_degree(cfg.function, cfg.symbol) + 4);
  std::vector<ConvergenceRecord> out;
  for (std::size_t n : cfg.n_values) {
    const auto b = blaschke_for(cfg, n);
    const auto t_beta = build_truncated_toeplitz(b, beta_symbol(b), cfg.quadrature);
    const auto t_phi = build_truncated_toeplitz(b, cfg.symbol, cfg.quadrature);
    const cplx lhs = trace(t_beta.matrix * apply_function(t_phi.matrix, cfg.function));
    out.push_back(make_record(b, lhs, rhs.value,
                              {{"beta_points", static_cast<double>(t_beta.quadrature.points_used)},
                               {"beta_converged", flag(t_beta.quadrature.converged)},
                               {"matrix_points", static_cast<double>(t_phi.quadrature.points_used)},
                               {"matrix_converged", flag(t_phi.quadrature.converged)},
                               {"rhs_converged", flag(rhs.converged)}}));
  }
  return out;
}

std::vector<ConvergenceRecord> angular_condition_a(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto alphas = alpha_grid(cfg.alpha_count);
  std::vector<ConvergenceRecord> out;
  for (std::size_t n : cfg.n_values) {
    const auto b = blaschke_for(cfg, n);
    std::vector<double> norms(alphas.size());
    parallel_for(alphas.size(), [&](std::size_t k) { norms[k] = clark_beta_norm(b, alphas[k]); });
    const double med = median(norms);
    out.push_back(make_record(b, med, 0.0,
                              {{"beta_max", *std::max_element(norms.begin(), norms.end())},
                               {"beta_median", med},
                               {"beta_min", *std::min_element(norms.begin(), norms.end())},
                               {"alpha_count", static_cast<double>(alphas.size())}}));
  }
  return out;
}

AngularDiagnostics angular_condition_b(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto grid = equispaced_grid(cfg.angular.grid_points);
  return angular_partial_sums(cfg.sequence, grid, cfg.angular.terms, cfg.angular.thresholds);
}

std::vector<ConvergenceRecord> hs_approx_gap(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto alphas = alpha_grid(cfg.alpha_count);
  std::vector<ConvergenceRecord> out;
  for (std::size_t n : cfg.n_values) {
    const auto b = blaschke_for(cfg, n);
    const auto t = build_truncated_toeplitz(b, cfg.symbol, cfg.quadrature);
    std::vector<double> dist(alphas.size());
    parallel_for(alphas.size(), [&](std::size_t k) {
      const auto u = build_clark_spectral(b, clark_measure(b, alphas[k]), cfg.symbol);
      const double d = hs_norm(t.matrix - u.matrix);
      dist[k] = d * d;
    });
    double mean = 0.0;
    for (double d : dist) mean += d;
    mean /= static_cast<double>(alphas.size());
    const double value = mean / static_cast<double>(n);

    const auto phi_sq = integrate_circle(
        [&](const CirclePoint& z) { return std::norm(cfg.symbol(z)) * nu_density(b, z); }, cfg.quadrature,
        b.resolving_points(2 * static_cast<std::size_t>(cfg.symbol.degree())));
    const double hs = hs_norm(t.matrix);
    const double closed = phi_sq.value.real() - hs * hs / static_cast<double>(n);
    out.push_back(make_record(b, value, 0.0,
                              {{"closed_form", closed},
                               {"alpha_count", static_cast<double>(alphas.size())},
                               {"matrix_converged", flag(t.quadrature.converged)}}));
  }
  return out;
}

std::vector<ConvergenceRecord> product_defect_s1(const ExperimentConfig& cfg, const Symbol& phi, const Symbol& psi) {
  cfg.validate();
  if (!phi.is_trig() || !psi.is_trig())
    fail(ErrorCode::kInvalidArgument, "product_defect_s1 needs trigonometric polynomial symbols");
  const Symbol prod = phi * psi;
  std::vector<ConvergenceRecord> out;
  for (std::size_t n : cfg.n_values) {
    const auto b = blaschke_for(cfg, n);
    const auto tp = build_truncated_toeplitz(b, phi, cfg.quadrature);
    const auto tq = build_truncated_toeplitz(b, psi, cfg.quadrature);
    const auto tpq = build_truncated_toeplitz(b, prod, cfg.quadrature);
    const CMatrix defect = tp.matrix * tq.matrix - tpq.matrix;
    const auto sv = singular_values(defect);
    double s1 = 0.0;
    for (double s : sv) s1 += s;
    const bool conv = tp.quadrature.converged && tq.quadrature.converged && tpq.quadrature.converged;
    const cplx tr = trace(defect);
    out.push_back(make_record(b, s1, 0.0,
                              {{"trace_re", tr.real()},
                               {"trace_im", tr.imag()},
                               {"sigma_1", sv.empty() ? 0.0 : sv[0]},
                               {"sigma_2", sv.size() > 1 ? sv[1] : 0.0},
                               {"matrix_converged", flag(conv)}}));
  }
  return out;
}

std::vector<ConvergenceRecord> stz_defect_s1(const ExperimentConfig& cfg) {
  cfg.validate();
  if (!cfg.function.is_polynomial() || !cfg.symbol.is_trig())
    fail(ErrorCode::kInvalidArgument, "stz_defect_s1 needs a polynomial function and a trigonometric polynomial symbol");
  const Symbol composed = compose(cfg.function, cfg.symbol);
  std::vector<ConvergenceRecord> out;
  for (std::size_t n : cfg.n_values) {
    const auto b = blaschke_for(cfg, n);
    const auto t_beta = build_truncated_toeplitz(b, beta_symbol(b), cfg.quadrature);
    const auto t_phi = build_truncated_toeplitz(b, cfg.symbol, cfg.quadrature);
    const auto t_comp = build_truncated_toeplitz(b, composed, cfg.quadrature);
    const CMatrix inner = apply_function(t_phi.matrix, cfg.function) - t_comp.matrix;
    const double value = trace_norm(t_beta.matrix * inner);
    out.push_back(make_record(b, value, 0.0,
                              {{"inner_s1", trace_norm(inner)},
                               {"matrix_converged", flag(t_beta.quadrature.converged && t_phi.quadrature.converged &&
                                                         t_comp.quadrature.converged)}}));
  }
  return out;
}

std::vector<ConvergenceRecord> fejer_suite(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto& q = cfg.quadrature;
  const auto points = equispaced_grid(cfg.lemmas.pointwise_points, 0.5);
  std::vector<ConvergenceRecord> out;
  for (std::size_t n : cfg.n_values) {
    const auto b = blaschke_for(cfg, n);

    // (a) contraction on L^2(nu_N).
    double worst = 0.0;
    for (std::size_t k = 0; k < cfg.lemmas.random_polys; ++k) {
      const Symbol f = random_trig_poly(cfg.seed, k, cfg.lemmas.random_degree);
      const CMatrix t = truncated_toeplitz_algebraic(b, f).matrix;
      const double en = weighted_l2_norm([&](const CirclePoint& z) { return berezin_transform(t, b, z); }, b, q);
      const double fn = weighted_l2_norm([&](const CirclePoint& z) { return f(z); }, b, q);
      if (fn > 0.0) worst = std::max(worst, en / fn);
    }

    // (c) pointwise error and (d) L^2(nu_N) error for the configured symbol.
    const CMatrix t = toeplitz_for_berezin(b, cfg.symbol, q);
    std::vector<double> pointwise;
    double min_derivative = INFINITY;
    for (const auto& z : points) {
      pointwise.push_back(std::abs(berezin_transform(t, b, z) - cfg.symbol(z)));
      min_derivative = std::min(min_derivative, b.abs_derivative(z));
    }
    const double l2 = weighted_l2_norm(
        [&](const CirclePoint& z) { return berezin_transform(t, b, z) - cfg.symbol(z); }, b, q);
    out.push_back(make_record(b, l2, 0.0,
                              {{"contraction_max", worst},
                               {"pointwise_max", *std::max_element(pointwise.begin(), pointwise.end())},
                               {"pointwise_median", median(pointwise)},
                               {"derivative_min", min_derivative},
                               {"scaled_sqrt_n", l2 * std::sqrt(static_cast<double>(n))}}));
  }
  return out;
}

}  // namespace tto
