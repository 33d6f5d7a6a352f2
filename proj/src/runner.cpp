#include "tto/runner.hpp"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <functional>

#include "json.hpp"
#include "tto/clark.hpp"
#include "tto/operators.hpp"
#include "tto/output.hpp"
#include "tto/parse.hpp"

namespace tto {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

const char* status_name(ExitStatus s) {
  switch (s) {
    case ExitStatus::kSuccess: return "ok";
    case ExitStatus::kAssertion: return "assertion_failed";
    case ExitStatus::kConfig: return "config_error";
    case ExitStatus::kRuntime: return "runtime_error";
  }
  return "unknown";
}

class Run {
 public:
  Run(const std::string& sub, const ExperimentConfig& cfg, RunReport& report)
      : sub_(sub), cfg_(cfg), report_(report), dir_(cfg.output.dir) {}

  void write_manifest(const char* status) const {
    ojson j;
    j["tool"] = "tto";
    j["tool_version"] = kToolVersion;
    j["subcommand"] = sub_;
    j["config_hash"] = config_hash(cfg_);
    j["seed"] = cfg_.seed;
    j["timestamp"] = utc_timestamp();
    j["status"] = status;
    j["partial"] = !report_.warnings.empty() || std::string(status) != "ok";
    j["outputs"] = report_.outputs;
    j["failures"] = report_.failures;
    j["warnings"] = report_.warnings;
    if (!report_.error.empty()) j["error"] = report_.error;
    write_atomic(dir_ / "manifest.json", j.dump(2) + "\n");
  }

  void emit(const std::string& name, const std::string& content) {
    write_atomic(dir_ / name, content);
    report_.outputs.push_back(name);
  }

  void emit_records(const std::string& stem, const std::vector<ConvergenceRecord>& records) {
    if (cfg_.output.csv) emit(stem + ".csv", records_to_csv(records));
    if (cfg_.output.json) emit(stem + ".json", records_to_json(records));
    for (const auto& r : records) {
      if (!std::isfinite(r.gap)) check(false, stem + " N=" + std::to_string(r.n) + ": non-finite gap");
      for (const auto& [k, v] : r.diagnostics)
        if (k.ends_with("_converged") && v == 0.0)
          report_.warnings.push_back(stem + " N=" + std::to_string(r.n) + ": " + k.substr(0, k.size() - 10) +
                                     " quadrature stopped at max_points");
    }
  }

  void check(bool ok, const std::string& what) {
    if (!ok) report_.failures.push_back(what);
  }

  void run() {
    if (sub_ == "operator") run_operator();
    else if (sub_ == "clark") run_clark();
    else if (sub_ == "szego") run_szego();
    else if (sub_ == "stz") emit_records("stz", stz_trace(cfg_));
    else if (sub_ == "angular") run_angular();
    else run_lemmas();
    emit("config.ini", canonical_config(cfg_));
  }

 private:
  FiniteBlaschke largest() const { return FiniteBlaschke(generate_zeros(cfg_.sequence, cfg_.n_values.back())); }

  void run_operator() {
    const auto b = largest();
    const auto op = build_truncated_toeplitz(b, cfg_.symbol, cfg_.quadrature);
    if (cfg_.output.json) emit("operator.json", matrix_to_json(op) + "\n");
    if (cfg_.output.csv) emit("operator.csv", matrix_to_csv(op));
    check(all_finite(op.matrix), "operator: non-finite entries");
    if (cfg_.symbol.is_real())
      check(hermitian_defect(op.matrix) < 1e-8, "operator: real symbol but matrix is not self-adjoint");
    if (!op.quadrature.converged) report_.warnings.push_back("operator: quadrature stopped at max_points");
  }

  void run_clark() {
    const auto b = largest();
    std::vector<cplx> alphas = cfg_.alpha_angle ? std::vector<cplx>{unit(*cfg_.alpha_angle)}
                                                : alpha_grid(cfg_.alpha_count);
    std::vector<ClarkMeasure> measures(alphas.size());
    parallel_for(alphas.size(), [&](std::size_t k) { measures[k] = clark_measure(b, alphas[k]); });
    if (cfg_.output.csv) emit("clark.csv", clark_to_csv(measures));
    if (cfg_.output.json) emit("clark.json", clark_to_json(measures));
    for (const auto& m : measures) {
      const std::string tag = "clark alpha=" + format_double(wrap_angle(std::arg(m.alpha)));
      check(m.atoms.size() == b.degree(), tag + ": wrong atom count");
      check(m.max_residual < std::max(1e-10, m.residual_floor()), tag + ": residual " + format_double(m.max_residual));
      if (m.max_residual >= 1e-10 && m.max_residual < m.residual_floor())
        report_.warnings.push_back(tag + ": residual " + format_double(m.max_residual) +
                                   " above 1e-10 but within the double-precision floor " +
                                   format_double(m.residual_floor()));
      if (b.vanishes_at_origin())
        check(std::abs(m.total_mass() - 1.0) <= 1e-8, tag + ": total mass " + format_double(m.total_mass()));
    }
  }

  void run_szego() {
    const auto records = szego_gap(cfg_);
    emit_records("szego", records);
    const auto& c = cfg_.function.coefficients();
    if (cfg_.function.is_polynomial() && c.size() <= 2)
      for (const auto& r : records)
        check(r.gap < 1e-7, "szego N=" + std::to_string(r.n) + ": linear f but gap " + format_double(r.gap));
  }

  void run_angular() {
    emit_records("angular_a", angular_condition_a(cfg_));
    const auto diag = angular_condition_b(cfg_);
    if (cfg_.output.csv) emit("angular_b.csv", angular_to_csv(diag));
    if (cfg_.output.json) emit("angular_b.json", angular_to_json(diag));
    for (std::size_t p = 0; p < diag.grid.size(); ++p)
      check(std::is_sorted(diag.partial_sums[p].begin(), diag.partial_sums[p].end()),
            "angular_b: partial sums decrease at angle " + format_double(diag.grid[p].angle()));
  }

  void run_lemmas() {
    const auto hs = hs_approx_gap(cfg_);
    emit_records("hs_approx", hs);
    for (const auto& r : hs)
      check(r.lhs.real() >= -1e-12, "hs_approx N=" + std::to_string(r.n) + ": negative value");

    const auto& phi = cfg_.lemmas.product_phi;
    const auto& psi = cfg_.lemmas.product_psi;
    const auto prod = product_defect_s1(cfg_, phi, psi);
    emit_records("product_defect", prod);
    const bool rank_one = phi.describe() == "c1=1" && psi.describe() == "c-1=1";
    if (rank_one)
      for (const auto& r : prod)
        check(std::abs(r.lhs.real() - 1.0) <= 1e-7,
              "product_defect N=" + std::to_string(r.n) + ": expected 1, got " + format_double(r.lhs.real()));

    if (cfg_.function.is_polynomial() && cfg_.symbol.is_trig())
      emit_records("stz_defect", stz_defect_s1(cfg_));
    else
      report_.warnings.push_back("stz_defect skipped: needs a polynomial function and a trigonometric symbol");

    const auto fejer = fejer_suite(cfg_);
    emit_records("fejer", fejer);
    for (const auto& r : fejer)
      check(r.diag("contraction_max") <= 1.0 + 1e-6,
            "fejer N=" + std::to_string(r.n) + ": contraction ratio " + format_double(r.diag("contraction_max")));
  }

  const std::string& sub_;
  const ExperimentConfig& cfg_;
  RunReport& report_;
  fs::path dir_;
};

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"operator", "clark", "szego", "stz", "angular", "lemmas"};
  return names;
}

RunReport run_subcommand(const std::string& subcommand, const ConfigDocument& doc) {
  RunReport report;
  const auto& subs = subcommands();
  if (std::find(subs.begin(), subs.end(), subcommand) == subs.end()) {
    report.status = ExitStatus::kConfig;
    report.error = "unknown subcommand '" + subcommand + "'";
    return report;
  }
  ExperimentConfig cfg;
  try {
    cfg = build_config(doc);
  } catch (const Error& e) {
    report.status = ExitStatus::kConfig;
    report.error = e.what();
    return report;
  }
  report.output_dir = cfg.output.dir;

  Run run(subcommand, cfg, report);
  try {
    run.write_manifest("running");
    run.run();
    report.status = report.failures.empty() ? ExitStatus::kSuccess : ExitStatus::kAssertion;
  } catch (const Error& e) {
    const bool config = e.code() == ErrorCode::kConfig || e.code() == ErrorCode::kInvalidArgument;
    report.status = config ? ExitStatus::kConfig : ExitStatus::kRuntime;
    report.error = e.what();
  } catch (const std::exception& e) {
    report.status = ExitStatus::kRuntime;
    report.error = e.what();
  }
  try {
    run.write_manifest(status_name(report.status));
  } catch (const std::exception& e) {
    if (report.status == ExitStatus::kSuccess) report.status = ExitStatus::kRuntime;
    if (report.error.empty()) report.error = e.what();
  }
  return report;
}

}  // namespace tto
