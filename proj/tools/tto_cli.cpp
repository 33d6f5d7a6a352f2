// Command-line front end. Everything goes through the C API of libtto.
#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "tto/tto.h"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct Flags {
  std::string config;
  std::string out;
  std::string seed;
  std::string tol;
  std::string max_grid;
  std::string alpha_count;
  std::string zeros;
  std::string symbol;
  std::string function;
  std::string n;
  std::string alpha_angle;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "INI config file")->check(CLI::ExistingFile);
  cmd->add_option("--out", f.out, "output directory (output.dir)");
  cmd->add_option("--seed", f.seed, "seed for random phases and test polynomials (sweep.seed)");
  cmd->add_option("--tol", f.tol, "quadrature tolerance, sets abs_tol and rel_tol");
  cmd->add_option("--max-grid", f.max_grid, "quadrature point cap, a power of two");
  cmd->add_option("--alpha-count", f.alpha_count, "alpha grid size (sweep.alpha_count)");
  cmd->add_option("--zeros", f.zeros, "explicit zeros, e.g. 0,0.5,0.3i");
  cmd->add_option("--symbol", f.symbol, "preset or c<k>=<value>,...");
  cmd->add_option("--function", f.function, "preset or poly:c0,c1,...");
  cmd->add_option("--n", f.n, "comma-separated degrees (sweep.n_values)");
  cmd->add_option("--alpha-angle", f.alpha_angle, "single Clark parameter angle in radians");
}

int fail_with(const char* what) {
  std::fprintf(stderr, "error: %s\n", what);
  return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated Toeplitz operators on model spaces"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tto_version()));

  const std::vector<std::pair<std::string, std::string>> subs = {
      {"operator", "dump the matrix of T_B(phi) as JSON and CSV"},
      {"clark", "Clark measures: atoms and weights"},
      {"szego", "Szego-type trace gaps over an N sweep"},
      {"stz", "beta-weighted trace gaps over an N sweep"},
      {"angular", "Clark beta norms and angular derivative partial sums"},
      {"lemmas", "Hilbert-Schmidt, product defect and Fejer operator checks"},
  };
  Flags flags;
  for (const auto& [name, help] : subs) add_flags(app.add_subcommand(name, help), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  const std::string sub = app.get_subcommands().front()->get_name();

  tto_config* cfg = nullptr;
  const tto_status load = flags.config.empty() ? tto_config_default(&cfg) : tto_config_load(flags.config.c_str(), &cfg);
  if (load != TTO_OK) return fail_with(tto_last_error());

  std::vector<std::pair<const char*, std::string>> overrides;
  if (!flags.zeros.empty()) {
    overrides.emplace_back("sequence.generator", "explicit");
    overrides.emplace_back("sequence.zeros", flags.zeros);
  }
  if (!flags.out.empty()) overrides.emplace_back("output.dir", flags.out);
  if (!flags.seed.empty()) overrides.emplace_back("sweep.seed", flags.seed);
  if (!flags.tol.empty()) {
    overrides.emplace_back("quadrature.abs_tol", flags.tol);
    overrides.emplace_back("quadrature.rel_tol", flags.tol);
  }
  if (!flags.max_grid.empty()) overrides.emplace_back("quadrature.max_points", flags.max_grid);
  if (!flags.alpha_count.empty()) overrides.emplace_back("sweep.alpha_count", flags.alpha_count);
  if (!flags.symbol.empty()) overrides.emplace_back("symbol.phi", flags.symbol);
  if (!flags.function.empty()) overrides.emplace_back("function.f", flags.function);
  if (!flags.n.empty()) overrides.emplace_back("sweep.n_values", flags.n);
  if (!flags.alpha_angle.empty()) overrides.emplace_back("clark.alpha_angle", flags.alpha_angle);
  for (const auto& [key, value] : overrides) {
    if (tto_config_set(cfg, key, value.c_str()) != TTO_OK) {
      const int code = fail_with(tto_last_error());
      tto_config_free(cfg);
      return code;
    }
  }

  int exit_code = kExitRuntime;
  char* report = nullptr;
  const tto_status st = tto_run(sub.c_str(), cfg, &exit_code, &report);
  tto_config_free(cfg);
  if (st != TTO_OK) {
    std::fprintf(stderr, "error: %s\n", tto_last_error());
    return kExitRuntime;
  }
  std::printf("%s\n", report);
  tto_string_free(report);
  if (exit_code == kExitConfig || exit_code == kExitRuntime) std::fprintf(stderr, "error: %s\n", tto_last_error());
  return exit_code;
}
