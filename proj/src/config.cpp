#include "tto/config.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fstream>
#include <sstream>

#include "tto/parse.hpp"

namespace tto {

namespace {

[[noreturn]] void config_error(const std::string& key, const std::string& msg) {
  fail(ErrorCode::kConfig, key + ": " + msg);
}

// Runs `parse` on the value of `key` if present, prefixing any error with the key path.
template <class F>
void read(const ConfigDocument& doc, const std::string& key, F&& parse) {
  const auto it = doc.find(key);
  if (it == doc.end()) return;
  try {
    parse(it->second);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfig) throw;
    config_error(key, e.what());
  }
}

std::size_t parse_count(const std::string& text) {
  const auto v = parse_integer(text);
  if (v < 0) fail(ErrorCode::kInvalidArgument, "must be nonnegative, got " + text);
  return static_cast<std::size_t>(v);
}

double parse_unit_interval(const std::string& text) {
  const double v = parse_real(text);
  if (!(v > 0.0 && v < 1.0)) fail(ErrorCode::kDomain, "must lie in (0, 1), got " + text);
  return v;
}

PhaseRule parse_phase_rule(const std::string& text) {
  const auto rule = phase_rule_from_string(text);
  if (!rule) fail(ErrorCode::kInvalidArgument, "unknown phase rule '" + text + "' (valid: rotation, random)");
  return *rule;
}

std::string join_counts(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
  return out;
}

std::string join_reals(const std::vector<double>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + format_double(v[k]);
  return out;
}

// The ini parser only knows whole-line comments; drop " ; ..." and " # ..." tails too.
std::string strip_inline_comments(const std::string& text) {
  std::istringstream in(text);
  std::string out, line;
  while (std::getline(in, line)) {
    for (std::size_t k = 1; k < line.size(); ++k) {
      if ((line[k] == ';' || line[k] == '#') && (line[k - 1] == ' ' || line[k - 1] == '\t')) {
        line.resize(k);
        break;
      }
    }
    out += line;
    out += '\n';
  }
  return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "sequence.generator", "sequence.r",          "sequence.lambda",       "sequence.gamma",
      "sequence.phase_rule", "sequence.zeros",     "symbol.phi",            "function.f",
      "sweep.n_values",     "sweep.alpha_count",   "sweep.seed",            "quadrature.initial_points",
      "quadrature.max_points", "quadrature.abs_tol", "quadrature.rel_tol",  "angular.terms",
      "angular.grid_points", "angular.thresholds", "lemmas.phi",            "lemmas.psi",
      "lemmas.random_polys", "lemmas.random_degree", "lemmas.pointwise_points", "clark.alpha_angle",
      "output.dir",         "output.formats",
  };
  return keys;
}

void set_config_value(ConfigDocument& doc, const std::string& key, const std::string& value) {
  const auto& keys = config_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) config_error(key, "unknown key");
  doc[key] = value;
}

ConfigDocument parse_config_text(const std::string& text) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in(strip_inline_comments(text));
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    fail(ErrorCode::kConfig, "config syntax error at line " + std::to_string(e.line()) + ": " + e.message());
  }
  ConfigDocument doc;
  for (const auto& [section, body] : tree) {
    if (body.empty()) config_error(section, "key outside a section");
    for (const auto& [key, value] : body) {
      const std::string path = section + "." + key;
      if (doc.contains(path)) config_error(path, "duplicate key");
      set_config_value(doc, path, value.get_value<std::string>());
    }
  }
  return doc;
}

ConfigDocument load_config_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kConfig, "cannot read config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

ExperimentConfig build_config(const ConfigDocument& doc) {
  ExperimentConfig cfg;

  GeneratorKind kind = GeneratorKind::kUniformZero;
  read(doc, "sequence.generator", [&](const std::string& v) {
    const auto k = generator_from_string(v);
    if (!k) fail(ErrorCode::kInvalidArgument, "unknown generator '" + v + "' (valid: " + valid_generator_tags() + ")");
    kind = *k;
  });
  double r = 0.5, lambda = 0.5, gamma = 0.6180339887;
  PhaseRule rule = PhaseRule::kRotation;
  std::vector<cplx> zeros;
  read(doc, "sequence.r", [&](const std::string& v) { r = parse_unit_interval(v); });
  read(doc, "sequence.lambda", [&](const std::string& v) { lambda = parse_unit_interval(v); });
  read(doc, "sequence.gamma", [&](const std::string& v) {
    gamma = parse_real(v);
    if (!std::isfinite(gamma)) fail(ErrorCode::kDomain, "must be finite");
  });
  read(doc, "sequence.phase_rule", [&](const std::string& v) { rule = parse_phase_rule(v); });
  read(doc, "sequence.zeros", [&](const std::string& v) { zeros = parse_complex_list(v); });
  read(doc, "sweep.seed", [&](const std::string& v) { cfg.seed = parse_count(v); });

  switch (kind) {
    case GeneratorKind::kUniformZero: cfg.sequence = ZeroSequence::uniform_zero(); break;
    case GeneratorKind::kConstantModulus: cfg.sequence = ZeroSequence::constant_modulus(r, rule, cfg.seed); break;
    case GeneratorKind::kAlternating3k: cfg.sequence = ZeroSequence::alternating_3k(lambda); break;
    case GeneratorKind::kFrostmanFast: cfg.sequence = ZeroSequence::frostman_fast(rule, cfg.seed); break;
    case GeneratorKind::kDenseNonBlaschke: cfg.sequence = ZeroSequence::dense_nonblaschke(gamma); break;
    case GeneratorKind::kExplicit:
      if (zeros.empty()) config_error("sequence.zeros", "required for the explicit generator");
      cfg.sequence = ZeroSequence::explicit_points(zeros);
      try {
        cfg.sequence.validate();
      } catch (const Error& e) {
        config_error("sequence.zeros", e.what());
      }
      cfg.n_values = {zeros.size()};
      break;
  }
  if (kind != GeneratorKind::kDenseNonBlaschke) cfg.sequence.gamma = gamma;

  read(doc, "symbol.phi", [&](const std::string& v) { cfg.symbol = parse_symbol(v); });
  read(doc, "function.f", [&](const std::string& v) { cfg.function = parse_function(v); });
  read(doc, "sweep.n_values", [&](const std::string& v) {
    cfg.n_values.clear();
    for (const auto& item : split_list(v)) cfg.n_values.push_back(parse_count(item));
  });
  read(doc, "sweep.alpha_count", [&](const std::string& v) { cfg.alpha_count = parse_count(v); });
  read(doc, "quadrature.initial_points", [&](const std::string& v) { cfg.quadrature.initial_points = parse_count(v); });
  read(doc, "quadrature.max_points", [&](const std::string& v) { cfg.quadrature.max_points = parse_count(v); });
  read(doc, "quadrature.abs_tol", [&](const std::string& v) { cfg.quadrature.abs_tol = parse_real(v); });
  read(doc, "quadrature.rel_tol", [&](const std::string& v) { cfg.quadrature.rel_tol = parse_real(v); });
  read(doc, "angular.terms", [&](const std::string& v) { cfg.angular.terms = parse_count(v); });
  read(doc, "angular.grid_points", [&](const std::string& v) { cfg.angular.grid_points = parse_count(v); });
  read(doc, "angular.thresholds", [&](const std::string& v) {
    cfg.angular.thresholds.clear();
    for (const auto& item : split_list(v)) cfg.angular.thresholds.push_back(parse_real(item));
  });
  read(doc, "lemmas.phi", [&](const std::string& v) { cfg.lemmas.product_phi = parse_symbol(v); });
  read(doc, "lemmas.psi", [&](const std::string& v) { cfg.lemmas.product_psi = parse_symbol(v); });
  read(doc, "lemmas.random_polys", [&](const std::string& v) { cfg.lemmas.random_polys = parse_count(v); });
  read(doc, "lemmas.random_degree", [&](const std::string& v) {
    cfg.lemmas.random_degree = static_cast<int>(parse_count(v));
  });
  read(doc, "lemmas.pointwise_points", [&](const std::string& v) { cfg.lemmas.pointwise_points = parse_count(v); });
  read(doc, "clark.alpha_angle", [&](const std::string& v) { cfg.alpha_angle = parse_real(v); });
  read(doc, "output.dir", [&](const std::string& v) { cfg.output.dir = v; });
  read(doc, "output.formats", [&](const std::string& v) {
    cfg.output.csv = cfg.output.json = false;
    for (const auto& item : split_list(v)) {
      if (item == "csv") cfg.output.csv = true;
      else if (item == "json") cfg.output.json = true;
      else fail(ErrorCode::kInvalidArgument, "unknown format '" + item + "' (valid: csv, json)");
    }
    if (!cfg.output.csv && !cfg.output.json) fail(ErrorCode::kInvalidArgument, "no output format selected");
  });

  cfg.validate();
  return cfg;
}

ExperimentConfig parse_config(const std::filesystem::path& path) { return build_config(load_config_document(path)); }

std::string canonical_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  const auto& s = cfg.sequence;
  os << "[sequence]\n";
  os << "generator = " << to_string(s.kind) << "\n";
  switch (s.kind) {
    case GeneratorKind::kConstantModulus:
      os << "r = " << format_double(s.modulus) << "\n";
      break;
    case GeneratorKind::kAlternating3k:
      os << "lambda = " << format_double(s.modulus) << "\n";
      break;
    case GeneratorKind::kExplicit: {
      os << "zeros = ";
      for (std::size_t k = 0; k < s.points.size(); ++k) os << (k ? "," : "") << format_complex(s.points[k]);
      os << "\n";
      break;
    }
    default:
      break;
  }
  if (s.kind == GeneratorKind::kConstantModulus || s.kind == GeneratorKind::kFrostmanFast)
    os << "phase_rule = " << to_string(s.phase_rule) << "\n";
  if (s.kind == GeneratorKind::kDenseNonBlaschke ||
      ((s.kind == GeneratorKind::kConstantModulus || s.kind == GeneratorKind::kFrostmanFast) &&
       s.phase_rule == PhaseRule::kRotation))
    os << "gamma = " << format_double(s.gamma) << "\n";

  os << "\n[symbol]\nphi = " << cfg.symbol.name() << "\n";
  os << "\n[function]\nf = " << cfg.function.name() << "\n";
  os << "\n[sweep]\nn_values = " << join_counts(cfg.n_values) << "\nalpha_count = " << cfg.alpha_count
     << "\nseed = " << cfg.seed << "\n";
  os << "\n[quadrature]\ninitial_points = " << cfg.quadrature.initial_points
     << "\nmax_points = " << cfg.quadrature.max_points << "\nabs_tol = " << format_double(cfg.quadrature.abs_tol)
     << "\nrel_tol = " << format_double(cfg.quadrature.rel_tol) << "\n";
  os << "\n[angular]\nterms = " << cfg.angular.terms << "\ngrid_points = " << cfg.angular.grid_points
     << "\nthresholds = " << join_reals(cfg.angular.thresholds) << "\n";
  os << "\n[lemmas]\nphi = " << cfg.lemmas.product_phi.name() << "\npsi = " << cfg.lemmas.product_psi.name()
     << "\nrandom_polys = " << cfg.lemmas.random_polys << "\nrandom_degree = " << cfg.lemmas.random_degree
     << "\npointwise_points = " << cfg.lemmas.pointwise_points << "\n";
  if (cfg.alpha_angle) os << "\n[clark]\nalpha_angle = " << format_double(*cfg.alpha_angle) << "\n";
  std::string formats = cfg.output.csv ? "csv" : "";
  if (cfg.output.json) formats += formats.empty() ? "json" : ",json";
  os << "\n[output]\nformats = " << formats << "\n";
  return os.str();
}

std::string config_hash(const ExperimentConfig& cfg) {
  const std::string text = canonical_config(cfg);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    fail(ErrorCode::kInternal, "SHA-256 digest failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned int k = 0; k < len; ++k) {
    hex += kHex[digest[k] >> 4];
    hex += kHex[digest[k] & 15];
  }
  return hex;
}

}  // namespace tto
