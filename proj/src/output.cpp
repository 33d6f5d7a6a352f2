#include "tto/output.hpp"

#include <fstream>
#include <system_error>

#include "json.hpp"
#include "tto/parse.hpp"

namespace tto {

namespace {

using ojson = nlohmann::ordered_json;

ojson pair_of(cplx z) { return ojson::array({z.real(), z.imag()}); }

std::string threshold_label(double t) { return "crossing_" + format_double(t); }

}  // namespace

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string records_to_csv(const std::vector<ConvergenceRecord>& records) {
  std::string out = "N,lhs_re,lhs_im,rhs_re,rhs_im,gap";
  std::vector<std::string> names;
  if (!records.empty())
    for (const auto& [k, v] : records.front().diagnostics) names.push_back(k);
  for (const auto& k : names) out += "," + csv_field(k);
  out += "\r\n";
  for (const auto& r : records) {
    out += std::to_string(r.n) + "," + format_double(r.lhs.real()) + "," + format_double(r.lhs.imag()) + "," +
           format_double(r.rhs.real()) + "," + format_double(r.rhs.imag()) + "," + format_double(r.gap);
    for (const auto& k : names) out += "," + format_double(r.diag(k));
    out += "\r\n";
  }
  return out;
}

std::string records_to_json(const std::vector<ConvergenceRecord>& records) {
  ojson arr = ojson::array();
  for (const auto& r : records) {
    ojson j;
    j["N"] = r.n;
    j["lhs"] = pair_of(r.lhs);
    j["rhs"] = pair_of(r.rhs);
    j["gap"] = r.gap;
    ojson diag = ojson::object();
    for (const auto& [k, v] : r.diagnostics) diag[k] = v;
    j["diagnostics"] = std::move(diag);
    ojson zeros = ojson::array();
    for (const auto& z : r.zeros) zeros.push_back(pair_of(z));
    j["zeros"] = std::move(zeros);
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::string angular_to_csv(const AngularDiagnostics& diag) {
  std::string out = "angle,final_sum";
  for (double t : diag.thresholds) out += "," + csv_field(threshold_label(t));
  out += "\r\n";
  for (std::size_t p = 0; p < diag.grid.size(); ++p) {
    out += format_double(diag.grid[p].angle()) + "," + format_double(diag.final_sum(p));
    for (const auto& c : diag.first_crossing[p]) out += "," + (c ? std::to_string(*c) : std::string());
    out += "\r\n";
  }
  return out;
}

std::string angular_to_json(const AngularDiagnostics& diag) {
  ojson j;
  j["terms"] = diag.checkpoints.empty() ? 0 : diag.checkpoints.back();
  j["checkpoints"] = diag.checkpoints;
  j["thresholds"] = diag.thresholds;
  ojson fractions = ojson::object();
  for (double t : diag.thresholds) fractions[format_double(t)] = diag.fraction_below(t);
  j["fraction_below"] = std::move(fractions);
  ojson points = ojson::array();
  for (std::size_t p = 0; p < diag.grid.size(); ++p) {
    ojson pt;
    pt["angle"] = diag.grid[p].angle();
    pt["partial_sums"] = diag.partial_sums[p];
    ojson crossing = ojson::array();
    for (const auto& c : diag.first_crossing[p]) crossing.push_back(c ? ojson(*c) : ojson(nullptr));
    pt["first_crossing"] = std::move(crossing);
    points.push_back(std::move(pt));
  }
  j["points"] = std::move(points);
  return j.dump(2) + "\n";
}

std::string clark_to_csv(const std::vector<ClarkMeasure>& measures) {
  std::string out = "alpha_angle,zeta_angle,weight\r\n";
  for (const auto& m : measures) {
    const std::string alpha = format_double(wrap_angle(std::arg(m.alpha)));
    for (const auto& a : m.atoms)
      out += alpha + "," + format_double(a.zeta.angle()) + "," + format_double(a.weight) + "\r\n";
  }
  return out;
}

std::string clark_to_json(const std::vector<ClarkMeasure>& measures) {
  ojson arr = ojson::array();
  for (const auto& m : measures) {
    ojson j;
    j["alpha_angle"] = wrap_angle(std::arg(m.alpha));
    j["alpha"] = pair_of(m.alpha);
    j["total_mass"] = m.total_mass();
    j["max_residual"] = m.max_residual;
    ojson atoms = ojson::array();
    for (const auto& a : m.atoms) atoms.push_back({{"zeta_angle", a.zeta.angle()}, {"weight", a.weight}});
    j["atoms"] = std::move(atoms);
    ojson zeros = ojson::array();
    for (const auto& z : m.basis_zeros) zeros.push_back(pair_of(z));
    j["zeros"] = std::move(zeros);
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path(), ec);
    if (ec) fail(ErrorCode::kIo, "cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) fail(ErrorCode::kIo, "cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    os.flush();
    if (!os) fail(ErrorCode::kIo, "write failed for " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorCode::kIo, "cannot move output into place at " + path.string());
  }
}

}  // namespace tto
