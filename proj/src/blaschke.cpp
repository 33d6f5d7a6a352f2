#include "tto/blaschke.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <random>

namespace tto {

namespace {

constexpr std::array<std::pair<GeneratorKind, const char*>, 6> kGeneratorTags{{
    {GeneratorKind::kUniformZero, "uniform_zero"},
    {GeneratorKind::kConstantModulus, "constant_modulus"},
    {GeneratorKind::kAlternating3k, "alternating_3k"},
    {GeneratorKind::kFrostmanFast, "frostman_fast"},
    {GeneratorKind::kDenseNonBlaschke, "dense_nonblaschke"},
    {GeneratorKind::kExplicit, "explicit"},
}};

double frac(double x) { return x - std::floor(x); }

// Phases psi_1, psi_2, ... for the rotation / random rules; psi_0 is unused.
std::vector<double> phases(PhaseRule rule, double gamma, std::uint64_t seed, std::size_t count) {
  std::vector<double> out(count, 0.0);
  if (rule == PhaseRule::kRotation) {
    for (std::size_t j = 1; j < count; ++j) out[j] = kTwoPi * frac(static_cast<double>(j) * gamma);
  } else {
    std::mt19937_64 engine(seed);
    for (std::size_t j = 1; j < count; ++j) out[j] = kTwoPi * (static_cast<double>(engine() >> 11) * 0x1.0p-53);
  }
  return out;
}

// k with 3^{k-1} < j <= 3^k, for j >= 2.
int ternary_block(std::size_t j) {
  int k = 0;
  std::size_t p = 1;
  while (p < j) {
    p *= 3;
    ++k;
  }
  return k;
}

}  // namespace

std::string to_string(GeneratorKind kind) {
  for (const auto& [k, tag] : kGeneratorTags)
    if (k == kind) return tag;
  return "unknown";
}

std::optional<GeneratorKind> generator_from_string(const std::string& tag) {
  for (const auto& [k, name] : kGeneratorTags)
    if (tag == name) return k;
  return std::nullopt;
}

std::string valid_generator_tags() {
  std::string out;
  for (const auto& [k, tag] : kGeneratorTags) {
    if (!out.empty()) out += ", ";
    out += tag;
  }
  return out;
}

std::string to_string(PhaseRule rule) { return rule == PhaseRule::kRotation ? "rotation" : "random"; }

std::optional<PhaseRule> phase_rule_from_string(const std::string& tag) {
  if (tag == "rotation" || tag == "equispaced") return PhaseRule::kRotation;
  if (tag == "random") return PhaseRule::kRandom;
  return std::nullopt;
}

ZeroSequence ZeroSequence::uniform_zero() { return {}; }

ZeroSequence ZeroSequence::constant_modulus(double r, PhaseRule rule, std::uint64_t seed) {
  ZeroSequence s;
  s.kind = GeneratorKind::kConstantModulus;
  s.modulus = r;
  s.phase_rule = rule;
  s.seed = seed;
  return s;
}

ZeroSequence ZeroSequence::alternating_3k(double lambda) {
  ZeroSequence s;
  s.kind = GeneratorKind::kAlternating3k;
  s.modulus = lambda;
  return s;
}

ZeroSequence ZeroSequence::frostman_fast(PhaseRule rule, std::uint64_t seed) {
  ZeroSequence s;
  s.kind = GeneratorKind::kFrostmanFast;
  s.phase_rule = rule;
  s.seed = seed;
  return s;
}

ZeroSequence ZeroSequence::dense_nonblaschke(double gamma) {
  ZeroSequence s;
  s.kind = GeneratorKind::kDenseNonBlaschke;
  s.gamma = gamma;
  return s;
}

ZeroSequence ZeroSequence::explicit_points(std::vector<cplx> pts) {
  ZeroSequence s;
  s.kind = GeneratorKind::kExplicit;
  s.points = std::move(pts);
  return s;
}

void ZeroSequence::validate() const {
  switch (kind) {
    case GeneratorKind::kConstantModulus:
    case GeneratorKind::kAlternating3k:
      if (!(modulus > 0.0 && modulus < 1.0))
        fail(ErrorCode::kDomain, "modulus parameter must lie in (0,1), got " + std::to_string(modulus));
      break;
    case GeneratorKind::kExplicit:
      if (points.empty()) fail(ErrorCode::kInvalidArgument, "explicit zero sequence is empty");
      if (points.front() != cplx{}) fail(ErrorCode::kDomain, "explicit zero sequence must start with lambda_0 = 0");
      for (const auto& p : points)
        if (!(std::abs(p) < 1.0)) fail(ErrorCode::kDomain, "explicit zero outside the open unit disk");
      break;
    default:
      break;
  }
  if (!std::isfinite(gamma)) fail(ErrorCode::kDomain, "rotation number must be finite");
}

std::vector<ZeroPoint> ZeroSequence::polar_prefix(std::size_t count) const {
  if (count < 1) fail(ErrorCode::kInvalidArgument, "zero count must be at least 1");
  validate();
  std::vector<ZeroPoint> out(count);  // out[0] is the origin
  switch (kind) {
    case GeneratorKind::kUniformZero:
      break;
    case GeneratorKind::kConstantModulus: {
      const auto ph = phases(phase_rule, gamma, seed, count);
      for (std::size_t j = 1; j < count; ++j) out[j] = {1.0 - modulus, ph[j]};
      break;
    }
    case GeneratorKind::kAlternating3k:
      for (std::size_t j = 2; j < count; ++j) {
        const bool odd = ternary_block(j) % 2 == 1;
        out[j] = {1.0 - modulus, odd ? 0.0 : std::numbers::pi};
      }
      break;
    case GeneratorKind::kFrostmanFast: {
      const auto ph = phases(phase_rule, gamma, seed, count);
      for (std::size_t j = 1; j < count; ++j) {
        const double jp = static_cast<double>(j + 1);
        out[j] = {1.0 / (jp * jp * jp * jp), ph[j]};
      }
      break;
    }
    case GeneratorKind::kDenseNonBlaschke:
      for (std::size_t j = 1; j < count; ++j)
        out[j] = {1.0 / static_cast<double>(j + 1), kTwoPi * frac(static_cast<double>(j) * gamma)};
      break;
    case GeneratorKind::kExplicit:
      if (count > points.size())
        fail(ErrorCode::kInvalidArgument, "explicit zero sequence has only " + std::to_string(points.size()) + " points");
      for (std::size_t j = 1; j < count; ++j) {
        const double r = std::abs(points[j]);
        out[j] = r == 0.0 ? ZeroPoint{} : ZeroPoint{1.0 - r, std::arg(points[j])};
      }
      break;
  }
  return out;
}

std::vector<cplx> generate_zeros(const ZeroSequence& seq, std::size_t count) {
  const auto polar = seq.polar_prefix(count);
  std::vector<cplx> out(count);
  for (std::size_t j = 0; j < count; ++j) {
    if (polar[j].defect >= 1.0) continue;
    if (seq.kind == GeneratorKind::kExplicit && polar[j].defect >= kMinRadiusDefect) {
      out[j] = seq.points[j];
      continue;
    }
    const double defect = std::max(polar[j].defect, kMinRadiusDefect);
    out[j] = (1.0 - defect) * unit(polar[j].phase);
  }
  return out;
}

FiniteBlaschke::FiniteBlaschke(std::vector<cplx> zeros) : zeros_(std::move(zeros)) {
  if (zeros_.empty()) fail(ErrorCode::kInvalidArgument, "a Blaschke product needs at least one zero");
  for (const auto& z : zeros_) {
    const double r = std::abs(z);
    if (!(r < 1.0)) fail(ErrorCode::kDomain, "Blaschke zero outside the open unit disk");
    radius_.push_back(r);
    direction_.push_back(r == 0.0 ? 0.0 : std::arg(z));
    unimodular_.push_back(r == 0.0 ? cplx{1.0} : std::conj(z) / r);
    weight_.push_back((1.0 - r) * (1.0 + r));
    max_modulus_ = std::max(max_modulus_, r);
  }
}

bool FiniteBlaschke::vanishes_at_origin() const {
  return std::any_of(zeros_.begin(), zeros_.end(), [](cplx z) { return z == cplx{}; });
}

cplx FiniteBlaschke::factor(std::size_t j, cplx w) const {
  return unimodular_[j] * (w - zeros_[j]) / (1.0 - std::conj(zeros_[j]) * w);
}

cplx FiniteBlaschke::operator()(cplx w) const {
  if (std::abs(w) > 1.0 + 1e-12) fail(ErrorCode::kDomain, "Blaschke evaluation outside the closed unit disk");
  cplx p = 1.0;
  for (std::size_t j = 0; j < zeros_.size(); ++j) p *= factor(j, w);
  return p;
}

double FiniteBlaschke::abs_derivative(double angle) const {
  double s = 0.0;
  for (std::size_t j = 0; j < zeros_.size(); ++j) {
    const double r = radius_[j];
    const double h = std::sin(0.5 * (angle - direction_[j]));
    // |e^{i angle} - lambda|^2 without cancellation near the zero's direction.
    const double dist2 = (1.0 - r) * (1.0 - r) + 4.0 * r * h * h;
    s += weight_[j] / dist2;
  }
  return s;
}

double FiniteBlaschke::unwrapped_phase(double angle) const {
  double s = 0.0;
  for (std::size_t j = 0; j < zeros_.size(); ++j) {
    const double r = radius_[j];
    if (r == 0.0) {
      s += angle;
      continue;
    }
    const double d = angle - direction_[j];
    // arg b_j = arg u_j + theta - 2 arg(1 - conj(lambda) zeta); 1 - r cos > 0 keeps atan2 on one branch.
    s += -direction_[j] + angle + 2.0 * std::atan2(r * std::sin(d), 1.0 - r * std::cos(d));
  }
  return s;
}

void FiniteBlaschke::basis_values(cplx w, std::span<cplx> out) const {
  if (out.size() != zeros_.size()) fail(ErrorCode::kInvalidArgument, "basis_values output span has wrong length");
  cplx partial = 1.0;
  for (std::size_t j = 0; j < zeros_.size(); ++j) {
    const cplx denom = 1.0 - std::conj(zeros_[j]) * w;
    out[j] = partial * std::sqrt(weight_[j]) / denom;
    partial *= unimodular_[j] * (w - zeros_[j]) / denom;
  }
}

std::vector<cplx> FiniteBlaschke::basis_values(cplx w) const {
  std::vector<cplx> out(zeros_.size());
  basis_values(w, out);
  return out;
}

std::size_t FiniteBlaschke::resolving_points(std::size_t extra_degree) const {
  const double r = max_modulus_;
  const double peak = 8.0 * (1.0 + r) / (1.0 - r);
  const double degree = 4.0 * static_cast<double>(zeros_.size() + extra_degree);
  const double want = std::min(std::max(peak, degree), 0x1.0p62);
  return std::bit_ceil(static_cast<std::size_t>(std::ceil(want)));
}

cplx eval_blaschke(const FiniteBlaschke& b, cplx w) { return b(w); }

double abs_derivative_boundary(const FiniteBlaschke& b, const CirclePoint& z) { return b.abs_derivative(z); }

double nu_density(const FiniteBlaschke& b, const CirclePoint& z) {
  return b.abs_derivative(z) / static_cast<double>(b.degree());
}

double beta_density(const FiniteBlaschke& b, const CirclePoint& z) { return 1.0 / b.abs_derivative(z); }

cplx szego_kernel(cplx lambda, cplx w) {
  if (!(std::abs(lambda) < 1.0)) fail(ErrorCode::kDomain, "Szego kernel needs |lambda| < 1");
  return 1.0 / (1.0 - std::conj(lambda) * w);
}

cplx normalized_szego_kernel(cplx lambda, cplx w) {
  return std::sqrt(1.0 - std::norm(lambda)) * szego_kernel(lambda, w);
}

cplx model_kernel(const FiniteBlaschke& b, cplx lambda, cplx w) {
  const double r = std::abs(lambda);
  if (r > 1.0 + 1e-12) fail(ErrorCode::kDomain, "model kernel point outside the closed unit disk");
  if (std::abs(w - lambda) < 1e-6) {
    if (std::abs(r - 1.0) <= 1e-12 && w == lambda) return b.abs_derivative(std::arg(lambda));
    // Near the diagonal the closed form cancels; sum over the orthonormal basis instead.
    const auto el = b.basis_values(lambda);
    const auto ew = b.basis_values(w);
    cplx s{};
    for (std::size_t j = 0; j < el.size(); ++j) s += ew[j] * std::conj(el[j]);
    return s;
  }
  return (1.0 - std::conj(b(lambda)) * b(w)) / (1.0 - std::conj(lambda) * w);
}

cplx normalized_model_kernel(const FiniteBlaschke& b, cplx lambda, cplx w) {
  const double norm2 = std::abs(std::abs(lambda) - 1.0) <= 1e-12
                           ? b.abs_derivative(std::arg(lambda))
                           : ((1.0 - std::norm(b(lambda))) / (1.0 - std::norm(lambda)));
  return model_kernel(b, lambda, w) / std::sqrt(norm2);
}

cplx tmw_basis_eval(const FiniteBlaschke& b, std::size_t j, const CirclePoint& z) {
  if (j >= b.degree()) fail(ErrorCode::kInvalidArgument, "TMW basis index out of range");
  return b.basis_values(z.value())[j];
}

double AngularDiagnostics::fraction_below(double bound) const {
  if (partial_sums.empty()) return 0.0;
  std::size_t below = 0;
  for (std::size_t p = 0; p < partial_sums.size(); ++p)
    if (final_sum(p) < bound) ++below;
  return static_cast<double>(below) / static_cast<double>(partial_sums.size());
}

AngularDiagnostics angular_partial_sums(const ZeroSequence& seq, std::span<const CirclePoint> grid, std::size_t terms,
                                        std::span<const double> thresholds) {
  if (terms < 1) fail(ErrorCode::kInvalidArgument, "angular_partial_sums needs J >= 1");
  if (grid.empty()) fail(ErrorCode::kInvalidArgument, "angular_partial_sums needs a non-empty grid");
  const auto polar = seq.polar_prefix(terms);

  AngularDiagnostics out;
  out.grid.assign(grid.begin(), grid.end());
  out.thresholds.assign(thresholds.begin(), thresholds.end());
  for (std::size_t c = 1; c < terms; c *= 2) out.checkpoints.push_back(c);
  out.checkpoints.push_back(terms);

  for (const auto& z : grid) {
    std::vector<double> kept;
    std::vector<std::optional<std::size_t>> crossing(thresholds.size());
    double s = 0.0;
    std::size_t next = 0;
    for (std::size_t j = 0; j < terms; ++j) {
      const auto& p = polar[j];
      const double r = 1.0 - p.defect;
      const double h = std::sin(0.5 * (z.angle() - p.phase));
      s += p.defect * (2.0 - p.defect) / (p.defect * p.defect + 4.0 * r * h * h);
      for (std::size_t t = 0; t < thresholds.size(); ++t)
        if (!crossing[t] && s > thresholds[t]) crossing[t] = j + 1;
      if (j + 1 == out.checkpoints[next]) {
        kept.push_back(s);
        ++next;
      }
    }
    out.partial_sums.push_back(std::move(kept));
    out.first_crossing.push_back(std::move(crossing));
  }
  return out;
}

std::vector<CirclePoint> equispaced_grid(std::size_t count, double offset) {
  std::vector<CirclePoint> g;
  g.reserve(count);
  for (std::size_t k = 0; k < count; ++k)
    g.emplace_back(kTwoPi * (static_cast<double>(k) + offset) / static_cast<double>(count));
  return g;
}

}  // namespace tto
