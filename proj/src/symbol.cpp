#include "tto/symbol.hpp"

#include <algorithm>
#include <sstream>

#include "tto/parse.hpp"

namespace tto {

namespace {

bool trig_is_real(const Symbol::Coefficients& c) {
  double scale = 0.0;
  for (const auto& [k, v] : c) scale = std::max(scale, std::abs(v));
  for (const auto& [k, v] : c) {
    const auto it = c.find(-k);
    const cplx mirror = it == c.end() ? cplx{} : std::conj(it->second);
    if (std::abs(v - mirror) > 1e-15 * std::max(1.0, scale)) return false;
  }
  return true;
}

}  // namespace

Symbol Symbol::trig(Coefficients coeffs) {
  Symbol s;
  for (auto it = coeffs.begin(); it != coeffs.end();) it = it->second == cplx{} ? coeffs.erase(it) : std::next(it);
  s.coeffs_ = std::move(coeffs);
  s.real_ = trig_is_real(s.coeffs_);
  s.name_ = s.describe();
  return s;
}

Symbol Symbol::sampled(SampleFn fn, std::string name) {
  Symbol s;
  s.sampler_ = std::make_shared<const SampleFn>(std::move(fn));
  s.name_ = std::move(name);
  double max_imag = 0.0;
  for (int k = 0; k < 1024; ++k) max_imag = std::max(max_imag, std::abs((*s.sampler_)(kTwoPi * k / 1024.0).imag()));
  s.real_ = max_imag < 1e-12;
  return s;
}

std::vector<std::string> Symbol::preset_names() { return {"cos", "re_z", "abs_sin", "z", "zbar"}; }

Symbol Symbol::preset(const std::string& name) {
  Symbol s;
  if (name == "cos") {
    s = trig({{-1, 1.0}, {1, 1.0}});
  } else if (name == "re_z") {
    s = trig({{-1, 0.5}, {1, 0.5}});
  } else if (name == "z") {
    s = monomial(1);
  } else if (name == "zbar") {
    s = monomial(-1);
  } else if (name == "abs_sin") {
    s = sampled([](double a) { return cplx{std::abs(std::sin(a))}; }, "abs_sin");
  } else {
    std::string valid;
    for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
    fail(ErrorCode::kInvalidArgument, "unknown symbol preset '" + name + "' (valid: " + valid + ")");
  }
  s.name_ = name;
  return s;
}

cplx Symbol::operator()(double angle) const {
  if (sampler_) return (*sampler_)(angle);
  cplx s{};
  for (const auto& [k, c] : coeffs_) s += c * unit(static_cast<double>(k) * angle);
  return s;
}

const Symbol::Coefficients& Symbol::coefficients() const {
  if (sampler_) fail(ErrorCode::kInvalidArgument, "symbol '" + name_ + "' is not a trigonometric polynomial");
  return coeffs_;
}

int Symbol::degree() const {
  int d = 0;
  for (const auto& [k, c] : coeffs_) d = std::max(d, std::abs(k));
  return d;
}

std::string Symbol::describe() const {
  if (sampler_) return name_;
  if (coeffs_.empty()) return "c0=0";
  std::string out;
  for (const auto& [k, c] : coeffs_) {
    if (!out.empty()) out += ",";
    out += "c" + std::to_string(k) + "=" + format_complex(c);
  }
  return out;
}

Symbol operator*(const Symbol& a, const Symbol& b) {
  Symbol::Coefficients out;
  for (const auto& [j, cj] : a.coefficients())
    for (const auto& [k, ck] : b.coefficients()) out[j + k] += cj * ck;
  return Symbol::trig(std::move(out));
}

Symbol operator+(const Symbol& a, const Symbol& b) {
  Symbol::Coefficients out = a.coefficients();
  for (const auto& [k, c] : b.coefficients()) out[k] += c;
  return Symbol::trig(std::move(out));
}

ScalarFunction ScalarFunction::polynomial(std::vector<cplx> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  ScalarFunction f;
  f.coeffs_ = std::move(coeffs);
  f.name_ = f.describe();
  return f;
}

ScalarFunction ScalarFunction::pointwise(RealFn fn, std::string name) {
  ScalarFunction f;
  f.pointwise_ = std::make_shared<const RealFn>(std::move(fn));
  f.name_ = std::move(name);
  return f;
}

std::vector<std::string> ScalarFunction::preset_names() {
  return {"identity", "square", "cube", "cubic_minus_x", "abs", "exp"};
}

ScalarFunction ScalarFunction::preset(const std::string& name) {
  ScalarFunction f;
  if (name == "identity") {
    f = polynomial({0.0, 1.0});
  } else if (name == "square") {
    f = polynomial({0.0, 0.0, 1.0});
  } else if (name == "cube") {
    f = polynomial({0.0, 0.0, 0.0, 1.0});
  } else if (name == "cubic_minus_x") {
    f = polynomial({0.0, -1.0, 0.0, 1.0});
  } else if (name == "abs") {
    f = pointwise([](double x) { return std::abs(x); }, "abs");
  } else if (name == "exp") {
    f = pointwise([](double x) { return std::exp(x); }, "exp");
  } else {
    std::string valid;
    for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
    fail(ErrorCode::kInvalidArgument, "unknown function preset '" + name + "' (valid: " + valid + ")");
  }
  f.name_ = name;
  return f;
}

cplx ScalarFunction::operator()(cplx x) const {
  if (pointwise_) return (*pointwise_)(x.real());
  cplx acc{};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string ScalarFunction::describe() const {
  if (pointwise_) return name_;
  std::string out = "poly:";
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out += (k ? "," : "") + format_complex(coeffs_[k]);
  return out;
}

Symbol compose(const ScalarFunction& f, const Symbol& phi) {
  if (!f.is_polynomial()) fail(ErrorCode::kInvalidArgument, "compose needs a polynomial function");
  const auto& c = f.coefficients();
  Symbol acc = Symbol::constant(c.back());
  for (auto it = std::next(c.rbegin()); it != c.rend(); ++it) acc = acc * phi + Symbol::constant(*it);
  return acc;
}

Symbol compose_sampled(const ScalarFunction& f, const Symbol& phi) {
  return Symbol::sampled([f, phi](double a) { return f(phi(a)); }, f.name() + "(" + phi.name() + ")");
}

}  // namespace tto
