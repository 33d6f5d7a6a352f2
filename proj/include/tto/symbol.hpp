#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tto/common.hpp"

namespace tto {

/// A function on the unit circle: either a trigonometric polynomial sum_k c_k zeta^k
/// or a pointwise sampler tagged with a name.
class Symbol {
 public:
  using Coefficients = std::map<int, cplx>;
  using SampleFn = std::function<cplx(double angle)>;

  static Symbol trig(Coefficients coeffs);
  static Symbol constant(cplx c) { return trig({{0, c}}); }
  static Symbol monomial(int k, cplx c = 1.0) { return trig({{k, c}}); }
  /// `real_valued` is checked on a 1024-point grid (|Im| < 1e-12).
  static Symbol sampled(SampleFn fn, std::string name);
  /// cos (= zeta + conj(zeta)), re_z, abs_sin, z, zbar.
  static Symbol preset(const std::string& name);
  static std::vector<std::string> preset_names();

  cplx operator()(double angle) const;
  cplx operator()(const CirclePoint& z) const { return (*this)(z.angle()); }

  bool is_trig() const { return sampler_ == nullptr; }
  bool is_real() const { return real_; }
  const Coefficients& coefficients() const;  // throws for samplers
  int degree() const;                         // max |k|; 0 for samplers
  const std::string& name() const { return name_; }

  /// Canonical text: coefficient list "c-1=1,c1=1" or the preset name.
  std::string describe() const;

  friend Symbol operator*(const Symbol& a, const Symbol& b);  // trig polys only
  friend Symbol operator+(const Symbol& a, const Symbol& b);  // trig polys only

 private:
  Symbol() = default;

  Coefficients coeffs_;
  std::shared_ptr<const SampleFn> sampler_;
  std::string name_;
  bool real_ = false;
};

/// Scalar function applied to an operator: a polynomial (any matrix) or a
/// pointwise real map (self-adjoint matrices only).
class ScalarFunction {
 public:
  using RealFn = std::function<double(double)>;

  static ScalarFunction polynomial(std::vector<cplx> coeffs);  // c_0 + c_1 x + ...
  static ScalarFunction pointwise(RealFn fn, std::string name);
  /// identity, square, cube, cubic_minus_x (polynomials); abs, exp (pointwise).
  static ScalarFunction preset(const std::string& name);
  static std::vector<std::string> preset_names();

  bool is_polynomial() const { return !pointwise_; }
  const std::vector<cplx>& coefficients() const { return coeffs_; }
  cplx operator()(cplx x) const;  // pointwise functions use the real part of x
  const std::string& name() const { return name_; }
  std::string describe() const;

 private:
  ScalarFunction() = default;

  std::vector<cplx> coeffs_;
  std::shared_ptr<const RealFn> pointwise_;
  std::string name_;
};

/// f o phi for polynomial f and trig-polynomial phi, as a trig polynomial.
Symbol compose(const ScalarFunction& f, const Symbol& phi);

/// f o phi as a sampled symbol (any f, any phi).
Symbol compose_sampled(const ScalarFunction& f, const Symbol& phi);

}  // namespace tto
