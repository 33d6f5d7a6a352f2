#pragma once

#include <string>
#include <vector>

#include "tto/blaschke.hpp"
#include "tto/clark.hpp"
#include "tto/matrix.hpp"
#include "tto/quadrature.hpp"
#include "tto/symbol.hpp"

namespace tto {

struct QuadratureInfo {
  std::size_t points_used = 0;
  double estimated_error = 0.0;
  bool converged = true;
};

/// An operator on K_B written in the Takenaka-Malmquist-Walsh basis
/// e_j = B_j k^_{lambda_j} of the Blaschke product with zeros `basis_zeros`.
struct OperatorMatrix {
  CMatrix matrix;
  std::vector<cplx> basis_zeros;
  QuadratureInfo quadrature;

  std::size_t dim() const { return matrix.rows(); }
};

/// Entry (i, j) = int phi e_j conj(e_i) dm; all N^2 entries share one grid per
/// refinement level. Real symbols return the Hermitian part.
OperatorMatrix build_truncated_toeplitz(const FiniteBlaschke& b, const Symbol& phi, const QuadratureConfig& cfg);

/// Matrix of the compressed shift T_B(z) from its closed form:
/// diagonal lambda_i, and for i > j
///   (lambda_j/|lambda_j|) sqrt(1-|lambda_i|^2) sqrt(1-|lambda_j|^2) prod_{j<k<i} (-|lambda_k|).
CMatrix compressed_shift(const FiniteBlaschke& b);

/// T_B(phi) for a trig polynomial without quadrature:
/// sum_{m>=0} c_m S^m + sum_{m>0} c_{-m} (S^*)^m with S the compressed shift.
OperatorMatrix truncated_toeplitz_algebraic(const FiniteBlaschke& b, const Symbol& phi);

/// int phi |B'| dm.
IntegralResult trace_formula_rhs(const FiniteBlaschke& b, const Symbol& phi, const QuadratureConfig& cfg);

/// Coefficients <f, e_j> of f in the TMW basis.
std::vector<cplx> tmw_coefficients(const FiniteBlaschke& b, const Sampler& f, const QuadratureConfig& cfg,
                                   std::size_t extra_degree = 0);

/// TMW coefficient vector of the kernel k^B_zeta: entries conj(e_j(zeta)).
std::vector<cplx> kernel_coefficients(const FiniteBlaschke& b, const CirclePoint& zeta);

/// U_alpha = T_B(z) + alpha (1 (x) conj(z) B).
OperatorMatrix build_clark_unitary(const FiniteBlaschke& b, cplx alpha, const QuadratureConfig& cfg);

/// sum_k phi(zeta_k) w_k q_k q_k^*, i.e. phi(U_alpha); without phi this is U_alpha.
OperatorMatrix build_clark_spectral(const FiniteBlaschke& b, const ClarkMeasure& clark);
OperatorMatrix build_clark_spectral(const FiniteBlaschke& b, const ClarkMeasure& clark, const Symbol& phi);

struct OperatorAverage {
  CMatrix average;
  std::size_t alpha_count = 0;
  double last_change = 0.0;
  bool converged = false;
};

/// Equal-weight average of phi(U_alpha) over equispaced alpha, doubling the grid
/// until the Frobenius change drops below `tol`.
OperatorAverage clark_average(const FiniteBlaschke& b, const Symbol& phi, std::size_t alpha_count, double tol,
                              std::size_t max_alpha_count = 1 << 13);

/// Polynomial functions use Horner's rule; pointwise functions need a
/// self-adjoint argument and go through hermitian_eigen.
CMatrix apply_function(const CMatrix& a, const ScalarFunction& f);

/// I - T_B(z) T_B(conj z).
OperatorMatrix rank_one_defect(const FiniteBlaschke& b, const QuadratureConfig& cfg);

/// E_N f(zeta) = int f(eta) |k^_zeta(eta)|^2 dm(eta) by direct quadrature.
IntegralResult fejer_apply(const FiniteBlaschke& b, const Symbol& f, const CirclePoint& zeta,
                           const QuadratureConfig& cfg);

/// <T k_zeta, k_zeta> / |B'(zeta)|. With T = T_B(f) this equals E_N f(zeta).
cplx berezin_transform(const CMatrix& t, const FiniteBlaschke& b, const CirclePoint& zeta);

/// {"dim": N, "basis_zeros": [[re,im],...], "entries": [[re,im],...]} row-major.
std::string matrix_to_json(const OperatorMatrix& op);
/// Header "i,j,re,im" then one row per entry.
std::string matrix_to_csv(const OperatorMatrix& op);

}  // namespace tto
