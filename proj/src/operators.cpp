#include "tto/operators.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "tto/parse.hpp"

namespace tto {

namespace {

std::vector<cplx> zeros_of(const FiniteBlaschke& b) { return {b.zeros().begin(), b.zeros().end()}; }

void check_finite_sample(cplx v, double angle) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    std::ostringstream os;
    os.precision(17);
    os << "non-finite symbol sample at angle " << angle;
    fail(ErrorCode::kNonFinite, os.str());
  }
}

// Gram-type sums accum[i*n + j] += sum_p conj(e_i(p)) phi(p) e_j(p) over one chunk.
// Points are processed in blocks small enough that all basis rows stay in cache.
void accumulate_gram(const FiniteBlaschke& b, const Symbol& phi, bool hermitian, std::span<const double> angles,
                     std::span<cplx> accum) {
  constexpr std::size_t kBlock = 128;
  const std::size_t n = b.degree();
  std::vector<double> er(n * kBlock), ei(n * kBlock), wr(n * kBlock), wi(n * kBlock);
  std::vector<double> sum_re(n * n, 0.0), sum_im(n * n, 0.0);
  std::vector<cplx> e(n);
  for (std::size_t start = 0; start < angles.size(); start += kBlock) {
    const std::size_t pts = std::min(kBlock, angles.size() - start);
    for (std::size_t p = 0; p < pts; ++p) {
      const double angle = angles[start + p];
      b.basis_values(unit(angle), e);
      const cplx weight = phi(angle);
      check_finite_sample(weight, angle);
      for (std::size_t j = 0; j < n; ++j) {
        const cplx w = weight * e[j];
        er[j * kBlock + p] = e[j].real();
        ei[j * kBlock + p] = e[j].imag();
        wr[j * kBlock + p] = w.real();
        wi[j * kBlock + p] = w.imag();
      }
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double* ar = er.data() + i * kBlock;
      const double* ai = ei.data() + i * kBlock;
      for (std::size_t j = hermitian ? i : 0; j < n; ++j) {
        const double* br = wr.data() + j * kBlock;
        const double* bi = wi.data() + j * kBlock;
        double sr = 0.0, si = 0.0;
#pragma omp simd reduction(+ : sr, si)
        for (std::size_t p = 0; p < pts; ++p) {
          sr += ar[p] * br[p] + ai[p] * bi[p];
          si += ar[p] * bi[p] - ai[p] * br[p];
        }
        sum_re[i * n + j] += sr;
        sum_im[i * n + j] += si;
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = hermitian ? i : 0; j < n; ++j) {
      accum[i * n + j] += cplx{sum_re[i * n + j], sum_im[i * n + j]};
      if (hermitian && j != i) accum[j * n + i] += cplx{sum_re[i * n + j], -sum_im[i * n + j]};
    }
  }
}

CMatrix power_sum(const CMatrix& s, const Symbol::Coefficients& coeffs) {
  const std::size_t n = s.rows();
  CMatrix out(n, n);
  const CMatrix s_adj = s.adjoint();
  int max_pos = 0, max_neg = 0;
  for (const auto& [k, c] : coeffs) (k >= 0 ? max_pos : max_neg) = std::max(k >= 0 ? max_pos : max_neg, std::abs(k));
  CMatrix pw = CMatrix::identity(n);
  for (int m = 0; m <= max_pos; ++m) {
    if (const auto it = coeffs.find(m); it != coeffs.end()) out += pw * it->second;
    if (m < max_pos) pw = pw * s;
  }
  pw = s_adj;
  for (int m = 1; m <= max_neg; ++m) {
    if (const auto it = coeffs.find(-m); it != coeffs.end()) out += pw * it->second;
    if (m < max_neg) pw = pw * s_adj;
  }
  return out;
}

}  // namespace

OperatorMatrix build_truncated_toeplitz(const FiniteBlaschke& b, const Symbol& phi, const QuadratureConfig& cfg) {
  const std::size_t n = b.degree();
  const bool hermitian = phi.is_real();
  const ChunkKernel kernel = [&](std::span<const double> angles, std::span<cplx> accum) {
    accumulate_gram(b, phi, hermitian, angles, accum);
  };
  const auto integral = integrate_circle_vector(n * n, kernel, cfg, b.resolving_points(phi.degree()));

  OperatorMatrix op;
  op.matrix = CMatrix(n, n);
  std::copy(integral.values.begin(), integral.values.end(), op.matrix.data().begin());
  if (hermitian) {
    for (std::size_t i = 0; i < n; ++i) {
      op.matrix(i, i) = op.matrix(i, i).real();
      for (std::size_t j = i + 1; j < n; ++j) {
        const cplx avg = 0.5 * (op.matrix(i, j) + std::conj(op.matrix(j, i)));
        op.matrix(i, j) = avg;
        op.matrix(j, i) = std::conj(avg);
      }
    }
  }
  op.basis_zeros = zeros_of(b);
  op.quadrature = {integral.points_used, integral.estimated_error, integral.converged};
  return op;
}

CMatrix compressed_shift(const FiniteBlaschke& b) {
  const std::size_t n = b.degree();
  CMatrix s(n, n);
  std::vector<double> root(n);
  for (std::size_t k = 0; k < n; ++k) root[k] = std::sqrt(1.0 - std::norm(b.zero(k)));
  for (std::size_t j = 0; j < n; ++j) {
    s(j, j) = b.zero(j);
    const double r = std::abs(b.zero(j));
    const cplx dir = r == 0.0 ? cplx{1.0} : b.zero(j) / r;
    cplx run = dir * root[j];
    for (std::size_t i = j + 1; i < n; ++i) {
      s(i, j) = run * root[i];
      run *= -std::abs(b.zero(i));
    }
  }
  return s;
}

OperatorMatrix truncated_toeplitz_algebraic(const FiniteBlaschke& b, const Symbol& phi) {
  OperatorMatrix op;
  op.matrix = power_sum(compressed_shift(b), phi.coefficients());
  op.basis_zeros = zeros_of(b);
  op.quadrature = {0, 0.0, true};
  return op;
}

IntegralResult trace_formula_rhs(const FiniteBlaschke& b, const Symbol& phi, const QuadratureConfig& cfg) {
  return integrate_circle([&](const CirclePoint& z) { return phi(z) * b.abs_derivative(z); }, cfg,
                          b.resolving_points(phi.degree()));
}

std::vector<cplx> tmw_coefficients(const FiniteBlaschke& b, const Sampler& f, const QuadratureConfig& cfg,
                                   std::size_t extra_degree) {
  const std::size_t n = b.degree();
  const ChunkKernel kernel = [&](std::span<const double> angles, std::span<cplx> accum) {
    std::vector<cplx> e(n);
    for (double a : angles) {
      const cplx fv = f(CirclePoint(a));
      check_finite_sample(fv, a);
      b.basis_values(unit(a), e);
      for (std::size_t j = 0; j < n; ++j) accum[j] += fv * std::conj(e[j]);
    }
  };
  return integrate_circle_vector(n, kernel, cfg, b.resolving_points(extra_degree)).values;
}

std::vector<cplx> kernel_coefficients(const FiniteBlaschke& b, const CirclePoint& zeta) {
  auto e = b.basis_values(zeta.value());
  for (auto& x : e) x = std::conj(x);
  return e;
}

OperatorMatrix build_clark_unitary(const FiniteBlaschke& b, cplx alpha, const QuadratureConfig& cfg) {
  if (std::abs(std::abs(alpha) - 1.0) > 1e-12) fail(ErrorCode::kDomain, "Clark unitary needs |alpha| = 1");
  if (!b.vanishes_at_origin()) fail(ErrorCode::kDomain, "Clark unitary needs B(0) = 0");
  auto op = build_truncated_toeplitz(b, Symbol::monomial(1), cfg);
  const auto one = tmw_coefficients(b, [](const CirclePoint&) { return cplx{1.0}; }, cfg);
  const auto zbar_b = tmw_coefficients(
      b, [&](const CirclePoint& z) { return std::conj(z.value()) * b(z.value()); }, cfg, b.degree());
  op.matrix += alpha * CMatrix::outer(one, zbar_b);
  return op;
}

OperatorMatrix build_clark_spectral(const FiniteBlaschke& b, const ClarkMeasure& clark) {
  return build_clark_spectral(b, clark, Symbol::monomial(1));
}

OperatorMatrix build_clark_spectral(const FiniteBlaschke& b, const ClarkMeasure& clark, const Symbol& phi) {
  if (clark.basis_zeros.size() != b.degree() || !std::equal(clark.basis_zeros.begin(), clark.basis_zeros.end(),
                                                            b.zeros().begin()))
    fail(ErrorCode::kInvalidArgument, "Clark measure belongs to a different Blaschke product");
  const std::size_t n = b.degree();
  OperatorMatrix op;
  op.matrix = CMatrix(n, n);
  for (const auto& atom : clark.atoms) {
    const auto q = kernel_coefficients(b, atom.zeta);
    const cplx scale = phi(atom.zeta) * atom.weight;
    for (std::size_t i = 0; i < n; ++i) {
      const cplx si = scale * q[i];
      for (std::size_t j = 0; j < n; ++j) op.matrix(i, j) += si * std::conj(q[j]);
    }
  }
  op.basis_zeros = zeros_of(b);
  return op;
}

OperatorAverage clark_average(const FiniteBlaschke& b, const Symbol& phi, std::size_t alpha_count, double tol,
                              std::size_t max_alpha_count) {
  const std::size_t n = b.degree();
  const auto add_grid = [&](CMatrix& acc, std::size_t count, double offset) {
    for (const auto& a : alpha_grid(count, offset)) acc += build_clark_spectral(b, clark_measure(b, a), phi).matrix;
  };
  OperatorAverage out;
  std::size_t count = std::max<std::size_t>(alpha_count, 1);
  CMatrix sum(n, n);
  add_grid(sum, count, 0.0);
  out.average = sum * cplx{1.0 / static_cast<double>(count)};
  while (count < max_alpha_count) {
    add_grid(sum, count, 0.5);
    count *= 2;
    CMatrix next = sum * cplx{1.0 / static_cast<double>(count)};
    out.last_change = hs_norm(next - out.average);
    out.average = std::move(next);
    if (out.last_change <= tol) {
      out.converged = true;
      break;
    }
  }
  out.alpha_count = count;
  return out;
}

CMatrix apply_function(const CMatrix& a, const ScalarFunction& f) {
  if (!a.square()) fail(ErrorCode::kInvalidArgument, "apply_function needs a square matrix");
  const std::size_t n = a.rows();
  if (f.is_polynomial()) {
    const auto& c = f.coefficients();
    CMatrix acc = CMatrix::identity(n) * c.back();
    for (auto it = std::next(c.rbegin()); it != c.rend(); ++it) {
      acc = acc * a;
      for (std::size_t i = 0; i < n; ++i) acc(i, i) += *it;
    }
    return acc;
  }
  if (hermitian_defect(a) >= 1e-8)
    fail(ErrorCode::kInvalidArgument, "pointwise function '" + f.name() + "' needs a self-adjoint matrix");
  const auto eig = hermitian_eigen(a);
  CMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx fk = f(eig.eigenvalues[k]);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vi = fk * eig.eigenvectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vi * std::conj(eig.eigenvectors(j, k));
    }
  }
  return out;
}

OperatorMatrix rank_one_defect(const FiniteBlaschke& b, const QuadratureConfig& cfg) {
  if (!b.vanishes_at_origin()) fail(ErrorCode::kDomain, "rank_one_defect needs B(0) = 0");
  auto shift = build_truncated_toeplitz(b, Symbol::monomial(1), cfg);
  const auto co_shift = build_truncated_toeplitz(b, Symbol::monomial(-1), cfg);
  OperatorMatrix op;
  op.matrix = CMatrix::identity(b.degree()) - shift.matrix * co_shift.matrix;
  op.basis_zeros = zeros_of(b);
  op.quadrature = shift.quadrature;
  op.quadrature.converged = shift.quadrature.converged && co_shift.quadrature.converged;
  return op;
}

IntegralResult fejer_apply(const FiniteBlaschke& b, const Symbol& f, const CirclePoint& zeta,
                           const QuadratureConfig& cfg) {
  const auto ez = b.basis_values(zeta.value());
  const double norm2 = b.abs_derivative(zeta);
  const std::size_t n = b.degree();
  const ChunkKernel kernel = [&](std::span<const double> angles, std::span<cplx> accum) {
    std::vector<cplx> e(n);
    cplx s{};
    for (double a : angles) {
      b.basis_values(unit(a), e);
      cplx k{};
      for (std::size_t j = 0; j < n; ++j) k += e[j] * std::conj(ez[j]);
      const cplx fv = f(a);
      check_finite_sample(fv, a);
      s += fv * std::norm(k);
    }
    accum[0] += s / norm2;
  };
  const auto r = integrate_circle_vector(1, kernel, cfg, b.resolving_points(f.degree()));
  return {r.values[0], r.estimated_error, r.points_used, r.converged};
}

cplx berezin_transform(const CMatrix& t, const FiniteBlaschke& b, const CirclePoint& zeta) {
  const auto e = b.basis_values(zeta.value());
  const std::size_t n = e.size();
  if (t.rows() != n || t.cols() != n) fail(ErrorCode::kInvalidArgument, "berezin_transform dimension mismatch");
  cplx s{};
  double norm2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    cplx row{};
    for (std::size_t j = 0; j < n; ++j) row += t(i, j) * std::conj(e[j]);
    s += e[i] * row;
    norm2 += std::norm(e[i]);
  }
  return s / norm2;
}

std::string matrix_to_json(const OperatorMatrix& op) {
  nlohmann::ordered_json j;
  j["dim"] = op.dim();
  auto zeros = nlohmann::ordered_json::array();
  for (const auto& z : op.basis_zeros) zeros.push_back({z.real(), z.imag()});
  j["basis_zeros"] = std::move(zeros);
  auto entries = nlohmann::ordered_json::array();
  for (const auto& x : op.matrix.data()) entries.push_back({x.real(), x.imag()});
  j["entries"] = std::move(entries);
  j["quadrature"] = {{"points_used", op.quadrature.points_used},
                     {"estimated_error", op.quadrature.estimated_error},
                     {"converged", op.quadrature.converged}};
  return j.dump();
}

std::string matrix_to_csv(const OperatorMatrix& op) {
  std::string out = "i,j,re,im\r\n";
  for (std::size_t i = 0; i < op.matrix.rows(); ++i)
    for (std::size_t j = 0; j < op.matrix.cols(); ++j)
      out += std::to_string(i) + "," + std::to_string(j) + "," + format_double(op.matrix(i, j).real()) + "," +
             format_double(op.matrix(i, j).imag()) + "\r\n";
  return out;
}

}  // namespace tto
