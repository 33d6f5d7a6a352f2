#include "tto/matrix.hpp"

#include <algorithm>
#include <numeric>

namespace tto {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::outer(std::span<const cplx> u, std::span<const cplx> v) {
  CMatrix m(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * std::conj(v[j]);
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) fail(ErrorCode::kInvalidArgument, "matrix shape mismatch in +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) fail(ErrorCode::kInvalidArgument, "matrix shape mismatch in -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& x : data_) x *= s;
  return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols_ != b.rows_) fail(ErrorCode::kInvalidArgument, "matrix shape mismatch in *");
  CMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    cplx* ci = c.data_.data() + i * c.cols_;
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      const cplx* bk = b.data_.data() + k * b.cols_;
      for (std::size_t j = 0; j < b.cols_; ++j) ci[j] += aik * bk[j];
    }
  }
  return c;
}

std::vector<cplx> CMatrix::apply(std::span<const cplx> x) const {
  if (x.size() != cols_) fail(ErrorCode::kInvalidArgument, "vector length mismatch in apply");
  std::vector<cplx> y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    cplx s{};
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

cplx trace(const CMatrix& a) {
  cplx s{};
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) s += a(i, i);
  return s;
}

double hs_norm(const CMatrix& a) {
  double s = 0.0;
  for (const auto& x : a.data()) s += std::norm(x);
  return std::sqrt(s);
}

double max_abs(const CMatrix& a) {
  double m = 0.0;
  for (const auto& x : a.data()) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const CMatrix& a) {
  return std::all_of(a.data().begin(), a.data().end(),
                     [](cplx x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

double hermitian_defect(const CMatrix& a) {
  if (!a.square()) fail(ErrorCode::kInvalidArgument, "hermitian_defect needs a square matrix");
  const double norm = hs_norm(a);
  if (norm == 0.0) return 0.0;
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::norm(a(i, j) - std::conj(a(j, i)));
  return std::sqrt(s) / norm;
}

namespace {

double off_diagonal_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

}  // namespace

SpectralData hermitian_eigen(const CMatrix& in, double tol, int max_sweeps) {
  if (!in.square()) fail(ErrorCode::kInvalidArgument, "hermitian_eigen needs a square matrix");
  const std::size_t n = in.rows();

  CMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (in(i, j) + std::conj(in(j, i)));
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  CMatrix v = CMatrix::identity(n);
  const double scale = hs_norm(a);
  int sweep = 0;

  while (sweep < max_sweeps && off_diagonal_norm(a) > tol * scale) {
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Phase e^{i phi} = apq/|apq| turns the (p,q) block real symmetric; then a
        // real rotation with tan(theta) = t annihilates it.
        const cplx ph = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // G: column p -> c e_p - s conj(ph) e_q, column q -> s ph e_p + c e_q.
        const cplx g_pp = c, g_qp = -s * std::conj(ph), g_pq = s * ph, g_qq = c;

        for (std::size_t k = 0; k < n; ++k) {  // A <- A G
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * g_pp + akq * g_qp;
          a(k, q) = akp * g_pq + akq * g_qq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- G^* A
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
          a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {  // V <- V G
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * g_pp + vkq * g_qp;
          v(k, q) = vkp * g_pq + vkq * g_qq;
        }
      }
    }
  }
  if (off_diagonal_norm(a) > tol * scale * 10.0)
    fail(ErrorCode::kNotConverged, "hermitian_eigen: Jacobi sweeps did not converge");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  SpectralData out;
  out.sweeps = sweep;
  out.eigenvalues.resize(n);
  out.eigenvectors = CMatrix(n, n);
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  return out;
}

std::vector<double> singular_values(const CMatrix& a, int max_sweeps) {
  const std::size_t m = a.rows(), n = a.cols();
  // Columns stored contiguously so each rotation touches two dense arrays.
  std::vector<std::vector<cplx>> col(n, std::vector<cplx>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) col[j][i] = a(i, j);

  constexpr double eps = 1e-15;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double alpha = 0.0, beta = 0.0;
        cplx gamma{};
        for (std::size_t k = 0; k < m; ++k) {
          alpha += std::norm(col[i][k]);
          beta += std::norm(col[j][k]);
          gamma += std::conj(col[i][k]) * col[j][k];
        }
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= eps * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const cplx ph = gamma / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t k = 0; k < m; ++k) {
          const cplx xi = col[i][k];
          const cplx xj = col[j][k] * std::conj(ph);
          col[i][k] = c * xi - s * xj;
          col[j][k] = s * xi + c * xj;
        }
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sv(n);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (const auto& x : col[j]) s += std::norm(x);
    sv[j] = std::sqrt(s);
  }
  std::sort(sv.begin(), sv.end(), std::greater<>());
  if (sv.size() > m) sv.resize(m);
  return sv;
}

double trace_norm(const CMatrix& a) {
  const auto sv = singular_values(a);
  return std::accumulate(sv.begin(), sv.end(), 0.0);
}

double op_norm(const CMatrix& a) {
  const auto sv = singular_values(a);
  return sv.empty() ? 0.0 : sv.front();
}

}  // namespace tto
