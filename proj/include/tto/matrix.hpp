#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tto/common.hpp"

namespace tto {

/// Dense row-major complex matrix.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);
  static CMatrix outer(std::span<const cplx> u, std::span<const cplx> v);  // u v^*

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> data() { return data_; }
  std::span<const cplx> data() const { return data_; }
  std::span<cplx> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const cplx> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  CMatrix adjoint() const;

  CMatrix& operator+=(const CMatrix& other);
  CMatrix& operator-=(const CMatrix& other);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
  friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
  friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
  friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
  friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

  std::vector<cplx> apply(std::span<const cplx> x) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

cplx trace(const CMatrix& a);
double hs_norm(const CMatrix& a);  // Frobenius
double max_abs(const CMatrix& a);
bool all_finite(const CMatrix& a);

/// Relative skew-Hermitian part ||A - A^*||_F / ||A||_F (0 for the zero matrix).
double hermitian_defect(const CMatrix& a);

struct SpectralData {
  std::vector<double> eigenvalues;  // ascending
  CMatrix eigenvectors;             // columns orthonormal
  int sweeps = 0;
};

/// Cyclic two-sided Jacobi rotations for a Hermitian matrix. Only the Hermitian
/// part (A + A^*)/2 is diagonalized; sweeps stop once the off-diagonal mass drops
/// below `tol` times the Frobenius norm.
SpectralData hermitian_eigen(const CMatrix& a, double tol = 1e-12, int max_sweeps = 100);

/// Singular values in descending order (one-sided Jacobi on the columns).
std::vector<double> singular_values(const CMatrix& a, int max_sweeps = 100);

double trace_norm(const CMatrix& a);
double op_norm(const CMatrix& a);

}  // namespace tto
