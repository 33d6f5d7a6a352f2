#include <random>

#include "doctest.h"
#include "tto/matrix.hpp"

using namespace tto;

namespace {

CMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CMatrix a(n, n);
  for (auto& x : a.data()) x = {u(rng), u(rng)};
  return a;
}

// Householder reflector I - 2 v v^* / |v|^2: an exactly unitary test basis.
CMatrix householder(const std::vector<cplx>& v) {
  double nn = 0.0;
  for (const auto& x : v) nn += std::norm(x);
  CMatrix h = CMatrix::identity(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) h(i, j) -= 2.0 * v[i] * std::conj(v[j]) / nn;
  return h;
}

}  // namespace

TEST_CASE("identity norms") {
  for (std::size_t n : {1u, 4u, 9u}) {
    const auto id = CMatrix::identity(n);
    CHECK(trace(id).real() == doctest::Approx(n));
    CHECK(hs_norm(id) == doctest::Approx(std::sqrt(n)));
    CHECK(trace_norm(id) == doctest::Approx(n));
    CHECK(op_norm(id) == doctest::Approx(1.0));
  }
}

TEST_CASE("unit rank one projection has trace norm one") {
  std::vector<cplx> u{{0.6, 0.0}, {0.0, 0.8}};
  CHECK(trace_norm(CMatrix::outer(u, u)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(singular_values(CMatrix::outer(u, u))[1] < 1e-14);
}

TEST_CASE("trace norm dominates the trace") {
  std::mt19937_64 rng(7);
  for (int k = 0; k < 20; ++k) {
    const auto a = random_matrix(6, rng);
    CHECK(trace_norm(a) >= std::abs(trace(a)) - 1e-12);
  }
}

TEST_CASE("singular values of a scaled unitary") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const std::size_t n = 7;
  std::vector<cplx> v(n), w(n);
  for (auto& x : v) x = {u(rng), u(rng)};
  for (auto& x : w) x = {u(rng), u(rng)};
  const std::vector<double> sigma{5.0, 3.0, 2.5, 1.0, 0.1, 1e-6, 0.0};
  CMatrix d(n, n);
  for (std::size_t k = 0; k < n; ++k) d(k, k) = sigma[k];
  const CMatrix a = householder(v) * d * householder(w);
  const auto s = singular_values(a);
  for (std::size_t k = 0; k < n; ++k) CHECK(s[k] == doctest::Approx(sigma[k]).epsilon(1e-12).scale(1.0));
  CHECK(trace_norm(a) == doctest::Approx(11.600001).epsilon(1e-12));
  CHECK(op_norm(a) == doctest::Approx(5.0));
}

TEST_CASE("Hermitian eigen: 2x2 closed form") {
  CMatrix a(2, 2);
  a(0, 0) = 2.0;
  a(0, 1) = cplx{0.0, 1.0};
  a(1, 0) = cplx{0.0, -1.0};
  a(1, 1) = 2.0;
  const auto s = hermitian_eigen(a);
  CHECK(s.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(s.eigenvalues[1] == doctest::Approx(3.0));
}

TEST_CASE("Hermitian eigen: residual, orthonormality and known spectrum") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n : {3u, 16u, 40u}) {
    std::vector<cplx> v(n);
    for (auto& x : v) x = {u(rng), u(rng)};
    const CMatrix q = householder(v);
    std::vector<double> d(n);
    for (std::size_t k = 0; k < n; ++k) d[k] = std::cos(1.3 * static_cast<double>(k)) * 4.0;
    CMatrix diag(n, n);
    for (std::size_t k = 0; k < n; ++k) diag(k, k) = d[k];
    const CMatrix a = q * diag * q.adjoint();
    const auto s = hermitian_eigen(a);

    std::sort(d.begin(), d.end());
    for (std::size_t k = 0; k < n; ++k) CHECK(s.eigenvalues[k] == doctest::Approx(d[k]).scale(4.0).epsilon(1e-11));
    CMatrix lam(n, n);
    for (std::size_t k = 0; k < n; ++k) lam(k, k) = s.eigenvalues[k];
    CHECK(hs_norm(a * s.eigenvectors - s.eigenvectors * lam) < 1e-8 * hs_norm(a));
    CHECK(hs_norm(s.eigenvectors.adjoint() * s.eigenvectors - CMatrix::identity(n)) < 1e-8);
  }
}

TEST_CASE("Hermitian defect and finiteness") {
  std::mt19937_64 rng(5);
  const auto a = random_matrix(5, rng);
  CHECK(hermitian_defect(a + a.adjoint()) < 1e-15);
  CHECK(hermitian_defect(a) > 0.1);
  CHECK(hermitian_defect(CMatrix(3, 3)) == 0.0);
  CMatrix b = a;
  b(1, 2) = cplx{NAN, 0.0};
  CHECK_FALSE(all_finite(b));
  CHECK(all_finite(a));
}

TEST_CASE("products and adjoints") {
  std::mt19937_64 rng(9);
  const auto a = random_matrix(4, rng);
  const auto b = random_matrix(4, rng);
  CHECK(hs_norm((a * b).adjoint() - b.adjoint() * a.adjoint()) < 1e-14);
  const std::vector<cplx> x{1.0, cplx{0.0, 1.0}, -2.0, 0.5};
  const auto y = a.apply(x);
  for (std::size_t i = 0; i < 4; ++i) {
    cplx s{};
    for (std::size_t j = 0; j < 4; ++j) s += a(i, j) * x[j];
    CHECK(std::abs(y[i] - s) < 1e-15);
  }
}
