#include "doctest.h"
#include "tto/quadrature.hpp"

using namespace tto;

TEST_CASE("constants and characters") {
  const QuadratureConfig cfg;
  const auto one = integrate_circle([](const CirclePoint&) { return cplx{1.0}; }, cfg);
  CHECK(one.value == cplx{1.0});
  CHECK(one.converged);
  const auto z5 = integrate_circle([](const CirclePoint& z) { return std::pow(z.value(), 5); }, cfg);
  CHECK(std::abs(z5.value) < 1e-14);
}

TEST_CASE("peaked kernel normalization and grid growth") {
  const QuadratureConfig cfg;
  auto kernel = [](double r) {
    return [r](const CirclePoint& z) { return cplx{(1.0 - r * r) / std::norm(1.0 - r * z.value())}; };
  };
  const auto mild = integrate_circle(kernel(0.5), cfg);
  const auto sharp = integrate_circle(kernel(0.9), cfg);
  const auto sharper = integrate_circle(kernel(0.999), cfg);
  CHECK(std::abs(sharp.value - 1.0) < 1e-9);
  CHECK(std::abs(sharper.value - 1.0) < 1e-9);
  CHECK(sharp.converged);
  CHECK(sharper.points_used > mild.points_used);
  CHECK(sharper.estimated_error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(sharper.value)));
}

TEST_CASE("exact polynomials are stable under doubling") {
  QuadratureConfig cfg;
  cfg.initial_points = 16;
  const auto f = [](const CirclePoint& z) { return 3.0 + std::pow(z.value(), 3) - 2.0 * std::pow(std::conj(z.value()), 7); };
  const auto r = integrate_circle(f, cfg);
  CHECK(std::abs(r.value - 3.0) < 1e-15);
  CHECK(r.points_used == 32);
}

TEST_CASE("linearity at a fixed grid") {
  QuadratureConfig cfg;
  cfg.initial_points = cfg.max_points = 1024;
  const auto f = [](const CirclePoint& z) { return std::exp(z.value()) / (2.0 - z.value()); };
  const auto g = [](const CirclePoint& z) { return cplx{std::abs(std::sin(3 * z.angle()))}; };
  const cplx a{0.3, -1.2}, b{2.0, 0.5};
  const auto lin = integrate_circle([&](const CirclePoint& z) { return a * f(z) + b * g(z); }, cfg).value;
  const auto sep = a * integrate_circle(f, cfg).value + b * integrate_circle(g, cfg).value;
  CHECK(std::abs(lin - sep) < 1e-12);
}

TEST_CASE("non-convergence is reported") {
  QuadratureConfig cfg;
  cfg.initial_points = 16;
  cfg.max_points = 64;
  const auto r = integrate_circle(
      [](const CirclePoint& z) { return cplx{(1.0 - 0.9999 * 0.9999) / std::norm(1.0 - 0.9999 * z.value())}; }, cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.points_used == 64);
}

TEST_CASE("non-finite samples name the angle") {
  const QuadratureConfig cfg;
  try {
    integrate_circle([](const CirclePoint& z) { return z.angle() == 0.0 ? cplx{NAN} : cplx{1.0}; }, cfg);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonFinite);
    CHECK(std::string(e.what()).find("angle") != std::string::npos);
  }
}

TEST_CASE("config validation") {
  QuadratureConfig cfg;
  cfg.initial_points = 100;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.initial_points = 1 << 21;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.initial_points = 256;
  cfg.abs_tol = 0.0;
  CHECK_THROWS_AS(cfg.validate(), Error);
}

TEST_CASE("weighted L2 norms") {
  const QuadratureConfig cfg;
  const FiniteBlaschke two({0.0, 0.5});
  CHECK(weighted_l2_norm([](const CirclePoint&) { return cplx{0.0, 3.0}; }, two, cfg) == doctest::Approx(3.0));
  CHECK(weighted_l2_norm([](const CirclePoint& z) { return z.value(); }, two, cfg) == doctest::Approx(1.0));
  const FiniteBlaschke z6(std::vector<cplx>(6, 0.0));
  // nu_N = m for z^N: the plain L^2 norm of 1 + 2 zeta is sqrt(5).
  CHECK(weighted_l2_norm([](const CirclePoint& z) { return 1.0 + 2.0 * z.value(); }, z6, cfg) ==
        doctest::Approx(std::sqrt(5.0)));
}

TEST_CASE("Poisson means") {
  const QuadratureConfig cfg;
  const cplx l{0.3, 0.4};
  CHECK(std::abs(poisson_integral([](const CirclePoint&) { return cplx{1.0}; }, l, cfg) - 1.0) < 1e-12);
  CHECK(std::abs(poisson_integral([](const CirclePoint& z) { return z.value(); }, l, cfg) - l) < 1e-12);
  CHECK(std::abs(poisson_integral([](const CirclePoint& z) { return std::conj(z.value()); }, l, cfg) - std::conj(l)) <
        1e-12);
  CHECK_THROWS_AS(poisson_integral([](const CirclePoint&) { return cplx{1.0}; }, 1.0, cfg), Error);
}

TEST_CASE("nu_N integrals two ways") {
  const QuadratureConfig cfg;
  for (const auto& seq : {ZeroSequence::dense_nonblaschke(), ZeroSequence::constant_modulus(0.9)}) {
    for (std::size_t n : {8u, 64u}) {
      const FiniteBlaschke b(generate_zeros(seq, n));
      const auto f = [](const CirclePoint& z) {
        return 0.5 + std::pow(z.value(), 2) - cplx{0.0, 0.3} * std::conj(z.value());
      };
      const auto direct = integrate_circle([&](const CirclePoint& z) { return f(z) * nu_density(b, z); }, cfg,
                                           b.resolving_points(2));
      cplx mean{};
      for (const auto& l : b.zeros()) mean += poisson_integral(f, l, cfg);
      mean /= static_cast<double>(n);
      CHECK(std::abs(direct.value - mean) < 1e-8);
    }
  }
}

TEST_CASE("vector integrals share the grid") {
  const QuadratureConfig cfg;
  const ChunkKernel k = [](std::span<const double> angles, std::span<cplx> acc) {
    for (double a : angles) {
      acc[0] += 1.0;
      acc[1] += std::pow(unit(a), 2) * std::pow(unit(a), -2);
      acc[2] += unit(a);
    }
  };
  const auto r = integrate_circle_vector(3, k, cfg, 1000);
  // 1000 rounds up to 1024; one doubling confirms convergence.
  CHECK(r.points_used == 2048);
  CHECK(r.converged);
  CHECK(std::abs(r.values[0] - 1.0) < 1e-15);
  CHECK(std::abs(r.values[1] - 1.0) < 1e-14);
  CHECK(std::abs(r.values[2]) < 1e-15);
}

TEST_CASE("parallel_for covers every index once") {
  std::vector<int> hits(1000, 0);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  for (int h : hits) CHECK(h == 1);
  CHECK_THROWS(parallel_for(10, [](std::size_t i) {
    if (i == 3) throw std::runtime_error("boom");
  }));
}
