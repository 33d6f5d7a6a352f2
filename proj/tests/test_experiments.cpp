#include "doctest.h"
#include "tto/experiments.hpp"
#include "tto/operators.hpp"

using namespace tto;

namespace {

ExperimentConfig base(ZeroSequence seq, const char* phi, const char* f, std::vector<std::size_t> ns) {
  ExperimentConfig cfg;
  cfg.sequence = std::move(seq);
  cfg.symbol = Symbol::preset(phi);
  cfg.function = ScalarFunction::preset(f);
  cfg.n_values = std::move(ns);
  return cfg;
}

void check_gap_invariant(const std::vector<ConvergenceRecord>& rs) {
  for (const auto& r : rs) CHECK(r.gap == std::abs(r.lhs - r.rhs));
}

}  // namespace

TEST_CASE("szego_gap: classical square case") {
  const auto rs = szego_gap(base(ZeroSequence::uniform_zero(), "cos", "square", {8, 16, 32, 64}));
  check_gap_invariant(rs);
  REQUIRE(rs.size() == 4);
  for (const auto& r : rs) {
    const double n = static_cast<double>(r.n);
    CHECK(std::abs(r.lhs - 2.0 * (n - 1.0) / n) < 1e-9);
    CHECK(std::abs(r.rhs - 2.0) < 1e-9);
    CHECK(std::abs(r.gap - 2.0 / n) < 1e-9);
  }
  CHECK(rs.back().lhs.real() == doctest::Approx(1.96875));
}

TEST_CASE("szego_gap: linear f is exact") {
  for (const auto& seq : {ZeroSequence::constant_modulus(0.5, PhaseRule::kRandom, 1), ZeroSequence::dense_nonblaschke()}) {
    auto cfg = base(seq, "cos", "identity", {8, 32});
    for (const auto& r : szego_gap(cfg)) CHECK(r.gap < 1e-7);
    cfg.symbol = Symbol::trig({{2, cplx{0.0, 1.0}}, {-1, 0.3}});
    for (const auto& r : szego_gap(cfg)) CHECK(r.gap < 1e-7);
  }
}

TEST_CASE("szego_gap: alternating moments") {
  // rhs = int zeta d nu_N = (1/N) sum_j lambda_j.
  const double l = 0.5;
  const auto rs = szego_gap(base(ZeroSequence::alternating_3k(l), "z", "identity", {3, 9, 27}));
  CHECK(std::abs(rs[0].rhs - l / 3) < 1e-9);
  CHECK(std::abs(rs[1].rhs + l / 3) < 1e-9);
  CHECK(std::abs(rs[2].rhs - 13 * l / 27) < 1e-9);
  for (const auto& r : rs) {
    cplx mean{};
    for (const auto& z : r.zeros) mean += z;
    CHECK(std::abs(r.rhs - mean / static_cast<double>(r.n)) < 1e-12);
    CHECK(std::abs(r.rhs - cplx{r.diag("nu_moment_re"), r.diag("nu_moment_im")}) < 1e-12);
  }
}

TEST_CASE("szego_gap: pointwise function needs a real symbol") {
  auto cfg = base(ZeroSequence::uniform_zero(), "z", "abs", {4});
  CHECK_THROWS_AS(szego_gap(cfg), Error);
  cfg.symbol = Symbol::preset("abs_sin");
  CHECK_NOTHROW(szego_gap(cfg));
}

TEST_CASE("stz_trace: classical reduction and the Fejer route") {
  const auto rs = stz_trace(base(ZeroSequence::uniform_zero(), "cos", "square", {64}));
  CHECK(std::abs(rs[0].lhs - 1.96875) < 1e-9);
  CHECK(std::abs(rs[0].rhs - 2.0) < 1e-12);

  // f = identity: Tr[T(beta) T(phi)] = int E_N phi dm, E_N phi via the Berezin transform.
  const auto cfg = base(ZeroSequence::dense_nonblaschke(), "re_z", "identity", {12});
  const auto r = stz_trace(cfg)[0];
  const FiniteBlaschke b(r.zeros);
  const auto t = build_truncated_toeplitz(b, cfg.symbol, cfg.quadrature).matrix;
  const auto route = integrate_circle([&](const CirclePoint& z) { return berezin_transform(t, b, z); }, cfg.quadrature,
                                      b.resolving_points(1));
  CHECK(std::abs(r.lhs - route.value) < 1e-6);
}

TEST_CASE("stz_trace: dense gap decreases") {
  const auto rs = stz_trace(base(ZeroSequence::dense_nonblaschke(), "re_z", "identity", {8, 16, 32, 64}));
  check_gap_invariant(rs);
  CHECK(rs.back().gap < rs.front().gap / 2);
}

TEST_CASE("angular condition (a)") {
  auto cfg = base(ZeroSequence::uniform_zero(), "cos", "identity", {8, 64});
  for (const auto& r : angular_condition_a(cfg)) CHECK(r.diag("beta_max") == doctest::Approx(1.0 / r.n).epsilon(1e-12));
  cfg.sequence = ZeroSequence::dense_nonblaschke();
  const auto rs = angular_condition_a(cfg);
  CHECK(rs[1].diag("beta_max") < rs[0].diag("beta_max") / 2);
  CHECK(rs[1].diag("beta_min") <= rs[1].diag("beta_median"));
  CHECK(rs[1].diag("beta_median") <= rs[1].diag("beta_max"));
}

TEST_CASE("angular condition (b)") {
  auto cfg = base(ZeroSequence::uniform_zero(), "cos", "identity", {8});
  cfg.angular.terms = 500;
  cfg.angular.grid_points = 4;
  const auto d = angular_condition_b(cfg);
  for (std::size_t p = 0; p < 4; ++p) {
    CHECK(d.final_sum(p) == doctest::Approx(500.0));
    REQUIRE(d.first_crossing[p][0].has_value());
    CHECK(*d.first_crossing[p][0] == 101);
  }
  CHECK(d.fraction_below(1000.0) == 1.0);
}

TEST_CASE("hs_approx_gap") {
  auto cfg = base(ZeroSequence::dense_nonblaschke(), "cos", "identity", {8});
  cfg.symbol = Symbol::constant(2.5);
  for (const auto& r : hs_approx_gap(cfg)) CHECK(std::abs(r.lhs) < 1e-12);

  cfg.sequence = ZeroSequence::uniform_zero();
  cfg.symbol = Symbol::preset("z");
  cfg.n_values = {8, 64};
  const auto cl = hs_approx_gap(cfg);
  CHECK(cl[1].lhs.real() < cl[0].lhs.real() / 2);

  // Expanding the square: value = int conj(phi) (phi - E_N phi) d nu_N, E_N via Berezin.
  cfg.sequence = ZeroSequence::dense_nonblaschke();
  cfg.symbol = Symbol::trig({{1, 0.5}, {-1, 0.5}, {2, cplx{0.0, 0.25}}});
  cfg.n_values = {10};
  const auto r = hs_approx_gap(cfg)[0];
  const FiniteBlaschke b(r.zeros);
  const auto t = build_truncated_toeplitz(b, cfg.symbol, cfg.quadrature).matrix;
  const auto route = integrate_circle(
      [&](const CirclePoint& z) {
        return std::conj(cfg.symbol(z)) * (cfg.symbol(z) - berezin_transform(t, b, z)) * nu_density(b, z);
      },
      cfg.quadrature, b.resolving_points(4));
  CHECK(std::abs(r.lhs - route.value) < 1e-6);
  CHECK(std::abs(r.diag("closed_form") - route.value.real()) < 1e-6);
}

TEST_CASE("product_defect_s1") {
  auto cfg = base(ZeroSequence::dense_nonblaschke(), "cos", "identity", {8, 32, 128});
  for (const auto& r : product_defect_s1(cfg, Symbol::preset("z"), Symbol::preset("zbar"))) {
    CHECK(std::abs(r.lhs - 1.0) < 1e-7);
    CHECK(r.diag("sigma_2") < 1e-7);
  }
  for (const auto& r : product_defect_s1(cfg, Symbol::monomial(2), Symbol::trig({{1, 1.0}, {3, 0.5}})))
    CHECK(std::abs(r.lhs) < 1e-8);

  cfg.n_values = {8, 16, 32, 64, 128};
  std::vector<double> v;
  for (const auto& r : product_defect_s1(cfg, Symbol::monomial(2), Symbol::monomial(-1))) v.push_back(r.lhs.real());
  const double mid = median(v);
  for (double x : v) CHECK(std::abs(x - mid) < 0.1 * mid);
  CHECK_THROWS_AS(product_defect_s1(cfg, Symbol::preset("abs_sin"), Symbol::monomial(1)), Error);
}

TEST_CASE("stz_defect_s1") {
  auto cfg = base(ZeroSequence::dense_nonblaschke(), "cos", "identity", {8, 16});
  for (const auto& r : stz_defect_s1(cfg)) CHECK(std::abs(r.lhs) < 1e-12);

  cfg = base(ZeroSequence::uniform_zero(), "cos", "square", {8, 16, 32, 64});
  const auto rs = stz_defect_s1(cfg);
  for (const auto& r : rs) CHECK(r.lhs.real() <= r.diag("inner_s1") / r.n + 1e-12);
  CHECK(rs.back().lhs.real() < rs.front().lhs.real() / 2);

  cfg.sequence = ZeroSequence::dense_nonblaschke();
  cfg.n_values = {8, 64};
  const auto dense = stz_defect_s1(cfg);
  CHECK(dense[1].lhs.real() < dense[0].lhs.real());

  cfg.function = ScalarFunction::preset("abs");
  CHECK_THROWS_AS(stz_defect_s1(cfg), Error);
}

TEST_CASE("fejer_suite") {
  auto cfg = base(ZeroSequence::uniform_zero(), "cos", "identity", {8, 16, 32});
  cfg.lemmas.random_polys = 5;
  const auto rs = fejer_suite(cfg);
  for (const auto& r : rs) CHECK(r.diag("contraction_max") <= 1.0 + 1e-6);
  // ||E_N f - f||^2 = 2/N^2 for f = zeta + conj(zeta), B = z^N.
  for (const auto& r : rs) CHECK(r.lhs.real() * r.lhs.real() == doctest::Approx(2.0 / (r.n * r.n)).epsilon(1e-8));
  for (std::size_t k = 1; k < rs.size(); ++k) CHECK(std::norm(rs[k].lhs) / std::norm(rs[k - 1].lhs) <= 0.6);

  cfg.symbol = Symbol::constant(1.0);
  for (const auto& r : fejer_suite(cfg)) {
    CHECK(std::abs(r.lhs) < 1e-10);
    CHECK(r.diag("pointwise_max") < 1e-10);
  }
}

TEST_CASE("random trig polynomials are reproducible") {
  const auto a = random_trig_poly(5, 3, 2), b = random_trig_poly(5, 3, 2), c = random_trig_poly(5, 4, 2);
  CHECK(a.coefficients() == b.coefficients());
  CHECK(a.coefficients() != c.coefficients());
  CHECK(a.degree() == 2);
  for (const auto& [k, v] : a.coefficients()) {
    CHECK(std::abs(v.real()) <= 1.0);
    CHECK(std::abs(v.imag()) <= 1.0);
  }
}

TEST_CASE("config validation") {
  auto cfg = base(ZeroSequence::uniform_zero(), "cos", "identity", {8, 8});
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.n_values = {};
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.n_values = {4};
  cfg.alpha_count = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg.alpha_count = 4;
  cfg.sequence = ZeroSequence::explicit_points({0.0, 0.5});
  cfg.n_values = {3};
  CHECK_THROWS_AS(cfg.validate(), Error);
  CHECK(median({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median({4.0, 1.0}) == 2.5);
}
