#include <numbers>

#include "doctest.h"
#include "tto/clark.hpp"
#include "tto/operators.hpp"

using namespace tto;

namespace {

const QuadratureConfig kCfg;

// Brute-force scan for upward sign changes of Im(conj(alpha) B) where Re(conj(alpha) B) > 0,
// on samples offset by half a step. Returns the upper end of each bracket, in (0, 2 pi + h).
std::vector<double> scan_brackets(const FiniteBlaschke& b, cplx alpha, std::size_t samples) {
  const double h = kTwoPi / static_cast<double>(samples);
  std::vector<double> out;
  cplx prev = std::conj(alpha) * b(unit(-0.5 * h));
  for (std::size_t k = 0; k < samples; ++k) {
    const double a = (static_cast<double>(k) + 0.5) * h;
    const cplx cur = std::conj(alpha) * b(unit(a));
    if (cur.real() > 0.0 && prev.imag() < 0.0 && cur.imag() >= 0.0) out.push_back(a);
    prev = cur;
  }
  return out;
}

}  // namespace

TEST_CASE("classical supports are roots of unity") {
  for (std::size_t n : {1u, 5u, 12u}) {
    const FiniteBlaschke zn(std::vector<cplx>(n, 0.0));
    const auto s = clark_support(zn, 1.0);
    REQUIRE(s.size() == n);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(s[k].value() - unit(kTwoPi * k / n)) < 1e-12);
    const auto m = clark_measure(zn, 1.0);
    for (const auto& a : m.atoms) CHECK(a.weight == doctest::Approx(1.0 / n));
  }
  const FiniteBlaschke z2({0.0, 0.0});
  const auto s = clark_support(z2, -1.0);
  CHECK(std::abs(s[0].value() - cplx{0.0, 1.0}) < 1e-12);
  CHECK(std::abs(s[1].value() - cplx{0.0, -1.0}) < 1e-12);
}

TEST_CASE("two-zero example against a brute-force scan") {
  const FiniteBlaschke b({0.0, 0.5});
  const auto m = clark_measure(b, 1.0);
  REQUIRE(m.atoms.size() == 2);
  CHECK(m.max_residual < 1e-10);
  CHECK(m.total_mass() == doctest::Approx(1.0).epsilon(1e-8));
  const auto brackets = scan_brackets(b, 1.0, 100000);
  REQUIRE(brackets.size() == 2);
  const double h = kTwoPi / 100000;
  for (std::size_t k = 0; k < 2; ++k) {
    const double root = m.atoms[k].zeta.angle();
    const double hi = brackets[k];
    CHECK(root >= hi - h - 1e-12);
    CHECK(root <= hi + 1e-12);
  }
}

TEST_CASE("Clark measure invariants across generators") {
  for (const auto& seq : {ZeroSequence::dense_nonblaschke(), ZeroSequence::frostman_fast(),
                          ZeroSequence::constant_modulus(0.99, PhaseRule::kRandom, 3), ZeroSequence::alternating_3k(0.9)}) {
    const FiniteBlaschke b(generate_zeros(seq, 40));
    for (const auto& alpha : alpha_grid(8, 0.25)) {
      const auto m = clark_measure(b, alpha);
      REQUIRE(m.atoms.size() == 40);
      CHECK(m.max_residual < std::max(1e-10, m.residual_floor()));
      CHECK(std::abs(m.total_mass() - 1.0) < 1e-8);
      CHECK(m.max_weight() <= 1.0);
      for (std::size_t k = 1; k < m.atoms.size(); ++k) CHECK(m.atoms[k].zeta.angle() > m.atoms[k - 1].zeta.angle());
    }
  }
}

TEST_CASE("Clark residual at moderate |B'|") {
  for (const auto& seq : {ZeroSequence::dense_nonblaschke(), ZeroSequence::constant_modulus(0.9, PhaseRule::kRotation),
                          ZeroSequence::alternating_3k(0.5), ZeroSequence::uniform_zero()}) {
    const FiniteBlaschke b(generate_zeros(seq, 128));
    for (const auto& alpha : alpha_grid(4, 0.1)) CHECK(clark_measure(b, alpha).max_residual < 1e-10);
  }
  const FiniteBlaschke f(generate_zeros(ZeroSequence::frostman_fast(), 12));
  const auto m = clark_measure(f, unit(0.3));
  CHECK(m.residual_floor() < 1e-10);
  CHECK(m.max_residual < 1e-10);
}

TEST_CASE("phase winding") {
  for (const auto& seq : {ZeroSequence::dense_nonblaschke(), ZeroSequence::frostman_fast()}) {
    const FiniteBlaschke b(generate_zeros(seq, 33));
    const PhaseFunction phase(b);
    CHECK(std::abs(phase.winding() - kTwoPi * 33) < 1e-8);
    CHECK(phase.origin() >= 0.0);
    CHECK(phase.origin() < kTwoPi);
  }
}

TEST_CASE("supports for distinct alpha interlace") {
  const FiniteBlaschke b(generate_zeros(ZeroSequence::constant_modulus(0.9, PhaseRule::kRandom, 6), 15));
  const auto s1 = clark_support(b, unit(0.3));
  const auto s2 = clark_support(b, unit(2.9));
  std::vector<std::pair<double, int>> merged;
  for (const auto& z : s1) merged.emplace_back(z.angle(), 1);
  for (const auto& z : s2) merged.emplace_back(z.angle(), 2);
  std::sort(merged.begin(), merged.end());
  for (std::size_t k = 1; k < merged.size(); ++k) CHECK(merged[k].second != merged[k - 1].second);
}

TEST_CASE("beta norm equals the operator norm of beta(U)") {
  const FiniteBlaschke zn(std::vector<cplx>(7, 0.0));
  CHECK(clark_beta_norm(zn, unit(1.0)) == doctest::Approx(1.0 / 7));
  const FiniteBlaschke b(generate_zeros(ZeroSequence::dense_nonblaschke(), 16));
  const auto beta = Symbol::sampled([&](double a) { return cplx{1.0 / b.abs_derivative(a)}; }, "beta");
  const cplx alpha = unit(0.8);
  const auto m = build_clark_spectral(b, clark_measure(b, alpha), beta).matrix;
  CHECK(std::abs(op_norm(m) - clark_beta_norm(b, alpha)) < 1e-8);
}

TEST_CASE("Aleksandrov disintegration") {
  const FiniteBlaschke b({0.0, 0.5, cplx{0.0, 0.3}});
  const auto one = disintegration_check([](const CirclePoint&) { return cplx{1.0}; }, b, 4, kCfg);
  CHECK(std::abs(one.lhs - 1.0) < 1e-14);
  CHECK(std::abs(one.rhs - 1.0) < 1e-14);

  const auto re = disintegration_check([](const CirclePoint& z) { return cplx{z.value().real()}; }, b, 4, kCfg);
  CHECK(re.converged);
  CHECK(re.gap < 1e-6);

  const FiniteBlaschke z5(std::vector<cplx>(5, 0.0));
  const auto ch = disintegration_check([](const CirclePoint& z) { return std::pow(z.value(), 5); }, z5, 8, kCfg);
  CHECK(std::abs(ch.lhs) < 1e-12);
  CHECK(std::abs(ch.rhs) < 1e-12);
  CHECK_THROWS_AS(disintegration_check([](const CirclePoint&) { return cplx{1.0}; }, b, 3, kCfg), Error);
}

TEST_CASE("bad alpha") {
  const FiniteBlaschke b({0.0, 0.5});
  CHECK_THROWS_AS(clark_support(b, 0.5), Error);
}
