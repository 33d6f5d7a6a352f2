#include <numbers>

#include "doctest.h"
#include "tto/parse.hpp"
#include "tto/symbol.hpp"

using namespace tto;

TEST_CASE("complex literals") {
  CHECK(parse_complex("1") == cplx{1.0});
  CHECK(parse_complex("-0.5") == cplx{-0.5});
  CHECK(parse_complex("0.3i") == cplx{0.0, 0.3});
  CHECK(parse_complex("-i") == cplx{0.0, -1.0});
  CHECK(parse_complex("i") == cplx{0.0, 1.0});
  CHECK(parse_complex("1+2i") == cplx{1.0, 2.0});
  CHECK(parse_complex(" 1e-3-4.5e-2i ") == cplx{1e-3, -4.5e-2});
  CHECK(parse_complex("2e+1i") == cplx{0.0, 20.0});
  CHECK_THROWS_AS(parse_complex("abc"), Error);
  CHECK_THROWS_AS(parse_complex(""), Error);
  CHECK_THROWS_AS(parse_real("1.5x"), Error);
  CHECK(parse_integer("+12") == 12);
  const auto list = parse_complex_list("0, 0.5 ,0.3i");
  REQUIRE(list.size() == 3);
  CHECK(list[2] == cplx{0.0, 0.3});
}

TEST_CASE("formatting round-trips") {
  for (const cplx z : {cplx{0.1, 0.0}, cplx{0.0, -2.5}, cplx{1.0 / 3.0, 1e-20}, cplx{-7.0, -0.125}})
    CHECK(parse_complex(format_complex(z)) == z);
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.1) == "0.1");
}

TEST_CASE("symbols") {
  const auto cos2 = parse_symbol("cos");
  CHECK(cos2.is_trig());
  CHECK(cos2.is_real());
  CHECK(cos2.degree() == 1);
  CHECK(std::abs(cos2(0.4) - 2.0 * std::cos(0.4)) < 1e-15);

  const auto s = parse_symbol("c1=1, c-1=1");
  CHECK(s.coefficients() == cos2.coefficients());
  CHECK(parse_symbol(s.describe()).coefficients() == s.coefficients());

  const auto c = parse_symbol("c2=0.5-1i,c0=3");
  CHECK_FALSE(c.is_real());
  CHECK(std::abs(c(1.1) - (3.0 + cplx{0.5, -1.0} * unit(2.2))) < 1e-15);

  const auto a = parse_symbol("abs_sin");
  CHECK_FALSE(a.is_trig());
  CHECK(a.is_real());
  CHECK_THROWS_AS(a.coefficients(), Error);
  CHECK_THROWS_AS(parse_symbol("wave"), Error);
  CHECK_THROWS_AS(parse_symbol("d1=1"), Error);

  CHECK_FALSE(parse_symbol("z").is_real());
  CHECK(parse_symbol("re_z").is_real());
  CHECK(Symbol::trig({{1, 0.0}}).coefficients().empty());
}

TEST_CASE("symbol algebra") {
  const auto z = Symbol::monomial(1), zb = Symbol::monomial(-1);
  const auto p = (z + zb) * (z + zb);
  CHECK(p.coefficients().at(2) == cplx{1.0});
  CHECK(p.coefficients().at(0) == cplx{2.0});
  CHECK(p.coefficients().at(-2) == cplx{1.0});
  const auto f = ScalarFunction::preset("cubic_minus_x");
  const auto comp = compose(f, Symbol::preset("cos"));
  for (int k = 0; k < 10; ++k) {
    const double x = 2.0 * std::cos(0.3 * k);
    CHECK(std::abs(comp(0.3 * k) - (x * x * x - x)) < 1e-13);
  }
  const auto sampled = compose_sampled(ScalarFunction::preset("abs"), Symbol::preset("cos"));
  CHECK(sampled(std::numbers::pi) == cplx{2.0});
  CHECK_THROWS_AS(compose(ScalarFunction::preset("exp"), z), Error);
}

TEST_CASE("scalar functions") {
  const auto sq = parse_function("square");
  CHECK(sq.is_polynomial());
  CHECK(sq(cplx{0.0, 2.0}) == cplx{-4.0});
  const auto p = parse_function("poly:1,0,-2i");
  CHECK(p(2.0) == cplx{1.0, -8.0});
  CHECK(parse_function(p.name()).coefficients() == p.coefficients());
  const auto e = parse_function("exp");
  CHECK_FALSE(e.is_polynomial());
  CHECK(e(cplx{1.0, 5.0}).real() == doctest::Approx(std::exp(1.0)));
  CHECK_THROWS_AS(parse_function("sinh"), Error);
}
