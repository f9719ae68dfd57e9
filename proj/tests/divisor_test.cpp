#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "conemet/divisor.hpp"

using namespace conemet;

namespace {

// Runs f, expecting it to throw Error with the given code.
template <typename F>
bool throws_code(F&& f, Err code) {
  try {
    f();
  } catch (const Error& e) {
    return e.code == code;
  }
  return false;
}

}  // namespace

TEST_CASE("make_divisor validates orders > -1") {
  Divisor d = make_divisor(-0.5, 0.25, 2.0);
  CHECK(d.beta[0] == -0.5);
  CHECK(d.beta[2] == 2.0);
  CHECK(throws_code([] { make_divisor(-1.0, 0, 0); }, Err::InvalidDivisor));
  CHECK(throws_code([] { make_divisor(0, -1.5, 0); }, Err::InvalidDivisor));
  CHECK(throws_code([] { make_divisor(0, 0, std::nan("")); }, Err::InvalidDivisor));
}

TEST_CASE("half angles B_j = pi (beta_j + 1)") {
  Divisor d = make_divisor(-0.5, 0.0, 2.0);
  CHECK(d.B(0) == doctest::Approx(kPi / 2).epsilon(1e-15));
  CHECK(d.B(1) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(d.B(2) == doctest::Approx(3 * kPi).epsilon(1e-15));
}

TEST_CASE("parse_divisor accepts decimals and rationals") {
  Divisor d = parse_divisor("-1/2,0.25,2");
  CHECK(d.beta[0] == -0.5);
  CHECK(d.beta[1] == 0.25);
  CHECK(d.beta[2] == 2.0);
  CHECK(d.int_hint[0] == 0);   // certified non-integer
  CHECK(d.int_hint[1] == -1);  // decimal: decided by tolerance later
  CHECK(d.int_hint[2] == -1);

  Divisor e = parse_divisor("4/2,6/3,2/1");
  CHECK(e.beta[0] == 2.0);
  CHECK(e.int_hint[0] == 1);  // certified integer
  CHECK(classify_reducibility(e) == ReducibilityClass::H3Reducible);
}

TEST_CASE("parse_divisor rejects malformed input") {
  CHECK(throws_code([] { parse_divisor("1,2"); }, Err::InvalidDivisor));
  CHECK(throws_code([] { parse_divisor("1,2,3,4"); }, Err::InvalidDivisor));
  CHECK(throws_code([] { parse_divisor("1,2,x"); }, Err::InvalidDivisor));
  CHECK(throws_code([] { parse_divisor("1,2,1/0"); }, Err::InvalidDivisor));
  CHECK(throws_code([] { parse_divisor("1,2,3.5.2"); }, Err::InvalidDivisor));
  CHECK(throws_code([] { parse_divisor("-2,0,0"); }, Err::InvalidDivisor));
}

TEST_CASE("integer_order: tolerance for decimals, certificates win") {
  Divisor d = make_divisor(2.0 + 5e-10, 0.5, 2.0 + 1e-6);
  CHECK(integer_order(d, 0));   // within 1e-9 of an integer
  CHECK(!integer_order(d, 1));
  CHECK(!integer_order(d, 2));

  // A rational certificate overrides the tolerance test.
  Divisor e = parse_divisor("2000000001/1000000000,0.5,0.5");
  CHECK(std::abs(e.beta[0] - 2.0) < 2e-9);
  CHECK(!integer_order(e, 0));
}

TEST_CASE("classify_reducibility trichotomy") {
  CHECK(classify_reducibility(make_divisor(-0.5, -0.5, -0.5)) ==
        ReducibilityClass::Irreducible);
  CHECK(classify_reducibility(make_divisor(0.5, 2, 0.5)) == ReducibilityClass::H1Reducible);
  CHECK(classify_reducibility(make_divisor(0.5, 1, 0.5)) == ReducibilityClass::H1Reducible);
  CHECK(classify_reducibility(make_divisor(1, 1, 2)) == ReducibilityClass::H3Reducible);
  CHECK(classify_reducibility(make_divisor(2, 2, 2)) == ReducibilityClass::H3Reducible);
  CHECK(throws_code([] { classify_reducibility(make_divisor(1, 2, 0.5)); },
                    Err::TwoIntegers));
  CHECK(throws_code([] { classify_reducibility(make_divisor(0.5, 1, 4)); },
                    Err::TwoIntegers));
}

TEST_CASE("trace condition value at exact anchors") {
  // beta = (-2/3)^3: B = pi/3, cos B = 1/2, L = 3/4 + 2/8 = 1 exactly.
  Divisor d = parse_divisor("-2/3,-2/3,-2/3");
  CHECK(trace_condition_value(d) == doctest::Approx(1.0).epsilon(1e-12));

  // beta = (-0.6)^3: B = 0.4 pi, cos B = (sqrt 5 - 1)/4.
  const double c = (std::sqrt(5.0) - 1.0) / 4.0;
  const double L6 = 3 * c * c + 2 * c * c * c;
  CHECK(trace_condition_value(make_divisor(-0.6, -0.6, -0.6)) ==
        doctest::Approx(L6).epsilon(1e-14));

  // beta = (-0.7)^3: B = 0.3 pi, cos B = sqrt(10 - 2 sqrt 5)/4 > threshold.
  const double s = std::sqrt(10.0 - 2.0 * std::sqrt(5.0)) / 4.0;
  const double L7 = 3 * s * s + 2 * s * s * s;
  CHECK(L7 > 1.0);
  CHECK(trace_condition_value(make_divisor(-0.7, -0.7, -0.7)) ==
        doctest::Approx(L7).epsilon(1e-14));

  // beta = (-1/2)^3: B = pi/2, L = 0.
  CHECK(std::abs(trace_condition_value(make_divisor(-0.5, -0.5, -0.5))) < 1e-15);
}

TEST_CASE("irreducible existence verdict") {
  ExistenceVerdict v = irreducible_exists(make_divisor(-0.5, -0.5, -0.5));
  CHECK(v.exists);
  CHECK(v.margin == doctest::Approx(1.0).epsilon(1e-12));

  ExistenceVerdict w = irreducible_exists(make_divisor(-0.7, -0.7, -0.7));
  CHECK(!w.exists);
  CHECK(w.margin < 0);
}

TEST_CASE("stable names") {
  CHECK(std::string(reducibility_name(ReducibilityClass::Irreducible)) == "Irreducible");
  CHECK(std::string(reducibility_name(ReducibilityClass::H1Reducible)) == "H1Reducible");
  CHECK(std::string(reducibility_name(ReducibilityClass::H3Reducible)) == "H3Reducible");
  CHECK(std::string(err_name(Err::NotUnitarizable)) == "NotUnitarizable");
  CHECK(std::string(err_name(Err::TwoIntegers)) == "TwoIntegers");
}
