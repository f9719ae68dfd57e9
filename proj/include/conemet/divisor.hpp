#pragma once

#include <array>
#include <string>

#include "conemet/core.hpp"

namespace conemet {

// A divisor of conical orders at the marked points (0, 1, infinity), in that
// slot order. Orders are real and > -1; the cone angle at slot j is
// 2 pi (beta_j + 1). Arbitrary marked points are assumed already moved to
// (0, 1, infinity) by a Moebius change of coordinate.
struct Divisor {
  std::array<double, 3> beta{0, 0, 0};
  // Integrality certificates from exact (rational) input: -1 unknown (decide
  // by tolerance), 0 certified non-integer, 1 certified integer.
  std::array<signed char, 3> int_hint{-1, -1, -1};

  // Half cone angle B_j = pi (beta_j + 1); recomputed, never stored.
  double B(int j) const { return kPi * (beta[j] + 1.0); }
};

inline constexpr double kIntegerTol = 1e-9;

// Throws InvalidDivisor unless every order is > -1.
Divisor make_divisor(double b1, double b2, double b3);

// Parses "b1,b2,b3"; each entry is a decimal or an exact rational "p/q".
// Rational entries carry an integrality certificate that bypasses the
// tolerance test.
Divisor parse_divisor(const std::string& text);

bool integer_order(const Divisor& d, int j, double tol = kIntegerTol);

enum class ReducibilityClass { Irreducible, H1Reducible, H3Reducible };

const char* reducibility_name(ReducibilityClass c);

// Trichotomy on the number of integer orders: 0 -> Irreducible,
// 1 -> H1Reducible, 3 -> H3Reducible. Exactly two integer orders admit no
// metric in any class; that case throws TwoIntegers.
ReducibilityClass classify_reducibility(const Divisor& d, double tol = kIntegerTol);

// L(d) = cos^2 B1 + cos^2 B2 + cos^2 B3 + 2 cos B1 cos B2 cos B3.
// An irreducible metric exists iff L(d) < 1.
double trace_condition_value(const Divisor& d);

struct ExistenceVerdict {
  bool exists;
  double margin;  // 1 - L(d)
};

// Existence test for the irreducible class. Pre: classify_reducibility(d)
// is Irreducible.
ExistenceVerdict irreducible_exists(const Divisor& d);

}  // namespace conemet
