#pragma once

#include <vector>

#include "conemet/core.hpp"

namespace conemet {

// Dense polynomial with ascending complex coefficients: c[0] + c[1] z + ...
// Small degrees only (the developing maps here stay below degree ~40).
struct Poly {
  std::vector<Complex> c;

  Poly() = default;
  explicit Poly(std::vector<Complex> coeffs) : c(std::move(coeffs)) { trim(); }

  static Poly one() { return Poly({Complex(1.0)}); }
  static Poly monomial(int k, Complex lead = 1.0);
  // prod (z - r) over roots.
  static Poly from_roots(const std::vector<Complex>& roots);

  int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero poly
  void trim(double tol = 0.0);

  Complex eval(Complex z) const;
  Poly deriv() const;
  Poly antideriv() const;  // constant of integration 0
  Poly operator*(const Poly& o) const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(Complex s) const;

  // Polynomial long division: *this = q * d + r with deg r < deg d.
  void divmod(const Poly& d, Poly& q, Poly& r) const;
};

// Quotient of polynomials. No common-factor reduction is attempted.
struct RationalFn {
  Poly num;
  Poly den{Poly::one()};

  Complex eval(Complex z) const { return num.eval(z) / den.eval(z); }
  Complex deriv_eval(Complex z) const;  // quotient rule
  int degree() const;                   // max(deg num, deg den); degree as a map of the sphere
};

// Roots of a polynomial by Durand-Kerner iteration with Newton polish.
// Intended for well separated roots of modest degree.
std::vector<Complex> poly_roots(const Poly& p);

}  // namespace conemet
