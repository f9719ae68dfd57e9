#pragma once

#include <array>
#include <functional>

#include "conemet/divisor.hpp"

namespace conemet {

// The quadratic differential Q = q(z) dz^2 attached to a divisor:
//   q(z) = (c3 z^2 + (c2 - c1 - c3) z + c1) / (2 z^2 (z-1)^2),
//   c_j = -beta_j (beta_j + 2) / 2.
// Q has double poles at 0, 1, infinity whose leading Laurent coefficients
// encode the three conical orders.
struct HopfDifferential {
  std::array<double, 3> c{0, 0, 0};

  // Numerator c3 z^2 + (c2 - c1 - c3) z + c1 evaluated by Horner.
  Complex numerator(Complex z) const {
    return (c[2] * z + (c[1] - c[0] - c[2])) * z + c[0];
  }
};

HopfDifferential hopf_from_divisor(const Divisor& d);

inline constexpr double kPoleTol = 1e-12;

// Coefficient q(z) in the z chart. Throws PoleHit within kPoleTol of {0,1}.
Complex evaluate_Q(const HopfDifferential& q, Complex z);

// Coefficient of Q in the w = 1/z chart: q(1/w) / w^4. Poles sit at w in
// {0,1}; the leading coefficient at w=0 is c3/2.
Complex evaluate_Q_wchart(const HopfDifferential& q, Complex w);

// Schwarzian derivative S(g) = (g''/g')' - (1/2)(g''/g')^2 estimated from
// samples of g on a circle of radius h around z (trapezoidal Cauchy
// derivatives, npts samples). The error is O((h/R)^(npts-3)) against the
// distance R to the nearest singularity of g, plus roundoff ~ eps/h^3, so
// h of order 0.1 R is accurate to ~1e-11 for npts = 24.
// Throws DegenerateDerivative if |g'(z)| < 1e-10.
Complex schwarzian_of_samples(const std::function<Complex(Complex)>& g, Complex z,
                              double h, int npts = 24);

}  // namespace conemet
