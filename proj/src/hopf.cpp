#include "conemet/hopf.hpp"

#include <cmath>
#include <vector>

namespace conemet {

HopfDifferential hopf_from_divisor(const Divisor& d) {
  HopfDifferential q;
  for (int j = 0; j < 3; ++j) q.c[j] = -d.beta[j] * (d.beta[j] + 2.0) / 2.0;
  return q;
}

Complex evaluate_Q(const HopfDifferential& q, Complex z) {
  if (std::abs(z) < kPoleTol || std::abs(z - 1.0) < kPoleTol)
    throw Error(Err::PoleHit, "Q evaluated within 1e-12 of a pole");
  Complex zm = z * (z - 1.0);
  return q.numerator(z) / (2.0 * zm * zm);
}

Complex evaluate_Q_wchart(const HopfDifferential& q, Complex w) {
  if (std::abs(w) < kPoleTol || std::abs(w - 1.0) < kPoleTol)
    throw Error(Err::PoleHit, "Q evaluated within 1e-12 of a pole (w chart)");
  // q(1/w)/w^4 = (c1 w^2 + (c2-c1-c3) w + c3) / (2 w^2 (1-w)^2)
  Complex num = (q.c[0] * w + (q.c[1] - q.c[0] - q.c[2])) * w + q.c[2];
  Complex wm = w * (1.0 - w);
  return num / (2.0 * wm * wm);
}

Complex schwarzian_of_samples(const std::function<Complex(Complex)>& g, Complex z,
                              double h, int npts) {
  if (npts < 8) throw Error(Err::BadArgument, "need at least 8 stencil samples");
  // Fourier-side Cauchy derivatives: g^(k)(z) ~ k!/(N h^k) sum g(z+h e^{i t_m}) e^{-i k t_m}
  std::vector<Complex> vals(npts);
  for (int m = 0; m < npts; ++m) {
    double t = 2.0 * kPi * m / npts;
    vals[m] = g(z + h * std::exp(Complex(0, t)));
  }
  Complex d1 = 0, d2 = 0, d3 = 0;
  for (int m = 0; m < npts; ++m) {
    double t = 2.0 * kPi * m / npts;
    d1 += vals[m] * std::exp(Complex(0, -t));
    d2 += vals[m] * std::exp(Complex(0, -2.0 * t));
    d3 += vals[m] * std::exp(Complex(0, -3.0 * t));
  }
  d1 *= 1.0 / (npts * h);
  d2 *= 2.0 / (npts * h * h);
  d3 *= 6.0 / (npts * h * h * h);
  if (std::abs(d1) < 1e-10)
    throw Error(Err::DegenerateDerivative, "|g'| < 1e-10 in Schwarzian stencil");
  Complex r = d2 / d1;
  return d3 / d1 - 1.5 * r * r;
}

}  // namespace conemet
