#include "conemet/poly.hpp"

#include <algorithm>
#include <cmath>

namespace conemet {

Poly Poly::monomial(int k, Complex lead) {
  Poly p;
  p.c.assign(k + 1, Complex(0));
  p.c[k] = lead;
  return p;
}

Poly Poly::from_roots(const std::vector<Complex>& roots) {
  Poly p = one();
  for (Complex r : roots) p = p * Poly({-r, Complex(1.0)});
  return p;
}

void Poly::trim(double tol) {
  while (!c.empty() && std::abs(c.back()) <= tol) c.pop_back();
}

Complex Poly::eval(Complex z) const {
  Complex acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly Poly::deriv() const {
  Poly p;
  for (std::size_t k = 1; k < c.size(); ++k) p.c.push_back(c[k] * double(k));
  return p;
}

Poly Poly::antideriv() const {
  Poly p;
  p.c.push_back(0);
  for (std::size_t k = 0; k < c.size(); ++k) p.c.push_back(c[k] / double(k + 1));
  return p;
}

Poly Poly::operator*(const Poly& o) const {
  if (c.empty() || o.c.empty()) return Poly();
  Poly p;
  p.c.assign(c.size() + o.c.size() - 1, Complex(0));
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = 0; j < o.c.size(); ++j) p.c[i + j] += c[i] * o.c[j];
  return p;
}

Poly Poly::operator+(const Poly& o) const {
  Poly p;
  p.c.assign(std::max(c.size(), o.c.size()), Complex(0));
  for (std::size_t i = 0; i < c.size(); ++i) p.c[i] += c[i];
  for (std::size_t i = 0; i < o.c.size(); ++i) p.c[i] += o.c[i];
  p.trim();  // exact cancellation must not leave phantom degrees
  return p;
}

Poly Poly::operator-(const Poly& o) const { return *this + o * Complex(-1.0); }

Poly Poly::operator*(Complex s) const {
  Poly p = *this;
  for (auto& x : p.c) x *= s;
  return p;
}

void Poly::divmod(const Poly& d, Poly& q, Poly& r) const {
  r = *this;
  q = Poly();
  int dd = d.degree();
  if (dd < 0) throw Error(Err::BadArgument, "polynomial division by zero");
  if (r.degree() >= dd) q.c.assign(r.degree() - dd + 1, Complex(0));
  while (r.degree() >= dd) {
    int k = r.degree() - dd;
    Complex f = r.c.back() / d.c.back();
    q.c[k] = f;
    for (int i = 0; i <= dd; ++i) r.c[i + k] -= f * d.c[i];
    r.c.pop_back();
  }
}

Complex RationalFn::deriv_eval(Complex z) const {
  Complex n = num.eval(z), d = den.eval(z);
  Complex np = num.deriv().eval(z), dp = den.deriv().eval(z);
  return (np * d - n * dp) / (d * d);
}

int RationalFn::degree() const { return std::max(num.degree(), den.degree()); }

std::vector<Complex> poly_roots(const Poly& p0) {
  Poly p = p0;
  p.trim(0.0);
  int n = p.degree();
  if (n < 1) return {};
  // normalize to monic
  for (auto& x : p.c) x /= p.c.back();
  Poly dp = p.deriv();
  // Durand-Kerner from a de-symmetrized circle
  std::vector<Complex> r(n);
  double rad = 0.0;
  for (int k = 0; k < n; ++k) rad = std::max(rad, std::pow(std::abs(p.c[k]), 1.0 / (n - k)));
  rad = 2.0 * std::max(rad, 0.5);
  for (int k = 0; k < n; ++k)
    r[k] = rad * std::exp(Complex(0, 2.0 * kPi * k / n + 0.35));
  for (int it = 0; it < 600; ++it) {
    double moved = 0.0;
    for (int k = 0; k < n; ++k) {
      Complex denom = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != k) denom *= (r[k] - r[j]);
      Complex step = p.eval(r[k]) / denom;
      r[k] -= step;
      moved = std::max(moved, std::abs(step));
    }
    if (moved < 1e-13 * std::max(1.0, rad)) break;
  }
  // Newton polish (helps simple roots reach machine accuracy)
  for (int k = 0; k < n; ++k) {
    for (int it = 0; it < 8; ++it) {
      Complex d = dp.eval(r[k]);
      if (std::abs(d) < 1e-300) break;
      Complex step = p.eval(r[k]) / d;
      r[k] -= step;
      if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(r[k]))) break;
    }
  }
  std::sort(r.begin(), r.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return r;
}

}  // namespace conemet
