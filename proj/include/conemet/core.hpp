#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace conemet {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Failure taxonomy shared by all modules. Codes are stable identifiers that
// the CLI maps onto exit codes and JSON "error" fields.
enum class Err {
  InvalidDivisor,        // order <= -1, or malformed input
  TwoIntegers,           // exactly two integer orders: no metric in any class
  PoleHit,               // evaluation too close to a pole of Q
  DegenerateDerivative,  // |g'| below threshold in a Schwarzian stencil
  PathTooClose,          // path violates the clearance radius around {0,1}
  StepUnderflow,         // adaptive step shrank below 1e-14 x path length
  ReducibleInput,        // monodromy has a common eigenvector
  NotUnitarizable,       // trace condition fails, no SU(2) conjugate exists
  NoInvariantForm,       // invariant Hermitian form exists but is not definite
  ParityError,           // integer orders with odd total
  ConditionViolated,     // divisor outside the existence region of an op
  FitDiverged,           // least-squares fit failed to converge / ill posed
  Indeterminate,         // 0/0 in a developing-map quotient; caller perturbs
  IntegrationObstruction,  // nonzero residue surfaced after certification
  NonUnitaryMonodromy,   // immersion requested before monodromy was unitarized
  SingularityTooClose,   // curvature stencil has no room around the point
  BadArgument,           // CLI or API misuse
};

struct Error : std::runtime_error {
  Err code;
  Error(Err c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

const char* err_name(Err c);

// 2x2 complex matrix. Row major: [[a, b], [c, d]]. Value semantics; this is
// the frame, monodromy and Hermitian-form workhorse, so everything stays
// inline and allocation free.
struct Mat2 {
  Complex a{0}, b{0}, c{0}, d{0};

  static Mat2 id() { return {1, 0, 0, 1}; }

  Mat2 operator+(const Mat2& o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
  Mat2 operator-(const Mat2& o) const { return {a - o.a, b - o.b, c - o.c, d - o.d}; }
  Mat2 operator*(const Mat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d};
  }
  Mat2 operator*(Complex s) const { return {a * s, b * s, c * s, d * s}; }
  friend Mat2 operator*(Complex s, const Mat2& m) { return m * s; }
  Mat2& operator+=(const Mat2& o) { a += o.a; b += o.b; c += o.c; d += o.d; return *this; }

  Complex det() const { return a * d - b * c; }
  Complex tr() const { return a + d; }
  Mat2 inv() const {
    Complex dt = det();
    return {d / dt, -b / dt, -c / dt, a / dt};
  }
  Mat2 conj() const { return {std::conj(a), std::conj(b), std::conj(c), std::conj(d)}; }
  Mat2 transpose() const { return {a, c, b, d}; }
  Mat2 adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }

  double norm() const {
    return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
  }
  double dist(const Mat2& o) const { return (*this - o).norm(); }
};

inline double unitary_defect(const Mat2& m) { return (m * m.adjoint()).dist(Mat2::id()); }

}  // namespace conemet
