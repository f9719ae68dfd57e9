#pragma once

#include <functional>
#include <vector>

#include "conemet/hopf.hpp"

namespace conemet {

// One path piece, parameterized over t in [0,1].
struct Segment {
  enum class Kind { Line, Arc };
  Kind kind;
  Complex a, b;        // line endpoints
  Complex center;      // arc data
  double radius = 0, th0 = 0, th1 = 0;

  static Segment line(Complex from, Complex to);
  // Circular arc center + radius, angle th0 -> th1 (signed sweep; a full
  // positively oriented loop is th1 = th0 + 2 pi).
  static Segment arc(Complex center, double radius, double th0, double th1);

  Complex at(double t) const;
  Complex velocity(double t) const;
  Complex start() const { return at(0.0); }
  Complex end() const { return at(1.0); }
  double arclength() const;
  double distance_to(Complex p) const;  // min over the segment
};

// Piecewise path in one chart. Singular points of the ODE ("obstacles",
// {0,1} in either chart) must stay at distance >= r_min from every point of
// the path; validate() enforces this and continuity of the chain.
struct PathSpec {
  std::vector<Segment> segs;
  double r_min = 0.05;
  std::vector<Complex> obstacles{Complex(0), Complex(1)};
  // Points where the coefficient merely varies fast (no pole): the step size
  // is capped near them but no clearance is required.
  std::vector<Complex> stiff_points;

  Complex start() const;
  Complex end() const;
  double arclength() const;
  void validate() const;  // throws PathTooClose / BadArgument

  static PathSpec polyline(const std::vector<Complex>& pts);
};

struct IntegratorConfig {
  double rtol = 1e-10;
  double atol = 1e-12;
  double max_step_frac = 0.1;  // cap: step arclength <= frac * distance to nearest obstacle
  int renorm_interval = 1;     // det renormalization every k accepted steps
};

using CoeffFn = std::function<Mat2(Complex)>;

struct IntegrationStats {
  long steps = 0;
  long rejected = 0;
  double det_drift = 0;  // max |det F - 1| seen before renormalization
};

// Solves dF/dz = A(z) F along the path with an embedded Dormand-Prince 5(4)
// pair on the 8 real dimensions of F. After each accepted step F is divided
// by the square root of det F closest to +1, so F returns in SL(2,C) to
// roundoff. Throws StepUnderflow if the controller collapses.
Mat2 integrate_frame(const PathSpec& path, const CoeffFn& A, const IntegratorConfig& cfg,
                     const Mat2& F0, IntegrationStats* stats = nullptr);

// Coefficient of the frame equation dF F^{-1} = [[z, -z^2], [1, -z]] Q/dz
// in the z chart, and its w = 1/z chart transform -A(1/w)/w^2.
Mat2 ode_coefficient(const HopfDifferential& q, Complex z);
Mat2 ode_coefficient_wchart(const HopfDifferential& q, Complex w);

// Reflection symmetry across the real axis: integrates F along the path and
// along its complex-conjugate mirror and returns
// || conj(F_mirror) - F_path ||. Pre: path starts on the negative real axis
// and F starts at the identity; the coefficient must have real structure
// (true for ode_coefficient of any divisor).
double conjugate_symmetry_check(const PathSpec& path, const HopfDifferential& q,
                                const IntegratorConfig& cfg = {});

}  // namespace conemet
