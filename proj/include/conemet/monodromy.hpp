#pragma once

#include <array>

#include "conemet/divisor.hpp"
#include "conemet/pathint.hpp"

namespace conemet {

// Monodromy matrices of the frame ODE around the three singular points,
// for positively oriented loops based at z0 = -1. M3 is integrated in the
// w = 1/z chart (a loop |w| = 1/3, i.e. |z| = 3) and cross-checked against
// (M1 M2)^{-1}; with this composition convention M1 M2 M3 = id.
struct MonodromyTriple {
  Mat2 M1, M2, M3;
  Complex basepoint{-1.0};
  double loop_radius = 0.4;    // circles around 0 and 1
  double wloop_radius = 1.0 / 3.0;
  double product_residual = 0;   // ||M1 M2 M3 - id||
  double wchart_residual = 0;    // ||M3 - (M1 M2)^{-1}||
};

// The three standard loops (the third one lives in the w chart).
PathSpec standard_loop1();
PathSpec standard_loop2();
PathSpec standard_loop3_wchart();

MonodromyTriple compute_monodromy(const Divisor& d, const IntegratorConfig& cfg = {});

// As compute_monodromy but for an arbitrary coefficient pair sharing the
// singular set {0,1,inf} (used for the surface frame equation too).
MonodromyTriple compute_monodromy_of(const CoeffFn& A, const CoeffFn& Aw,
                                     const IntegratorConfig& cfg = {});

// residual_j = |tr M_j + 2 cos B_j|
std::array<double, 3> verify_traces(const MonodromyTriple& m, const Divisor& d);

// cos^2 C1 + cos^2 C2 + cos^2 C3 + 2 cos C1 cos C2 cos C3 for an angle
// triple; a triple of SU(2) matrices with traces -2 cos C_j multiplying to
// the identity exists iff the value is <= 1.
struct AngleTripleTest {
  double value;
  bool attainable;
};
AngleTripleTest lemma_a_value(const std::array<double, 3>& C);

// Explicit SU(2) triple with a1 a2 a3 = id and tr a_j = -2 cos B_j, which
// exists iff the strict trace inequality holds.
struct StandardTriple {
  Mat2 a1, a2, a3;
  std::array<double, 3> angles;
};
StandardTriple standard_triple(const Divisor& d);

// Conjugates an irreducible monodromy triple into SU(2): solves
// M_j^* X M_j = X for a positive definite Hermitian X, takes P = X^{1/2}
// normalized to det 1, and sets U_j = P M_j P^{-1}. kernel_gap is the
// second-smallest singular value of the stacked linear system; it being
// far from zero certifies X is unique up to scale.
struct Unitarization {
  Mat2 P;
  Mat2 U1, U2, U3;
  double kernel_gap = 0;
  double max_unitary_defect = 0;
};
Unitarization unitarize(const MonodromyTriple& m);

// Fixed-point set classification of the unitarized group acting on
// hyperbolic 3-space: the whole space (group within +-id), a geodesic line
// (abelian, axis datum in `axis`), or a single point.
enum class DeformationTag { Point, GeodesicLine, WholeH3 };
struct DeformationClass {
  DeformationTag tag;
  Mat2 axis;  // trace-free anti-Hermitian direction; only for GeodesicLine
};
DeformationClass classify_deformation(const std::vector<Mat2>& generators, double tol = 1e-8);
const char* deformation_name(DeformationTag t);

// Developing map from a frame: g = -(F12 - G F22)/(F11 - G F21), the ratio
// -dF12/dF11 evaluated through the ODE. The one-argument form is the metric
// case G = z; the two-argument form is used by the surface frame, where G is
// its own Gauss map. Throws Indeterminate on 0/0.
Complex develop_g(Complex z, const Mat2& F);
Complex develop_g_along(Complex G, const Mat2& F);

}  // namespace conemet
