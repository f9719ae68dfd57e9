#pragma once

#include <memory>
#include <string>

#include "conemet/divisor.hpp"
#include "conemet/hopf.hpp"
#include "conemet/metriceval.hpp"
#include "conemet/monodromy.hpp"
#include "conemet/pathint.hpp"

namespace conemet {

// Data of the three-ended constant-mean-curvature-1 surface attached to a
// divisor: the hyperbolic Gauss map G is the degree-2 rational map with
// branch points at the umbilics (the zeros q1, q2 of the Hopf differential),
// normalized so G(z) = z + (q1-q2)^2 / (2(2z - q1 - q2)).
struct SurfaceSpec {
  Divisor divisor;
  Complex q1, q2;    // lexicographic by (re, im); possibly equal
  double L = 0;      // trace-condition value of the divisor
  // Ulp-level noise in the quadratic's coefficients splits an exact double
  // root by sqrt(eps) ~ 1e-8, so the double-umbilic test must sit above that.
  bool degenerate() const { return std::abs(q1 - q2) < 1e-7; }
};

// Throws ConditionViolated unless the divisor admits an irreducible metric
// (trace condition value < 1), which is exactly the existence condition for
// the surface.
SurfaceSpec make_surface(const Divisor& d);

// G and dG/dz; PoleHit within kPoleTol of (q1+q2)/2.
Complex surface_gauss_map(const SurfaceSpec& s, Complex z);
Complex surface_gauss_map_deriv(const SurfaceSpec& s, Complex z);

// The Hopf differential coefficient; same value as evaluate_Q on the divisor.
Complex surface_hopf(const SurfaceSpec& s, Complex z);

// Density of ds_sharp^2 = (1+|G|^2)^2 |Q/dG|^2; the umbilic zeros cancel
// exactly, leaving poles only at 0, 1, infinity.
double dsharp_metric(const SurfaceSpec& s, Complex z);

// Coefficient matrix of the frame equation dF = A_s F dz, where
// A_s = [[G, -G^2], [1, -G]] * Q/dG, in closed rational form (the umbilic
// factors cancel; the only poles are z = 0, 1). surface_coefficient_wchart
// is -A_s(1/w)/w^2.
Mat2 surface_coefficient(const SurfaceSpec& s, Complex z);
Mat2 surface_coefficient_wchart(const SurfaceSpec& s, Complex w);

// Frame data with certified-unitary monodromy: integrating dF = A_s F dz
// from F(z0) = P^{-1} makes every loop act by an SU(2) factor, so x = F F^*
// is single-valued.
struct SurfaceFrame {
  SurfaceSpec spec;
  MonodromyTriple monodromy;
  Unitarization unit;
  Mat2 initial_frame;  // P^{-1}
};

SurfaceFrame build_surface_frame(const SurfaceSpec& s, const IntegratorConfig& cfg = {});

// Point of the Hermitian model of hyperbolic 3-space.
struct HyperbolicPoint {
  Mat2 x;  // positive Hermitian, det 1
  double hermitian_defect() const;
  double det_defect() const;
};

// Continues the frame from the basepoint to z and projects x = F F^*.
// Throws NonUnitaryMonodromy if the frame's monodromy certification is
// missing (unitary defect above 1e-6).
HyperbolicPoint immerse(const SurfaceFrame& sf, Complex z, const IntegratorConfig& cfg = {});

// Pseudometric dsigma_x^2: the pullback of the round metric under the
// secondary map F^{-1} composed with G. Its divisor adds the two umbilics
// (order 1 each) to the cone orders.
std::unique_ptr<FrameSource> surface_sigma_source(
    const SurfaceFrame& sf, IntegratorConfig cfg = FrameSource::tight_config());

// TA = 2 pi (4 + b1 + b2 + b3); always >= 4 pi on admissible divisors.
double total_abs_curvature(const SurfaceSpec& s);

// Triangulated sample of the immersion in upper-half-space coordinates
// (h = 1/x22, zeta = x12/x22), written as a Wavefront OBJ.
void export_mesh_obj(const SurfaceFrame& sf, const std::string& path, int radial = 24,
                     int angular = 48);

}  // namespace conemet
