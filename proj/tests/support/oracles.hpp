#pragma once

#include <random>
#include <vector>

#include "conemet/divisor.hpp"
#include "conemet/metriceval.hpp"
#include "conemet/monodromy.hpp"
#include "conemet/poly.hpp"

// Independent reference implementations used to cross-check the library.
// Everything here recomputes results along a different algorithmic route
// than the production code.
namespace oracle {

using conemet::Chart;
using conemet::Complex;
using conemet::Divisor;
using conemet::Mat2;
using conemet::MetricSource;

// Conjugator C with C^{-1} M_j C = a_j built from eigenvectors of M1 and a
// single diagonal rescale fixed against a2 (the production path instead
// solves for the invariant Hermitian form). det C = 1.
Mat2 step123_conjugator(const conemet::MonodromyTriple& m, const conemet::StandardTriple& st);

// Monic degree-N polynomial whose roots solve the residue-vanishing system,
// obtained as a null vector of the dense operator matrix (the production
// path uses a triangular recurrence / Newton iteration).
conemet::Poly eigen_null_poly(double nu, double m, int N);

// Mean over the circle |zeta - center| = r of d(log lambda)/d(log r).
// For a curvature-1 cone metric this equals (sum of enclosed orders)
// - area(disk)/(2 pi), which turns boundary data into an area check.
double boundary_flux(MetricSource& src, Chart chart, Complex center, double r, int n = 64,
                     double h = 1e-3);

// Unregularized 5-point curvature -Delta log(lambda)/lambda^2; trustworthy
// only far from the cones, which makes it a fair check of the production
// estimator there.
double raw_curvature(MetricSource& src, Chart chart, Complex zeta, double h);

// Rejection-samples a divisor with all orders non-integer (guard distance
// from integers) and trace condition value in [lLo, lHi].
Divisor random_divisor_in_L(std::mt19937_64& rng, double lLo, double lHi,
                            double betaLo = -0.9, double betaHi = 3.0,
                            double intGuard = 0.05);

}  // namespace oracle
