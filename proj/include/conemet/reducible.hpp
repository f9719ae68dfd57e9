#pragma once

#include <optional>
#include <vector>

#include "conemet/divisor.hpp"
#include "conemet/poly.hpp"

namespace conemet {

// Mobius transformation permuting the marked points {0, 1, inf}. Used to
// carry solutions computed in a normalized labeling (H3: sorted orders;
// H1: integer order at the middle point) back to the caller's labeling.
struct MobiusPerm {
  std::array<int, 3> s{0, 1, 2};  // point k maps to point s[k]

  static MobiusPerm identity() { return {}; }
  static MobiusPerm from_map(const std::array<int, 3>& s);
  Complex apply(Complex z) const;
  Complex deriv(Complex z) const;
  MobiusPerm inverse() const;
  bool is_identity() const { return s[0] == 0 && s[1] == 1 && s[2] == 2; }
};

enum class H1Case { A, B, C, D };
const char* h1_case_name(H1Case c);

// Explicit developing map of a reducible metric,
//   g(z) = t * z^mu * num(z) / den(z),
// with dg = t * c * z^{nu1} (z-1)^{nu2} / den(z)^2 dz. The H3 (all-integer)
// case has mu = 0 and rational g; the H1 case has non-integer mu and g is
// multivalued with diagonal monodromy (continuation around 0 multiplies g
// by e^{2 pi i mu}). The conformal factor lambda is single-valued either way.
struct DevelopingMap {
  double mu = 0;
  double nu1 = 0;
  int nu2 = 0;
  Complex c{1};
  Poly num, den;
  double t = 1;  // one-parameter family scale (only meaningful for H1)

  Complex value(Complex z) const;       // principal branch of z^mu
  Complex derivative(Complex z) const;  // principal branch
  // 2|dg|/(1+|g|^2): branch free and pole safe.
  double lambda(Complex z) const;
  double lambda_wchart(Complex w) const;  // factor of the same metric in w = 1/z
};

DevelopingMap one_parameter_family(const DevelopingMap& g, double t);

struct ReducibleSolution {
  ReducibilityClass klass;
  std::optional<H1Case> h1_case;
  int N = 0;
  std::vector<Complex> roots;  // a_1..a_N, distinct, not 0 or 1
  double nu1 = 0, nu3 = 0;     // orders of dg at 0 and inf
  int nu2 = 0;                 // order of dg at 1 (= integer beta_2)
  Complex c{1};                // dg scale; H1: forced to -(nu3+1) by monic num
  std::array<double, 3> solver_beta{};  // divisor in the solver's labeling
  MobiusPerm perm;             // original point k sits at solver point perm.s[k]
  double residue_bound = 0;    // from certification
};

enum class Existence { Exists, ProvenNonexistent, Undetermined };
const char* existence_name(Existence e);

struct SolveResult {
  Existence existence = Existence::Undetermined;
  std::vector<ReducibleSolution> solutions;
  std::string note;
};

struct SolverConfig {
  int multistart = 200;
  unsigned long long seed = 12345;
  double newton_tol = 1e-12;
  int max_newton_iter = 60;
  double residue_tol = 1e-9;  // relative to |c|
  double separation = 1e-8;   // min root separation and distance to {0,1}
};

// Residue-vanishing ("electrostatic") system
//   nu/a_j + m/(a_j-1) - sum_{k != j} 2/(a_j - a_k) = 0.
// Production path: damped Newton with multistart. Deterministic fallback:
// the root set, when it exists, is the root set of the unique monic
// degree-N polynomial solution of
//   z(z-1) b'' - [nu (z-1) + m z] b' = (N(N-1) - N(nu+m)) b,
// computed by a triangular solve in the monomial basis.
std::vector<std::vector<Complex>> solve_residue_system(double nu, double m, int N,
                                                       const SolverConfig& cfg = {});
Poly residue_system_polynomial(double nu, double m, int N);

// All-integer divisors (orders sorted internally; perm records the move).
SolveResult solve_h3(const Divisor& d, const SolverConfig& cfg = {});

// Exactly one integer order (moved internally to the middle point).
SolveResult solve_h1(const Divisor& d, const SolverConfig& cfg = {});

// Front door: classifies and dispatches. Irreducible divisors get their
// trace-condition verdict; two-integer divisors map to ProvenNonexistent.
SolveResult decide_existence(const Divisor& d, const SolverConfig& cfg = {});

// Max |residue| of dg over the roots, by contour quadrature.
double residue_check(const ReducibleSolution& s, int quad_points = 64);

// Constructs g. H3: termwise rational integration (certified residues make
// the antiderivative rational). H1: linear solve for the monic numerator u
// in mu*u*den + z*(u'*den - u*den') = c (z-1)^{nu2}.
DevelopingMap build_developing_map(const ReducibleSolution& s);

// (beta1+beta2+beta3)/2 + 1 for all-integer divisors; ParityError on odd sum.
int count_degree_h3(const Divisor& d);

}  // namespace conemet
