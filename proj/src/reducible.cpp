#include "conemet/reducible.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

namespace conemet {

namespace {

Complex ipow(Complex z, int n) {
  if (n < 0) return 1.0 / ipow(z, -n);
  Complex r = 1, p = z;
  while (n) {
    if (n & 1) r *= p;
    p *= p;
    n >>= 1;
  }
  return r;
}

// |z|^e as a real power, safe for e < 0 away from z = 0.
double rpow(double x, double e) { return std::pow(x, e); }

}  // namespace

MobiusPerm MobiusPerm::from_map(const std::array<int, 3>& s) {
  std::array<bool, 3> seen{};
  for (int v : s) {
    if (v < 0 || v > 2 || seen[v]) throw Error(Err::BadArgument, "not a permutation of {0,1,2}");
    seen[v] = true;
  }
  MobiusPerm p;
  p.s = s;
  return p;
}

Complex MobiusPerm::apply(Complex z) const {
  // The six Mobius maps permuting (0, 1, inf).
  if (s[0] == 0 && s[1] == 1) return z;
  if (s[0] == 1 && s[1] == 0) return 1.0 - z;
  if (s[0] == 2 && s[1] == 1) return 1.0 / z;
  if (s[0] == 0 && s[1] == 2) return z / (z - 1.0);
  if (s[0] == 1 && s[1] == 2) return 1.0 / (1.0 - z);
  return (z - 1.0) / z;  // (2,0,1)
}

Complex MobiusPerm::deriv(Complex z) const {
  if (s[0] == 0 && s[1] == 1) return 1.0;
  if (s[0] == 1 && s[1] == 0) return -1.0;
  if (s[0] == 2 && s[1] == 1) return -1.0 / (z * z);
  if (s[0] == 0 && s[1] == 2) return -1.0 / ((z - 1.0) * (z - 1.0));
  if (s[0] == 1 && s[1] == 2) return 1.0 / ((1.0 - z) * (1.0 - z));
  return 1.0 / (z * z);
}

MobiusPerm MobiusPerm::inverse() const {
  MobiusPerm p;
  for (int k = 0; k < 3; ++k) p.s[s[k]] = k;
  return p;
}

const char* h1_case_name(H1Case c) {
  switch (c) {
    case H1Case::A: return "a";
    case H1Case::B: return "b";
    case H1Case::C: return "c";
    case H1Case::D: return "d";
  }
  return "?";
}

const char* existence_name(Existence e) {
  switch (e) {
    case Existence::Exists: return "exists";
    case Existence::ProvenNonexistent: return "nonexistent";
    case Existence::Undetermined: return "undetermined";
  }
  return "?";
}

Complex DevelopingMap::value(Complex z) const {
  Complex pre = mu == 0 ? Complex(1) : std::pow(z, mu);
  return t * pre * num.eval(z) / den.eval(z);
}

Complex DevelopingMap::derivative(Complex z) const {
  const Complex b = den.eval(z);
  Complex pre = nu1 == 0 ? Complex(1) : std::pow(z, nu1);
  return t * c * pre * ipow(z - 1.0, nu2) / (b * b);
}

double DevelopingMap::lambda(Complex z) const {
  // 2|dg|/(1+|g|^2) with |dg| taken from the closed form of the derivative;
  // clearing den^2 keeps everything finite-away-from-cones and branch free.
  const double b2 = std::norm(den.eval(z));
  const double u2 = std::norm(num.eval(z));
  const double zp = rpow(std::abs(z), nu1) * rpow(std::abs(z - 1.0), double(nu2));
  const double gpref = mu == 0 ? 1.0 : rpow(std::abs(z), 2 * mu);
  return 2.0 * t * std::abs(c) * zp / (b2 + t * t * gpref * u2);
}

double DevelopingMap::lambda_wchart(Complex w) const {
  const int N = den.degree();
  const int M = num.degree();
  // Reversed-coefficient polynomials: w^N den(1/w), w^M num(1/w).
  Poly bt = den, ut = num;
  std::reverse(bt.c.begin(), bt.c.end());
  std::reverse(ut.c.begin(), ut.c.end());
  const double nu3 = -nu1 - nu2 + 2 * N - 2;
  const double kappa = 2.0 * (N - mu - M);
  const double aw = std::abs(w);
  const double b2 = std::norm(bt.eval(w));
  const double u2 = std::norm(ut.eval(w));
  return 2.0 * t * std::abs(c) * rpow(aw, nu3) * rpow(std::abs(1.0 - w), double(nu2)) /
         (b2 + t * t * rpow(aw, kappa) * u2);
}

DevelopingMap one_parameter_family(const DevelopingMap& g, double t) {
  if (!(t > 0)) throw Error(Err::BadArgument, "family parameter must be positive");
  DevelopingMap h = g;
  h.t = g.t * t;
  return h;
}

Poly residue_system_polynomial(double nu, double m, int N) {
  if (N < 0) throw Error(Err::BadArgument, "negative root count");
  Poly b;
  b.c.assign(size_t(N) + 1, Complex(0));
  b.c[size_t(N)] = 1.0;
  const double lam = N * (N - 1.0) - N * (nu + m);
  for (int k = N - 1; k >= 0; --k) {
    // (lam - mu_k) b_k = (k+1)(nu - k) b_{k+1}, never degenerate here:
    // lam - mu_k = (N-k)(N+k-1-nu-m) with nu+m non-integer (one-integer
    // case) or nu+m = 2N + beta3' > 2N - 2 (all-integer case).
    const double muk = k * (k - 1.0) - k * (nu + m);
    b.c[size_t(k)] = (k + 1.0) * (nu - k) * b.c[size_t(k) + 1] / (lam - muk);
  }
  return b;
}

namespace {

struct SystemFn {
  double nu, m;
  int N;

  Eigen::VectorXcd value(const Eigen::VectorXcd& a) const {
    Eigen::VectorXcd f(N);
    for (int j = 0; j < N; ++j) {
      Complex s = nu / a(j) + m / (a(j) - 1.0);
      for (int k = 0; k < N; ++k)
        if (k != j) s -= 2.0 / (a(j) - a(k));
      f(j) = s;
    }
    return f;
  }

  Eigen::MatrixXcd jacobian(const Eigen::VectorXcd& a) const {
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(N, N);
    for (int j = 0; j < N; ++j) {
      Complex diag = -nu / (a(j) * a(j)) - m / ((a(j) - 1.0) * (a(j) - 1.0));
      for (int k = 0; k < N; ++k)
        if (k != j) {
          const Complex d = a(j) - a(k);
          diag += 2.0 / (d * d);
          J(j, k) = -2.0 / (d * d);
        }
      J(j, j) = diag;
    }
    return J;
  }
};

bool valid_roots(const std::vector<Complex>& a, double sep) {
  for (size_t j = 0; j < a.size(); ++j) {
    if (std::abs(a[j]) < sep || std::abs(a[j] - 1.0) < sep) return false;
    for (size_t k = j + 1; k < a.size(); ++k)
      if (std::abs(a[j] - a[k]) < sep) return false;
  }
  return true;
}

// Unordered-set distance for dedup.
double set_distance(std::vector<Complex> x, std::vector<Complex> y) {
  auto key = [](const Complex& p, const Complex& q) {
    return p.real() != q.real() ? p.real() < q.real() : p.imag() < q.imag();
  };
  std::sort(x.begin(), x.end(), key);
  std::sort(y.begin(), y.end(), key);
  double d = 0;
  for (size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

}  // namespace

std::vector<std::vector<Complex>> solve_residue_system(double nu, double m, int N,
                                                       const SolverConfig& cfg) {
  std::vector<std::vector<Complex>> found;
  if (N == 0) {
    found.push_back({});
    return found;
  }
  const SystemFn sys{nu, m, N};
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> ur(-3.0, 3.0);

  // Any genuine root set is the root set of the unique monic eigenpolynomial,
  // so membership in it is required. This rejects the spurious Newton limits
  // where all a_j escape to infinity together (the system degenerates there
  // and |F| alone cannot tell).
  const Poly b = residue_system_polynomial(nu, m, N);
  auto on_polynomial = [&](const std::vector<Complex>& roots) {
    for (Complex a : roots) {
      double scale = std::pow(1.0 + std::abs(a), double(N));
      if (std::abs(b.eval(a)) > 1e-6 * scale) return false;
    }
    return true;
  };

  auto push_unique = [&](std::vector<Complex> roots) {
    if (!valid_roots(roots, cfg.separation)) return;
    if (!on_polynomial(roots)) return;
    for (const auto& f : found)
      if (set_distance(f, roots) < 1e-6) return;
    found.push_back(std::move(roots));
  };

  for (int trial = 0; trial < cfg.multistart; ++trial) {
    Eigen::VectorXcd a(N);
    for (int j = 0; j < N; ++j) {
      Complex z;
      do {
        z = Complex(0.5 + ur(rng), ur(rng));
      } while (std::abs(z - 0.5) > 3.0 || std::abs(z) < 0.05 || std::abs(z - 1.0) < 0.05);
      a(j) = z;
    }
    double fn = sys.value(a).norm();
    bool ok = false;
    for (int it = 0; it < cfg.max_newton_iter; ++it) {
      Eigen::VectorXcd f = sys.value(a);
      fn = f.norm();
      if (fn < cfg.newton_tol) {
        ok = true;
        break;
      }
      Eigen::VectorXcd step = sys.jacobian(a).partialPivLu().solve(-f);
      if (!step.allFinite()) break;
      // Damping: accept the longest step in {1, 1/2, ...} that reduces |f|.
      double alpha = 1.0;
      bool moved = false;
      for (int bt = 0; bt < 8; ++bt, alpha *= 0.5) {
        Eigen::VectorXcd an = a + alpha * step;
        bool clear = true;
        for (int j = 0; j < N && clear; ++j) {
          if (std::abs(an(j)) < 1e-10 || std::abs(an(j) - 1.0) < 1e-10) clear = false;
          for (int k = j + 1; k < N; ++k)
            if (std::abs(an(j) - an(k)) < 1e-12) clear = false;
        }
        if (!clear) continue;
        if (sys.value(an).norm() < fn || alpha < 0.1) {
          a = an;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    if (ok) push_unique(std::vector<Complex>(a.data(), a.data() + N));
  }

  // Deterministic fallback: roots of the eigenpolynomial itself.
  std::vector<Complex> cand = poly_roots(b);
  if (cand.size() == size_t(N)) {
    // Polish through the original system before accepting.
    Eigen::VectorXcd a(N);
    for (int j = 0; j < N; ++j) a(j) = cand[size_t(j)];
    if (valid_roots(cand, cfg.separation)) {
      for (int it = 0; it < 12; ++it) {
        Eigen::VectorXcd f = sys.value(a);
        if (f.norm() < cfg.newton_tol) break;
        Eigen::VectorXcd step = sys.jacobian(a).partialPivLu().solve(-f);
        if (!step.allFinite()) break;
        a += step;
      }
      if (sys.value(a).norm() < std::sqrt(cfg.newton_tol))
        push_unique(std::vector<Complex>(a.data(), a.data() + N));
    }
  }
  return found;
}

double residue_check(const ReducibleSolution& s, int quad_points) {
  if (s.roots.empty()) return 0.0;
  double worst = 0;
  for (size_t j = 0; j < s.roots.size(); ++j) {
    const Complex aj = s.roots[j];
    double dmin = std::min(std::abs(aj), std::abs(aj - 1.0));
    for (size_t k = 0; k < s.roots.size(); ++k)
      if (k != j) dmin = std::min(dmin, std::abs(aj - s.roots[k]));
    const double r = 0.5 * dmin;
    // Fixed local branch of z^{nu1} on the circle: z/a_j stays near 1, so the
    // principal log of the ratio is continuous.
    const Complex base = std::log(aj);
    Complex acc = 0;
    for (int q = 0; q < quad_points; ++q) {
      const double th = 2 * kPi * q / quad_points;
      const Complex e(std::cos(th), std::sin(th));
      const Complex z = aj + r * e;
      Complex den = 1;
      for (size_t k = 0; k < s.roots.size(); ++k) {
        const Complex d = z - s.roots[k];
        den *= d * d;
      }
      const Complex zp = std::exp(s.nu1 * (std::log(z / aj) + base));
      const Complex dg = s.c * zp * ipow(z - 1.0, s.nu2) / den;
      acc += dg * e;
    }
    worst = std::max(worst, std::abs(acc * r / double(quad_points)));
  }
  return worst;
}

namespace {

ReducibleSolution make_solution(ReducibilityClass klass, std::optional<H1Case> hc, int N,
                                std::vector<Complex> roots, double nu1, int nu2, Complex c,
                                const std::array<double, 3>& sbeta, const MobiusPerm& perm) {
  ReducibleSolution s;
  s.klass = klass;
  s.h1_case = hc;
  s.N = N;
  s.roots = std::move(roots);
  s.nu1 = nu1;
  s.nu2 = nu2;
  s.nu3 = -nu1 - nu2 + 2.0 * N - 2.0;
  s.c = c;
  s.solver_beta = sbeta;
  s.perm = perm;
  return s;
}

long checked_int(double b, const char* what) {
  const double r = std::round(b);
  if (std::abs(b - r) > kIntegerTol)
    throw Error(Err::ConditionViolated, std::string(what) + " must be an integer");
  return long(r);
}

}  // namespace

SolveResult solve_h3(const Divisor& d, const SolverConfig& cfg) {
  std::array<long, 3> b;
  for (int j = 0; j < 3; ++j) {
    b[size_t(j)] = checked_int(d.beta[size_t(j)], "order");
    if (b[size_t(j)] < 1)
      throw Error(Err::ConditionViolated,
                  "all-integer construction needs strictly positive orders");
  }
  // Normalize to ascending order; perm records where each original point went.
  std::array<int, 3> idx{0, 1, 2};
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return b[size_t(x)] < b[size_t(y)]; });
  std::array<int, 3> s{};
  for (int rank = 0; rank < 3; ++rank) s[size_t(idx[size_t(rank)])] = rank;
  const MobiusPerm perm = MobiusPerm::from_map(s);
  const std::array<long, 3> sb{b[size_t(idx[0])], b[size_t(idx[1])], b[size_t(idx[2])]};
  const std::array<double, 3> sbeta{double(sb[0]), double(sb[1]), double(sb[2])};

  SolveResult res;
  if ((sb[0] + sb[1] + sb[2]) % 2 != 0) {
    res.existence = Existence::ProvenNonexistent;
    res.note = "odd total order: no rational developing map";
    return res;
  }
  const long twoN = sb[0] + sb[1] - sb[2];
  if (twoN < 0) {
    res.existence = Existence::ProvenNonexistent;
    res.note = "largest order exceeds the sum of the others";
    return res;
  }
  const int N = int(twoN / 2);
  for (auto& roots : solve_residue_system(double(sb[0]), double(sb[1]), N, cfg)) {
    ReducibleSolution sol = make_solution(ReducibilityClass::H3Reducible, std::nullopt, N,
                                          roots, double(sb[0]), int(sb[1]), Complex(1), sbeta,
                                          perm);
    sol.residue_bound = residue_check(sol);
    if (sol.residue_bound < cfg.residue_tol * std::abs(sol.c))
      res.solutions.push_back(std::move(sol));
  }
  if (!res.solutions.empty()) {
    res.existence = Existence::Exists;
  } else if (N <= 2) {
    res.existence = Existence::ProvenNonexistent;
    res.note = "root system has no admissible solution (closed-form range)";
  } else {
    res.existence = Existence::Undetermined;
    res.note = "no certified root set found within the search budget";
  }
  return res;
}

SolveResult solve_h1(const Divisor& d, const SolverConfig& cfg) {
  int j0 = -1;
  for (int j = 0; j < 3; ++j)
    if (integer_order(d, j)) {
      if (j0 >= 0) throw Error(Err::BadArgument, "more than one integer order");
      j0 = j;
    }
  if (j0 < 0) throw Error(Err::BadArgument, "no integer order in divisor");
  const long m = checked_int(d.beta[size_t(j0)], "middle order");
  if (m == 0)
    throw Error(Err::ConditionViolated,
                "integer order 0 is outside the supported family (needs >= 1)");

  std::array<int, 3> s{0, 1, 2};
  std::swap(s[size_t(j0)], s[1]);
  const MobiusPerm perm = MobiusPerm::from_map(s);
  // solver_beta[k] = original beta at the point that lands on solver point k
  std::array<double, 3> sbeta{};
  for (int k = 0; k < 3; ++k) sbeta[size_t(s[size_t(k)])] = d.beta[size_t(k)];
  const double b1 = sbeta[0], b3 = sbeta[2];

  struct CaseSpec {
    H1Case tag;
    double twoN, nu1;
  };
  const CaseSpec cases[4] = {
      {H1Case::A, b1 + m + b3 + 2.0, b1},
      {H1Case::B, m - b1 - b3 - 2.0, -b1 - 2.0},
      {H1Case::C, b1 + m - b3, b1},
      {H1Case::D, m + b3 - b1, -b1 - 2.0},
  };

  SolveResult res;
  bool any_admissible = false;
  bool any_open = false;  // admissible, empty, but beyond the closed-form range
  for (const auto& cs : cases) {
    const double nr = std::round(cs.twoN / 2.0);
    if (std::abs(cs.twoN - 2.0 * nr) > kIntegerTol || nr < 0) continue;
    any_admissible = true;
    const int N = int(nr);
    // The numerator u of g = z^mu u/b has degree m - N (its leading term
    // cannot cancel for non-integer mu), so N > m kills the case outright.
    if (N > m) continue;
    bool certified_here = false;
    for (auto& roots : solve_residue_system(cs.nu1, double(m), N, cfg)) {
      // Monic numerator normalization forces the dg scale c = -(nu3+1).
      const double nu3 = -cs.nu1 - m + 2.0 * N - 2.0;
      ReducibleSolution sol = make_solution(ReducibilityClass::H1Reducible, cs.tag, N, roots,
                                            cs.nu1, int(m), Complex(-(nu3 + 1.0)), sbeta, perm);
      sol.residue_bound = residue_check(sol);
      if (sol.residue_bound < cfg.residue_tol * std::abs(sol.c)) {
        res.solutions.push_back(std::move(sol));
        certified_here = true;
      }
    }
    if (!certified_here && N > 2) any_open = true;
  }

  if (!res.solutions.empty()) {
    res.existence = Existence::Exists;
  } else if (!any_admissible) {
    res.existence = Existence::ProvenNonexistent;
    res.note = "no case yields a non-negative integer root count";
  } else if (any_open) {
    res.existence = Existence::Undetermined;
    res.note = "no certified root set found within the search budget";
  } else {
    res.existence = Existence::ProvenNonexistent;
    res.note = "every admissible case is empty (closed-form range)";
  }
  return res;
}

SolveResult decide_existence(const Divisor& d, const SolverConfig& cfg) {
  ReducibilityClass klass;
  try {
    klass = classify_reducibility(d);
  } catch (const Error& e) {
    if (e.code != Err::TwoIntegers) throw;
    SolveResult res;
    res.existence = Existence::ProvenNonexistent;
    res.note = e.what();
    return res;
  }
  switch (klass) {
    case ReducibilityClass::Irreducible: {
      SolveResult res;
      const auto v = irreducible_exists(d);
      res.existence = v.exists ? Existence::Exists : Existence::ProvenNonexistent;
      res.note = v.exists ? "irreducible: trace inequality holds"
                          : "irreducible: trace inequality fails";
      return res;
    }
    case ReducibilityClass::H3Reducible: return solve_h3(d, cfg);
    case ReducibilityClass::H1Reducible: return solve_h1(d, cfg);
  }
  throw Error(Err::BadArgument, "unreachable");
}

DevelopingMap build_developing_map(const ReducibleSolution& s) {
  DevelopingMap g;
  g.nu1 = s.nu1;
  g.nu2 = s.nu2;
  g.c = s.c;
  g.den = Poly::from_roots(s.roots);

  if (s.klass == ReducibilityClass::H3Reducible) {
    g.mu = 0;
    // dg = c z^{b1} (z-1)^{b2} / den^2; with vanishing residues the
    // antiderivative is Qint(z) - sum_j s_j/(z - a_j), normalized so g(0)=0.
    Poly numer = Poly::monomial(int(std::lround(s.nu1)), s.c);
    Poly zm1{{Complex(-1), Complex(1)}};
    for (int k = 0; k < s.nu2; ++k) numer = numer * zm1;
    Poly den2 = g.den * g.den;
    Poly Q, R;
    numer.divmod(den2, Q, R);
    const Poly Qint = Q.antideriv();

    std::vector<Complex> sj(s.roots.size());
    for (size_t j = 0; j < s.roots.size(); ++j) {
      Complex prod = 1;
      for (size_t k = 0; k < s.roots.size(); ++k)
        if (k != j) prod *= (s.roots[j] - s.roots[k]) * (s.roots[j] - s.roots[k]);
      sj[j] = R.eval(s.roots[j]) / prod;
      // First-order part must be absent: d/dz [ R / prod_{k!=j}(z-a_k)^2 ] at a_j.
      Complex dsum = 0;
      for (size_t k = 0; k < s.roots.size(); ++k)
        if (k != j) dsum += 2.0 / (s.roots[j] - s.roots[k]);
      const Complex rj = (R.deriv().eval(s.roots[j]) - R.eval(s.roots[j]) * dsum) / prod;
      if (std::abs(rj) > 1e-7 * (1.0 + std::abs(s.c)))
        throw Error(Err::IntegrationObstruction,
                    "nonzero residue after certification; solver inconsistency");
    }

    // num = (Qint - Qint(0)) * den - sum_j s_j * den/(z-a_j) - (sum_j s_j/a_j) * den
    Poly num = (Qint + Poly{{-Qint.eval(0.0)}}) * g.den;
    Complex shift = 0;
    for (size_t j = 0; j < s.roots.size(); ++j) {
      std::vector<Complex> rest;
      for (size_t k = 0; k < s.roots.size(); ++k)
        if (k != j) rest.push_back(s.roots[k]);
      num = num + Poly::from_roots(rest) * (-sj[j]);
      shift += sj[j] / s.roots[j];
    }
    num = num + g.den * (-shift);
    num.trim();
    g.num = num;
    return g;
  }

  // One-integer case: g = z^mu u(z)/den with monic u solving
  //   mu u den + z (u' den - u den') = c (z-1)^{nu2}.
  g.mu = s.nu1 + 1.0;
  const int M = s.nu2 - s.N;
  if (M < 0)
    throw Error(Err::IntegrationObstruction, "numerator degree would be negative");
  Poly rhs = Poly{{s.c}};
  Poly zm1{{Complex(-1), Complex(1)}};
  for (int k = 0; k < s.nu2; ++k) rhs = rhs * zm1;

  auto apply_T = [&](const Poly& u) {
    // mu u den + z (u' den - u den')
    Poly zP{{Complex(0), Complex(1)}};
    return (u * g.den) * Complex(g.mu) + zP * (u.deriv() * g.den - u * g.den.deriv());
  };

  const int rows = s.nu2 + 1;
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(rows, M + 1);
  for (int k = 0; k <= M; ++k) {
    Poly Tk = apply_T(Poly::monomial(k, 1.0));
    for (int r = 0; r < rows; ++r)
      A(r, k) = r < int(Tk.c.size()) ? Tk.c[size_t(r)] : Complex(0);
  }
  Eigen::VectorXcd rv = Eigen::VectorXcd::Zero(rows);
  for (int r = 0; r < rows; ++r)
    if (r < int(rhs.c.size())) rv(r) = rhs.c[size_t(r)];
  // Monic normalization: move the leading column to the right-hand side.
  Eigen::VectorXcd rhs2 = rv - A.col(M);
  Eigen::VectorXcd u0;
  if (M == 0) {
    u0.resize(0);
  } else {
    u0 = A.leftCols(M).colPivHouseholderQr().solve(rhs2);
  }
  Poly u;
  u.c.assign(size_t(M) + 1, Complex(0));
  for (int k = 0; k < M; ++k) u.c[size_t(k)] = u0(k);
  u.c[size_t(M)] = 1.0;
  const double resid = (A * Eigen::Map<Eigen::VectorXcd>(u.c.data(), M + 1) - rv).norm();
  if (resid > 1e-8 * (1.0 + rv.norm()))
    throw Error(Err::IntegrationObstruction, "numerator ansatz is inconsistent");
  g.num = u;
  return g;
}

int count_degree_h3(const Divisor& d) {
  long total = 0;
  for (int j = 0; j < 3; ++j) {
    const long b = checked_int(d.beta[size_t(j)], "order");
    if (b < 1) throw Error(Err::ConditionViolated, "orders must be positive integers");
    total += b;
  }
  if (total % 2 != 0) throw Error(Err::ParityError, "odd total order");
  return int(total / 2 + 1);
}

}  // namespace conemet
