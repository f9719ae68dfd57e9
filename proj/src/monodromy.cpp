#include "conemet/monodromy.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "conemet/hopf.hpp"

namespace conemet {

namespace {

Eigen::Matrix2cd to_eigen(const Mat2& m) {
  Eigen::Matrix2cd e;
  e << m.a, m.b, m.c, m.d;
  return e;
}

Mat2 from_eigen(const Eigen::Matrix2cd& e) { return {e(0, 0), e(0, 1), e(1, 0), e(1, 1)}; }

}  // namespace

PathSpec standard_loop1() {
  PathSpec p;
  p.segs.push_back(Segment::line(-1.0, -0.4));
  p.segs.push_back(Segment::arc(0.0, 0.4, kPi, 3 * kPi));
  p.segs.push_back(Segment::line(-0.4, -1.0));
  return p;
}

PathSpec standard_loop2() {
  // Corridor passes below the real axis so it cannot touch the cut [0,1].
  const Complex mid(0.5, -0.6), entry(1.0, -0.4);
  PathSpec p;
  p.segs.push_back(Segment::line(-1.0, mid));
  p.segs.push_back(Segment::line(mid, entry));
  p.segs.push_back(Segment::arc(1.0, 0.4, -kPi / 2, 3 * kPi / 2));
  p.segs.push_back(Segment::line(entry, mid));
  p.segs.push_back(Segment::line(mid, -1.0));
  return p;
}

PathSpec standard_loop3_wchart() {
  PathSpec p;
  p.segs.push_back(Segment::line(-1.0, -1.0 / 3.0));
  p.segs.push_back(Segment::arc(0.0, 1.0 / 3.0, kPi, 3 * kPi));
  p.segs.push_back(Segment::line(-1.0 / 3.0, -1.0));
  return p;
}

MonodromyTriple compute_monodromy_of(const CoeffFn& A, const CoeffFn& Aw,
                                     const IntegratorConfig& cfg) {
  MonodromyTriple t;
  t.M1 = integrate_frame(standard_loop1(), A, cfg, Mat2::id());
  t.M2 = integrate_frame(standard_loop2(), A, cfg, Mat2::id());
  t.M3 = integrate_frame(standard_loop3_wchart(), Aw, cfg, Mat2::id());
  t.product_residual = (t.M1 * t.M2 * t.M3).dist(Mat2::id());
  t.wchart_residual = t.M3.dist((t.M1 * t.M2).inv());
  return t;
}

MonodromyTriple compute_monodromy(const Divisor& d, const IntegratorConfig& cfg) {
  const HopfDifferential q = hopf_from_divisor(d);
  auto A = [q](Complex z) { return ode_coefficient(q, z); };
  auto Aw = [q](Complex w) { return ode_coefficient_wchart(q, w); };
  return compute_monodromy_of(A, Aw, cfg);
}

std::array<double, 3> verify_traces(const MonodromyTriple& m, const Divisor& d) {
  std::array<double, 3> r;
  const Mat2* ms[3] = {&m.M1, &m.M2, &m.M3};
  for (int j = 0; j < 3; ++j) r[j] = std::abs(ms[j]->tr() + 2.0 * std::cos(d.B(j)));
  return r;
}

AngleTripleTest lemma_a_value(const std::array<double, 3>& C) {
  const double c1 = std::cos(C[0]), c2 = std::cos(C[1]), c3 = std::cos(C[2]);
  const double v = c1 * c1 + c2 * c2 + c3 * c3 + 2 * c1 * c2 * c3;
  // Equality triples (angle sum pi) land at 1 +- a few ulps; ties are
  // attainable (the diagonal triple realizes them), so round in their favor.
  return {v, v <= 1.0 + 32 * std::numeric_limits<double>::epsilon()};
}

StandardTriple standard_triple(const Divisor& d) {
  const auto verdict = irreducible_exists(d);
  if (!verdict.exists)
    throw Error(Err::NotUnitarizable, "no SU(2) triple with these traces: trace value >= 1");
  const double B1 = d.B(0), B2 = d.B(1), B3 = d.B(2);
  const double s1 = std::sin(B1);
  if (std::abs(s1) < 1e-12)
    throw Error(Err::NotUnitarizable, "sin B1 = 0 (integer first order)");
  // With a1 = diag(-e^{iB1}, -e^{-iB1}) and a2 = [[p,-q],[q,conj p]], the
  // trace constraints tr a2 = -2 cos B2 and tr(a1 a2) = -2 cos B3 force
  const Complex p = Complex(0, -1) * (std::polar(1.0, -B1) * std::cos(B2) + std::cos(B3)) / s1;
  const double q2 = 1.0 - std::norm(p);  // = (1 - L)/sin^2 B1 > 0
  if (!(q2 > 0))
    throw Error(Err::NotUnitarizable, "|p| >= 1: off-diagonal entry would vanish");
  const double q = std::sqrt(q2);
  StandardTriple t;
  t.angles = {B1, B2, B3};
  t.a1 = {-std::polar(1.0, B1), 0, 0, -std::polar(1.0, -B1)};
  t.a2 = {p, -q, q, std::conj(p)};
  t.a3 = (t.a1 * t.a2).inv();
  return t;
}

namespace {

bool nearly_scalar(const Eigen::Matrix2cd& M, double tol) {
  const Complex s = M.trace() / 2.0;
  return (M - s * Eigen::Matrix2cd::Identity()).norm() < tol;
}

// True iff some eigenvector of M is also an eigenvector of N.
bool common_eigenvector(const Eigen::Matrix2cd& M, const Eigen::Matrix2cd& N, double tol) {
  if (nearly_scalar(M, tol) || nearly_scalar(N, tol)) return true;
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(M);
  for (int k = 0; k < 2; ++k) {
    Eigen::Vector2cd v = es.eigenvectors().col(k).normalized();
    Eigen::Vector2cd r = N * v - (v.adjoint() * N * v)(0) * v;
    if (r.norm() < tol * N.norm()) return true;
  }
  return false;
}

}  // namespace

Unitarization unitarize(const MonodromyTriple& m) {
  const Eigen::Matrix2cd M1 = to_eigen(m.M1), M2 = to_eigen(m.M2);
  for (const Mat2* M : {&m.M1, &m.M2, &m.M3}) {
    if (std::abs(M->tr().imag()) > 1e-6 || std::abs(M->tr().real()) > 2.0 + 1e-6)
      throw Error(Err::NotUnitarizable, "monodromy trace outside [-2,2]");
  }
  if (common_eigenvector(M1, M2, 1e-8))
    throw Error(Err::ReducibleInput, "monodromy generators share an eigenvector");

  // Invariant-form equations M_j^* X M_j = X, stacked, in row-major vec
  // coordinates: (M^adj kron M^T - I) x = 0.
  const Eigen::Matrix2cd I2 = Eigen::Matrix2cd::Identity();
  Eigen::MatrixXcd K(8, 4);
  int row = 0;
  for (const Eigen::Matrix2cd* M : {&M1, &M2}) {
    const Eigen::Matrix2cd L = M->adjoint();
    const Eigen::Matrix2cd R = M->transpose();
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) K(row + 2 * i + j, 2 * k + l) = L(i, k) * R(j, l);
        K(row + 2 * i + j, 2 * i + j) -= 1.0;
      }
    row += 4;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(K, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Eigen::Vector4cd x = svd.matrixV().col(3);

  Eigen::Matrix2cd X;
  X << x(0), x(1), x(2), x(3);
  // The kernel vector is a complex scalar times a Hermitian matrix; take the
  // larger of the two Hermitian parts to remove the phase robustly.
  const Eigen::Matrix2cd H1 = 0.5 * (X + X.adjoint());
  const Eigen::Matrix2cd H2 = Complex(0, -0.5) * (X - X.adjoint());
  Eigen::Matrix2cd H = H1.norm() >= H2.norm() ? H1 : H2;

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eh(H);
  double l0 = eh.eigenvalues()(0), l1 = eh.eigenvalues()(1);
  if (l0 < 0 && l1 < 0) {
    H = -H;
    eh.compute(H);
    l0 = eh.eigenvalues()(0);
    l1 = eh.eigenvalues()(1);
  }
  if (!(l0 > 0 && l1 > 0) || l0 < 1e-10 * l1)
    throw Error(Err::NoInvariantForm, "invariant Hermitian form is not definite");

  Eigen::Matrix2cd P = eh.eigenvectors() *
                       Eigen::Vector2d(std::sqrt(l0), std::sqrt(l1)).asDiagonal().toDenseMatrix().cast<Complex>() *
                       eh.eigenvectors().adjoint();
  P /= std::sqrt(P.determinant().real());  // det P = sqrt(l0 l1) > 0

  Unitarization u;
  u.P = from_eigen(P);
  u.kernel_gap = sv(2);
  const Mat2 Pinv = u.P.inv();
  u.U1 = u.P * m.M1 * Pinv;
  u.U2 = u.P * m.M2 * Pinv;
  u.U3 = u.P * m.M3 * Pinv;
  for (const Mat2* U : {&u.U1, &u.U2, &u.U3})
    u.max_unitary_defect = std::max(u.max_unitary_defect, unitary_defect(*U));
  return u;
}

const char* deformation_name(DeformationTag t) {
  switch (t) {
    case DeformationTag::Point: return "Point";
    case DeformationTag::GeodesicLine: return "GeodesicLine";
    case DeformationTag::WholeH3: return "WholeH3";
  }
  return "Unknown";
}

DeformationClass classify_deformation(const std::vector<Mat2>& generators, double tol) {
  const Mat2 I = Mat2::id();
  bool all_central = true;
  for (const Mat2& g : generators)
    if (g.dist(I) > tol && g.dist(Complex(-1) * I) > tol) all_central = false;
  if (all_central) return {DeformationTag::WholeH3, {}};

  for (size_t i = 0; i < generators.size(); ++i)
    for (size_t j = i + 1; j < generators.size(); ++j)
      if ((generators[i] * generators[j]).dist(generators[j] * generators[i]) > tol)
        return {DeformationTag::Point, {}};

  // Abelian, nontrivial: the common axis from any non-central generator.
  for (const Mat2& g : generators) {
    Mat2 T = g - (g.tr() * 0.5) * I;  // anti-Hermitian trace-free for g in SU(2)
    const double n = T.norm();
    if (n > tol) return {DeformationTag::GeodesicLine, (std::sqrt(2.0) / n) * T};
  }
  return {DeformationTag::WholeH3, {}};
}

Complex develop_g_along(Complex G, const Mat2& F) {
  const Complex num = -(F.b - G * F.d);
  const Complex den = F.a - G * F.c;
  if (std::abs(num) < 1e-12 && std::abs(den) < 1e-12)
    throw Error(Err::Indeterminate, "0/0 in developing-map quotient; perturb the sample point");
  return num / den;
}

Complex develop_g(Complex z, const Mat2& F) { return develop_g_along(z, F); }

}  // namespace conemet
