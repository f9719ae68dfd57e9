#include "conemet/surface.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace conemet {

namespace {

// Stable quadratic roots of a z^2 + b z + c with a != 0, c != 0: the larger
// root avoids cancellation, the other comes from the product relation.
std::pair<Complex, Complex> quadratic_roots(Complex a, Complex b, Complex c) {
  Complex sq = std::sqrt(b * b - 4.0 * a * c);
  if (std::real(std::conj(b) * sq) > 0) sq = -sq;
  Complex num = -(b - sq);  // = -b + sq with |.| maximal
  Complex r1 = num / (2.0 * a);
  Complex r2 = (2.0 * c) / num;
  return {r1, r2};
}

bool lex_less(Complex p, Complex q) {
  if (p.real() != q.real()) return p.real() < q.real();
  return p.imag() < q.imag();
}

double c3_of(const SurfaceSpec& s) { return hopf_from_divisor(s.divisor).c[2]; }

// Cone list of the pseudometric dsigma_x^2: the divisor points plus the two
// umbilics, each a cone of order +1 (branch points of the secondary map).
std::vector<ConePoint> sigma_cones(const SurfaceSpec& s) {
  std::vector<ConePoint> cones;
  cones.push_back({Chart::Z, Complex(0), s.divisor.beta[0]});
  cones.push_back({Chart::Z, Complex(1), s.divisor.beta[1]});
  cones.push_back({Chart::W, Complex(0), s.divisor.beta[2]});
  if (!s.degenerate()) {
    for (Complex q : {s.q1, s.q2}) {
      if (std::abs(q) <= std::sqrt(2.0))
        cones.push_back({Chart::Z, q, 1.0});
      else
        cones.push_back({Chart::W, 1.0 / q, 1.0});
    }
  }
  return cones;
}

CoeffFn coeff_z(const SurfaceSpec& s) {
  return [s](Complex z) { return surface_coefficient(s, z); };
}
CoeffFn coeff_w(const SurfaceSpec& s) {
  return [s](Complex w) { return surface_coefficient_wchart(s, w); };
}

FrameSource::TargetFn gauss_target(const SurfaceSpec& s) {
  return [s](Chart chart, Complex zeta, Complex& T, Complex& Tp) {
    if (chart == Chart::Z) {
      T = surface_gauss_map(s, zeta);
      Tp = surface_gauss_map_deriv(s, zeta);
    } else {
      Complex z = 1.0 / zeta;
      T = surface_gauss_map(s, z);
      Tp = -surface_gauss_map_deriv(s, z) / (zeta * zeta);
    }
  };
}

}  // namespace

SurfaceSpec make_surface(const Divisor& d) {
  double L = trace_condition_value(d);
  if (!(L < 1.0)) {
    std::ostringstream os;
    os << "no surface for this divisor: trace condition value " << L << " >= 1";
    throw Error(Err::ConditionViolated, os.str());
  }
  HopfDifferential q = hopf_from_divisor(d);
  // After the gate none of the c_j vanish (a zero c_j needs an even integer
  // order, which forces the trace value to 1 or above).
  auto [r1, r2] = quadratic_roots(Complex(q.c[2]), Complex(q.c[1] - q.c[0] - q.c[2]),
                                  Complex(q.c[0]));
  if (lex_less(r2, r1)) std::swap(r1, r2);
  for (Complex r : {r1, r2}) {
    if (std::abs(r) < 1e-9 || std::abs(r - 1.0) < 1e-9)
      throw Error(Err::ConditionViolated, "umbilic collides with a divisor point");
  }
  return SurfaceSpec{d, r1, r2, L};
}

Complex surface_gauss_map(const SurfaceSpec& s, Complex z) {
  if (s.degenerate()) return z;
  Complex sigma = s.q1 + s.q2;
  Complex sdbl = 2.0 * z - sigma;
  if (std::abs(sdbl) < 2 * kPoleTol)
    throw Error(Err::PoleHit, "gauss map evaluated at its pole");
  Complex d = s.q1 - s.q2;
  return z + d * d / (2.0 * sdbl);
}

Complex surface_gauss_map_deriv(const SurfaceSpec& s, Complex z) {
  if (s.degenerate()) return Complex(1);
  Complex sdbl = 2.0 * z - (s.q1 + s.q2);
  if (std::abs(sdbl) < 2 * kPoleTol)
    throw Error(Err::PoleHit, "gauss map evaluated at its pole");
  return 4.0 * (z - s.q1) * (z - s.q2) / (sdbl * sdbl);
}

Complex surface_hopf(const SurfaceSpec& s, Complex z) {
  return evaluate_Q(hopf_from_divisor(s.divisor), z);
}

double dsharp_metric(const SurfaceSpec& s, Complex z) {
  if (std::abs(z) < kPoleTol || std::abs(z - 1.0) < kPoleTol)
    throw Error(Err::PoleHit, "density evaluated at a divisor point");
  // (1+|G|^2)^2 |Q/dG|^2 written over the common denominator s = 2z - sigma;
  // the pole of G at s = 0 cancels, so this form is finite there.
  Complex sigma = s.q1 + s.q2;
  Complex d = s.q1 - s.q2;
  Complex sdbl = 2.0 * z - sigma;
  Complex e = z * sdbl + 0.5 * d * d;
  double n2 = std::norm(sdbl) + std::norm(e);
  double den = 64.0 * std::norm(z) * std::norm(z) * std::norm(z - 1.0) * std::norm(z - 1.0);
  return c3_of(s) * c3_of(s) * n2 * n2 / den;
}

Mat2 surface_coefficient(const SurfaceSpec& s, Complex z) {
  if (std::abs(z) < kPoleTol || std::abs(z - 1.0) < kPoleTol)
    throw Error(Err::PoleHit, "frame coefficient evaluated at a pole");
  Complex zz = z * z, zm = z - 1.0;
  Complex pref = c3_of(s) / (8.0 * zz * zm * zm);
  Complex sigma = s.q1 + s.q2;
  Complex d = s.q1 - s.q2;
  Complex sdbl = 2.0 * z - sigma;
  Complex e = z * sdbl + 0.5 * d * d;
  return Mat2{sdbl * e * pref, -e * e * pref, sdbl * sdbl * pref, -sdbl * e * pref};
}

Mat2 surface_coefficient_wchart(const SurfaceSpec& s, Complex w) {
  if (std::abs(w) < kPoleTol || std::abs(w - 1.0) < kPoleTol)
    throw Error(Err::PoleHit, "frame coefficient evaluated at a pole");
  Complex wm = 1.0 - w;
  Complex pref = -c3_of(s) / (8.0 * wm * wm);
  Complex sigma = s.q1 + s.q2;
  Complex d = s.q1 - s.q2;
  Complex t = 2.0 - sigma * w;               // = w * s(1/w)
  Complex P = 2.0 * t + d * d * w * w;       // = 2 w^2 * e(1/w)
  return Mat2{P * t / (2.0 * w) * pref, -P * P / (4.0 * w * w) * pref, t * t * pref,
              -P * t / (2.0 * w) * pref};
}

SurfaceFrame build_surface_frame(const SurfaceSpec& s, const IntegratorConfig& cfg) {
  MonodromyTriple m = compute_monodromy_of(coeff_z(s), coeff_w(s), cfg);
  Unitarization u;
  try {
    u = unitarize(m);
  } catch (const Error& e) {
    if (e.code == Err::NotUnitarizable)
      throw Error(Err::NonUnitaryMonodromy,
                  std::string("surface frame monodromy: ") + e.what());
    throw;
  }
  return SurfaceFrame{s, m, u, u.P.inv()};
}

double HyperbolicPoint::hermitian_defect() const { return x.dist(x.adjoint()); }

double HyperbolicPoint::det_defect() const { return std::abs(x.det() - Complex(1)); }

HyperbolicPoint immerse(const SurfaceFrame& sf, Complex z, const IntegratorConfig& cfg) {
  if (!(sf.unit.max_unitary_defect < 1e-6))
    throw Error(Err::NonUnitaryMonodromy, "frame monodromy is not certified unitary");
  FrameSource fs(coeff_z(sf.spec), coeff_w(sf.spec), sf.initial_frame, sigma_cones(sf.spec),
                 cfg);
  Mat2 F = fs.frame_at(Chart::Z, z);
  HyperbolicPoint pt{F * F.adjoint()};
  if (pt.det_defect() > 1e-8 || !(pt.x.a.real() + pt.x.d.real() > 0))
    throw Error(Err::Indeterminate, "immersion point drifted off the hyperboloid");
  return pt;
}

std::unique_ptr<FrameSource> surface_sigma_source(const SurfaceFrame& sf,
                                                  IntegratorConfig cfg) {
  return std::make_unique<FrameSource>(coeff_z(sf.spec), coeff_w(sf.spec), sf.initial_frame,
                                       sigma_cones(sf.spec), cfg, gauss_target(sf.spec));
}

double total_abs_curvature(const SurfaceSpec& s) {
  double sum = s.divisor.beta[0] + s.divisor.beta[1] + s.divisor.beta[2];
  double ta = 2.0 * kPi * (4.0 + sum);
  if (!(ta >= 4.0 * kPi - 1e-9))
    throw Error(Err::ConditionViolated, "total curvature below the embedded-end floor");
  return ta;
}

void export_mesh_obj(const SurfaceFrame& sf, const std::string& path, int radial,
                     int angular) {
  if (radial < 2 || angular < 3) throw Error(Err::BadArgument, "mesh resolution too small");
  FrameSource fs(coeff_z(sf.spec), coeff_w(sf.spec), sf.initial_frame, sigma_cones(sf.spec),
                 FrameSource::tight_config());

  // Polar annulus centered between the finite divisor points; vertices too
  // close to 0 or 1 are dropped and their quads skipped.
  const Complex center(0.5);
  const double r0 = 0.05, r1 = 2.0, guard = 0.03;
  std::vector<std::vector<int>> vid(radial, std::vector<int>(angular, 0));
  std::ostringstream verts;
  int next = 1;
  for (int k = 0; k < radial; ++k) {
    double r = r0 * std::pow(r1 / r0, double(k) / (radial - 1));
    for (int i = 0; i < angular; ++i) {
      // Serpentine sweep keeps consecutive vertices adjacent so the frame
      // continues by short hops.
      int ii = (k % 2 == 0) ? i : angular - 1 - i;
      double th = 2.0 * kPi * ii / angular;
      Complex z = center + std::polar(r, th);
      if (std::abs(z) < guard || std::abs(z - 1.0) < guard) continue;
      Mat2 F = fs.frame_at(Chart::Z, z);
      Mat2 x = F * F.adjoint();
      double x22 = x.d.real();
      Complex zeta = x.b / x22;
      double h = 1.0 / x22;
      char line[128];
      std::snprintf(line, sizeof line, "v %.9g %.9g %.9g\n", zeta.real(), zeta.imag(), h);
      verts << line;
      vid[k][ii] = next++;
    }
  }

  std::ostringstream faces;
  for (int k = 0; k + 1 < radial; ++k) {
    for (int i = 0; i < angular; ++i) {
      int j = (i + 1) % angular;
      int a = vid[k][i], b = vid[k][j], c = vid[k + 1][j], d = vid[k + 1][i];
      if (a && b && c) faces << "f " << a << ' ' << b << ' ' << c << '\n';
      if (a && c && d) faces << "f " << a << ' ' << c << ' ' << d << '\n';
    }
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Err::BadArgument, "cannot open mesh output file: " + path);
  out << "# upper-half-space immersion sample (" << next - 1 << " vertices)\n";
  out << verts.str() << faces.str();
}

}  // namespace conemet
