#include "conemet/pathint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace conemet {

Segment Segment::line(Complex from, Complex to) {
  Segment s;
  s.kind = Kind::Line;
  s.a = from;
  s.b = to;
  return s;
}

Segment Segment::arc(Complex center, double radius, double th0, double th1) {
  if (!(radius > 0)) throw Error(Err::BadArgument, "arc radius must be positive");
  Segment s;
  s.kind = Kind::Arc;
  s.center = center;
  s.radius = radius;
  s.th0 = th0;
  s.th1 = th1;
  return s;
}

Complex Segment::at(double t) const {
  if (kind == Kind::Line) return a + t * (b - a);
  const double th = th0 + t * (th1 - th0);
  return center + radius * Complex(std::cos(th), std::sin(th));
}

Complex Segment::velocity(double t) const {
  if (kind == Kind::Line) return b - a;
  const double th = th0 + t * (th1 - th0);
  return radius * (th1 - th0) * Complex(-std::sin(th), std::cos(th));
}

double Segment::arclength() const {
  if (kind == Kind::Line) return std::abs(b - a);
  return radius * std::abs(th1 - th0);
}

double Segment::distance_to(Complex p) const {
  if (kind == Kind::Line) {
    const Complex d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0) return std::abs(p - a);
    double t = ((p - a) * std::conj(d)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
  }
  const Complex rel = p - center;
  const double rho = std::abs(rel);
  const double sweep = th1 - th0;
  if (std::abs(sweep) >= 2 * kPi - 1e-12) return std::abs(rho - radius);
  if (rho == 0) return radius;
  // Angle of p relative to th0, folded into [0, 2 pi) along the sweep direction.
  double ang = std::atan2(rel.imag(), rel.real());
  double rot = (ang - th0) * (sweep >= 0 ? 1.0 : -1.0);
  rot = std::fmod(rot, 2 * kPi);
  if (rot < 0) rot += 2 * kPi;
  if (rot <= std::abs(sweep)) return std::abs(rho - radius);
  const double d0 = std::abs(p - at(0.0));
  const double d1 = std::abs(p - at(1.0));
  return std::min(d0, d1);
}

Complex PathSpec::start() const {
  if (segs.empty()) throw Error(Err::BadArgument, "empty path");
  return segs.front().start();
}

Complex PathSpec::end() const {
  if (segs.empty()) throw Error(Err::BadArgument, "empty path");
  return segs.back().end();
}

double PathSpec::arclength() const {
  double s = 0;
  for (const auto& seg : segs) s += seg.arclength();
  return s;
}

void PathSpec::validate() const {
  if (segs.empty()) throw Error(Err::BadArgument, "empty path");
  for (size_t i = 0; i + 1 < segs.size(); ++i) {
    if (std::abs(segs[i].end() - segs[i + 1].start()) > 1e-12)
      throw Error(Err::BadArgument, "path chain is discontinuous");
  }
  for (const auto& seg : segs)
    for (const Complex& p : obstacles)
      if (seg.distance_to(p) < r_min)
        throw Error(Err::PathTooClose, "path comes within r_min of a singular point");
}

PathSpec PathSpec::polyline(const std::vector<Complex>& pts) {
  if (pts.size() < 2) throw Error(Err::BadArgument, "polyline needs two points");
  PathSpec p;
  for (size_t i = 0; i + 1 < pts.size(); ++i) p.segs.push_back(Segment::line(pts[i], pts[i + 1]));
  return p;
}

Mat2 ode_coefficient(const HopfDifferential& q, Complex z) {
  const Complex qz = evaluate_Q(q, z);
  return Mat2{z * qz, -z * z * qz, qz, -z * qz};
}

Mat2 ode_coefficient_wchart(const HopfDifferential& q, Complex w) {
  // -A(1/w)/w^2 with A as above; the apparent pole of the entries at w = 0
  // cancels against the zero of q(1/w):
  //   q(1/w) = w^2 (c1 w^2 + (c2-c1-c3) w + c3) / (2 (1-w)^2).
  if (std::abs(w - 1.0) < kPoleTol)
    throw Error(Err::PoleHit, "coefficient pole at w = 1");
  const Complex num = ((q.c[0] * w + (q.c[1] - q.c[0] - q.c[2])) * w + q.c[2]);
  const Complex s = 1.0 - w;
  const Complex base = num / (2.0 * s * s);  // = q(1/w) / w^2
  // -1/w^2 * [[ (1/w) q, -(1/w^2) q ], [ q, -(1/w) q ]](1/w), entries times base:
  return Mat2{-base / w, base / (w * w), -base, base / w};
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// b (order 5) equals the last tableau row; e = b5 - b4 gives the error estimate.
constexpr double kE[7] = {35.0 / 384 - 5179.0 / 57600,
                          0.0,
                          500.0 / 1113 - 7571.0 / 16695,
                          125.0 / 192 - 393.0 / 640,
                          -2187.0 / 6784 + 92097.0 / 339200,
                          11.0 / 84 - 187.0 / 2100,
                          -1.0 / 40};

double err_component(Complex e, Complex y0, Complex y1, double atol, double rtol) {
  const double sc = atol + rtol * std::max(std::abs(y0), std::abs(y1));
  return std::abs(e) / sc;
}

// Principal square root of det closest to +1 (accepted dets stay near 1, so
// the principal branch is always the right one).
void renormalize(Mat2& F, double* drift) {
  const Complex d = F.det();
  if (drift) *drift = std::max(*drift, std::abs(d - 1.0));
  const Complex s = std::sqrt(d);
  if (std::abs(s) < 1e-300) throw Error(Err::DegenerateDerivative, "frame determinant collapsed");
  F = (1.0 / s) * F;
}

}  // namespace

Mat2 integrate_frame(const PathSpec& path, const CoeffFn& A, const IntegratorConfig& cfg,
                     const Mat2& F0, IntegrationStats* stats) {
  path.validate();
  Mat2 F = F0;
  IntegrationStats local;
  const double total_len = path.arclength();

  for (const auto& seg : path.segs) {
    // RHS in segment parameter t: dF/dt = z'(t) A(z(t)) F.
    auto rhs = [&](double t, const Mat2& Y) { return seg.velocity(t) * (A(seg.at(t)) * Y); };

    auto clearance = [&](Complex z) {
      double d = std::numeric_limits<double>::infinity();
      for (const Complex& p : path.obstacles) d = std::min(d, std::abs(z - p));
      for (const Complex& p : path.stiff_points) d = std::min(d, std::abs(z - p));
      return d;
    };

    double t = 0;
    double h = 0;  // chosen below from the local cap
    int since_renorm = 0;
    while (t < 1.0) {
      const Complex z = seg.at(t);
      const double speed = std::abs(seg.velocity(t));
      // Arclength step cap near singular / stiff points of the coefficient.
      double hcap = 1.0 - t;
      if (speed > 0) hcap = std::min(hcap, cfg.max_step_frac * clearance(z) / speed);
      if (h <= 0) h = hcap;  // segment start
      h = std::min(h, hcap);
      if (h < 1e-14 * std::max(1.0, total_len))
        throw Error(Err::StepUnderflow, "step size collapsed during path integration");

      Mat2 k[7];
      k[0] = rhs(t, F);
      for (int i = 1; i < 7; ++i) {
        Mat2 Y = F;
        for (int j = 0; j < i; ++j)
          if (kA[i][j] != 0) Y += (h * kA[i][j]) * k[j];
        k[i] = rhs(t + kC[i] * h, Y);
      }
      Mat2 F5 = F;
      for (int j = 0; j < 6; ++j)
        if (kA[6][j] != 0) F5 += (h * kA[6][j]) * k[j];
      Mat2 E{0, 0, 0, 0};
      for (int j = 0; j < 7; ++j)
        if (kE[j] != 0) E += (h * kE[j]) * k[j];

      double acc = 0;
      acc += std::pow(err_component(E.a, F.a, F5.a, cfg.atol, cfg.rtol), 2);
      acc += std::pow(err_component(E.b, F.b, F5.b, cfg.atol, cfg.rtol), 2);
      acc += std::pow(err_component(E.c, F.c, F5.c, cfg.atol, cfg.rtol), 2);
      acc += std::pow(err_component(E.d, F.d, F5.d, cfg.atol, cfg.rtol), 2);
      const double err = std::sqrt(acc / 4.0);

      double fac = 0.9 * std::pow(std::max(err, 1e-16), -0.2);
      fac = std::clamp(fac, 0.2, 5.0);
      if (err <= 1.0) {
        t += h;
        F = F5;
        ++local.steps;
        if (++since_renorm >= cfg.renorm_interval) {
          renormalize(F, &local.det_drift);
          since_renorm = 0;
        }
      } else {
        ++local.rejected;
      }
      h *= fac;
    }
    renormalize(F, &local.det_drift);
  }
  if (stats) *stats = local;
  return F;
}

double conjugate_symmetry_check(const PathSpec& path, const HopfDifferential& q,
                                const IntegratorConfig& cfg) {
  PathSpec mirror = path;
  for (auto& s : mirror.segs) {
    if (s.kind == Segment::Kind::Line) {
      s.a = std::conj(s.a);
      s.b = std::conj(s.b);
    } else {
      s.center = std::conj(s.center);
      s.th0 = -s.th0;
      s.th1 = -s.th1;
    }
  }
  auto A = [&q](Complex z) { return ode_coefficient(q, z); };
  const Mat2 Fp = integrate_frame(path, A, cfg, Mat2::id());
  const Mat2 Fm = integrate_frame(mirror, A, cfg, Mat2::id());
  return Fm.conj().dist(Fp);
}

}  // namespace conemet
