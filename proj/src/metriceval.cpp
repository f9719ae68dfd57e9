#include "conemet/metriceval.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace conemet {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

double sq(double x) { return x * x; }

// Nodes/weights for n-point Gauss-Legendre on [-1,1] (Golub-Welsch).
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < n; ++i) {
    x[size_t(i)] = es.eigenvalues()(i);
    w[size_t(i)] = 2.0 * sq(es.eigenvectors()(0, i));
  }
}

double dist_to_finite(const ChartCones& cc, Complex zeta) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& f : cc.finite) d = std::min(d, std::abs(zeta - f.first));
  return d;
}

// log lambda minus its harmonic cone terms; the 5-point Laplacian then acts
// on a function whose high derivatives stay bounded near the cones.
double reg_log_lambda(MetricSource& src, const ChartCones& cc, Chart chart, Complex zeta) {
  double s = std::log(src.lambda(chart, zeta));
  for (const auto& f : cc.finite) s -= f.second * std::log(std::abs(zeta - f.first));
  if (cc.has_infinity) s += (cc.at_infinity + 2.0) * std::log(std::abs(zeta));
  return s;
}

}  // namespace

double conformal_factor(Complex g_value, Complex dg_value) {
  return 2.0 * std::abs(dg_value) / (1.0 + std::norm(g_value));
}

ChartCones cones_in_chart(const std::vector<ConePoint>& cones, Chart chart) {
  ChartCones out;
  for (const auto& c : cones) {
    if (c.chart == chart) {
      out.finite.push_back({c.p, c.order});
    } else if (std::abs(c.p) < 1e-14) {
      out.at_infinity = c.order;
      out.has_infinity = true;
    } else {
      out.finite.push_back({1.0 / c.p, c.order});
    }
  }
  return out;
}

double curvature_sample(MetricSource& src, Chart chart, Complex zeta, double h) {
  const ChartCones cc = cones_in_chart(src.cones(), chart);
  const double dist = dist_to_finite(cc, zeta);
  if (h <= 0) {
    if (!(dist > 0.0))
      throw Error(Err::SingularityTooClose, "curvature stencil needs distance > 10h");
    // noise^(1/6) balances h^4 truncation against noise/h^2 amplification.
    // The 1/lambda^2 in K magnifies the noise term, so where lambda is small
    // the step is floored high enough to keep that contribution near 1e-6
    // (the dist/12 ceiling still wins when the floor is unreachable).
    const double eps = src.lambda_noise();
    const double lam0 = src.lambda(chart, zeta);
    const double noise_floor = std::sqrt(45.0 * eps / (1e-6 * lam0 * lam0));
    h = std::min({0.02, dist / 12.0, std::max(std::pow(eps, 1.0 / 6.0), noise_floor)});
  }
  if (!(dist > 10.0 * h))
    throw Error(Err::SingularityTooClose, "curvature stencil needs distance > 10h");

  const double lam = src.lambda(chart, zeta);
  const double center = reg_log_lambda(src, cc, chart, zeta);
  auto K_at = [&](double hh) {
    double lap = -4.0 * center;
    for (Complex off : {Complex(hh, 0), Complex(-hh, 0), Complex(0, hh), Complex(0, -hh)})
      lap += reg_log_lambda(src, cc, chart, zeta + off);
    return -lap / (hh * hh) / (lam * lam);
  };
  const double Kh = K_at(h);
  const double Kh2 = K_at(h / 2);
  return (4.0 * Kh2 - Kh) / 3.0;
}

double conical_order_estimate(MetricSource& src, const ConePoint& cone) {
  const int nr = 12, na = 8;
  const double r_lo = 1e-4, r_hi = 1e-2;
  std::vector<double> logr(nr), mean(nr, 0.0);
  for (int k = 0; k < nr; ++k)
    logr[size_t(k)] = std::log(r_hi) + (std::log(r_lo) - std::log(r_hi)) * k / (nr - 1);
  for (int a = 0; a < na; ++a) {
    const double th = 2 * kPi * (a + 0.5) / na;
    const Complex e(std::cos(th), std::sin(th));
    for (int k = 0; k < nr; ++k) {  // descending radii: continuation-friendly
      const double r = std::exp(logr[size_t(k)]);
      mean[size_t(k)] += std::log(src.lambda(cone.chart, cone.p + r * e)) / na;
    }
  }
  // least-squares line y = a + b x
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 0; k < nr; ++k) {
    sx += logr[size_t(k)];
    sy += mean[size_t(k)];
    sxx += sq(logr[size_t(k)]);
    sxy += logr[size_t(k)] * mean[size_t(k)];
  }
  const double det = nr * sxx - sx * sx;
  const double slope = (nr * sxy - sx * sy) / det;
  const double icept = (sy - slope * sx) / nr;
  double rss = 0;
  for (int k = 0; k < nr; ++k) rss += sq(mean[size_t(k)] - icept - slope * logr[size_t(k)]);
  if (std::sqrt(rss / nr) > 0.1)
    throw Error(Err::FitDiverged, "power-law fit residual exceeds 0.1");
  return slope;
}

namespace {

struct AnnulusTarget {
  Chart chart;
  Complex p;
  double order;
  double R0;
};

double annulus_and_cap(MetricSource& src, const AnnulusTarget& t, double rc) {
  static std::vector<double> gx, gw;
  if (gx.empty()) gauss_legendre(40, gx, gw);
  const double t0 = std::log(rc), t1 = std::log(t.R0);
  const int nth = 64;
  double mass = 0;
  for (int a = 0; a < nth; ++a) {
    const double th = 2 * kPi * (a + 0.5) / nth;
    const Complex e(std::cos(th), std::sin(th));
    for (int k = int(gx.size()) - 1; k >= 0; --k) {  // descending radius
      const double tt = 0.5 * (t1 + t0) + 0.5 * (t1 - t0) * gx[size_t(k)];
      const double r = std::exp(tt);
      const double lam = src.lambda(t.chart, t.p + r * e);
      mass += sq(lam) * r * r * 0.5 * (t1 - t0) * gw[size_t(k)] * 2 * kPi / nth;
    }
  }
  // residual disk r < rc from the local model C r^beta
  double C = 0;
  for (int a = 0; a < 8; ++a) {
    const double th = 2 * kPi * (a + 0.5) / 8;
    C += src.lambda(t.chart, t.p + rc * Complex(std::cos(th), std::sin(th))) /
         std::pow(rc, t.order);
  }
  C /= 8;
  mass += kPi * C * C * std::pow(rc, 2 * t.order + 2) / (t.order + 1);
  return mass;
}

}  // namespace

double total_area(MetricSource& src, int resolution) {
  const double L = 1.5, R0 = 0.4, rc = 1e-4;
  const double d = 2 * L / resolution;

  // Deep annuli resolve the negative-order cones; each stays inside its
  // chart's half of the partition and clear of the other cones.
  std::vector<AnnulusTarget> targets;
  for (const auto& c : src.cones()) {
    if (c.order >= 0) continue;
    double R = R0;
    const double edge = (c.chart == Chart::Z ? kSqrt2 : 1.0 / kSqrt2) - std::abs(c.p);
    R = std::min(R, 0.99 * edge);
    for (const auto& o : src.cones())
      if (o.chart == c.chart && std::abs(o.p - c.p) > 1e-14)
        R = std::min(R, 0.45 * std::abs(o.p - c.p));
    targets.push_back({c.chart, c.p, c.order, R});
  }

  double total = 0;
  for (Chart chart : {Chart::Z, Chart::W}) {
    const double rad = chart == Chart::Z ? kSqrt2 : 1.0 / kSqrt2;
    for (int i = 0; i < resolution; ++i) {
      for (int jj = 0; jj < resolution; ++jj) {
        const int j = (i % 2 == 0) ? jj : resolution - 1 - jj;  // serpentine
        const Complex zeta(-L + (i + 0.5) * d, -L + (j + 0.5) * d);
        if (std::abs(zeta) > rad) continue;
        bool excluded = false;
        for (const auto& t : targets)
          if (t.chart == chart && std::abs(zeta - t.p) <= t.R0) excluded = true;
        if (excluded) continue;
        total += sq(src.lambda(chart, zeta)) * d * d;
      }
    }
  }
  for (const auto& t : targets) total += annulus_and_cap(src, t, rc);
  return total;
}

MetricSampleGrid sample_metric(MetricSource& src, int resolution, double exclusion) {
  MetricSampleGrid grid;
  grid.resolution = resolution;
  grid.exclusion = exclusion;
  const double L = 1.5, d = 2 * L / resolution;
  const ChartCones zc = cones_in_chart(src.cones(), Chart::Z);
  const ChartCones wc = cones_in_chart(src.cones(), Chart::W);
  for (int i = 0; i < resolution; ++i) {
    for (int jj = 0; jj < resolution; ++jj) {
      const int j = (i % 2 == 0) ? jj : resolution - 1 - jj;
      const Complex z(-L + (i + 0.5) * d, -L + (j + 0.5) * d);
      const Chart chart = std::abs(z) <= kSqrt2 ? Chart::Z : Chart::W;
      const Complex zeta = chart == Chart::Z ? z : 1.0 / z;
      const ChartCones& cc = chart == Chart::Z ? zc : wc;
      const double dist = dist_to_finite(cc, zeta);
      if (dist < exclusion) continue;
      GridSample s;
      s.z = z;
      s.chart = chart;
      const double lam = src.lambda(chart, zeta);
      s.lambda = chart == Chart::Z ? lam : lam / std::norm(z);
      s.K_est = dist >= grid.curvature_safe
                    ? curvature_sample(src, chart, zeta)
                    : std::numeric_limits<double>::quiet_NaN();
      s.cell_area = d * d;
      grid.samples.push_back(s);
    }
  }
  return grid;
}

PullbackSource::PullbackSource(DevelopingMap g, MobiusPerm perm,
                               std::array<double, 3> original_beta)
    : g_(std::move(g)), perm_(perm) {
  cones_ = {{Chart::Z, Complex(0), original_beta[0]},
            {Chart::Z, Complex(1), original_beta[1]},
            {Chart::W, Complex(0), original_beta[2]}};
}

double PullbackSource::lambda(Chart chart, Complex zeta) {
  // Evaluate the solver-chart density at sigma(z) and pull back.
  auto solver_lambda_z = [&](Complex s) {
    if (std::abs(s) <= 1.5) return g_.lambda(s);
    return g_.lambda_wchart(1.0 / s) / std::norm(s);
  };
  const Complex z = chart == Chart::Z ? zeta : 1.0 / zeta;
  const double pulled = solver_lambda_z(perm_.apply(z)) * std::abs(perm_.deriv(z));
  return chart == Chart::Z ? pulled : pulled / std::norm(zeta);
}

FrameSource::FrameSource(CoeffFn A_z, CoeffFn A_w, Mat2 initial_frame,
                         std::vector<ConePoint> cones, IntegratorConfig cfg, TargetFn target)
    : A_z_(std::move(A_z)),
      A_w_(std::move(A_w)),
      F0_(initial_frame),
      cones_(std::move(cones)),
      cfg_(cfg),
      target_(std::move(target)) {}

void FrameSource::target_of(Chart chart, Complex zeta, Complex& T, Complex& Tp) const {
  if (target_) {
    target_(chart, zeta, T, Tp);
  } else if (chart == Chart::Z) {
    T = zeta;
    Tp = Complex(1);
  } else {
    T = 1.0 / zeta;
    Tp = -1.0 / (zeta * zeta);
  }
}

Mat2 FrameSource::frame_at(Chart chart, Complex zeta) {
  const CoeffFn& A = chart == Chart::Z ? A_z_ : A_w_;
  if (anchor_.valid && anchor_.chart == chart) {
    if (zeta == anchor_.zeta) return anchor_.F;
    const double len = std::abs(zeta - anchor_.zeta);
    const Segment hop = Segment::line(anchor_.zeta, zeta);
    const double sd = std::min(hop.distance_to(Complex(0)), hop.distance_to(Complex(1)));
    if (len <= 0.5 && sd >= std::max(1e-6, 0.2 * len)) {
      PathSpec ps;
      ps.segs = {hop};
      ps.r_min = 0;
      const Mat2 F = integrate_frame(ps, A, cfg_, anchor_.F);
      anchor_ = {true, chart, zeta, F};
      return F;
    }
  }
  const double sgn = zeta.imag() > 0 ? 1.0 : -1.0;
  const Complex base(-1, 0), a(-1, sgn * 1.5), b(zeta.real(), sgn * 1.5);
  PathSpec ps = PathSpec::polyline({base, a, b, zeta});
  ps.r_min = 0;
  const Mat2 F = integrate_frame(ps, A, cfg_, F0_);
  anchor_ = {true, chart, zeta, F};
  return F;
}

double FrameSource::lambda(Chart chart, Complex zeta) {
  const Mat2 F = frame_at(chart, zeta);
  if (!target_ && chart == Chart::W) {
    // metric in the w-chart, cleared of the 1/w pole:
    // lambda_w = 2/(|w F11 - F21|^2 + |w F12 - F22|^2)
    return 2.0 / (std::norm(zeta * F.a - F.c) + std::norm(zeta * F.b - F.d));
  }
  Complex T, Tp;
  target_of(chart, zeta, T, Tp);
  return 2.0 * std::abs(Tp) / (std::norm(F.a - T * F.c) + std::norm(F.b - T * F.d));
}

Complex FrameSource::develop_value(Chart chart, Complex zeta) {
  const Mat2 F = frame_at(chart, zeta);
  Complex T, Tp;
  target_of(chart, zeta, T, Tp);
  const Complex num = F.b - T * F.d, den = F.a - T * F.c;
  if (std::abs(num) < 1e-12 && std::abs(den) < 1e-12)
    throw Error(Err::Indeterminate, "developing-map quotient is 0/0");
  return -num / den;
}

}  // namespace conemet
