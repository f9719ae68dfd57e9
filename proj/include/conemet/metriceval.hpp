#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "conemet/core.hpp"
#include "conemet/pathint.hpp"
#include "conemet/reducible.hpp"

namespace conemet {

// The sphere is covered by the two-chart atlas {z, w = 1/z}; global
// quantities partition it along |z| = sqrt(2).
enum class Chart { Z, W };

struct ConePoint {
  Chart chart;   // chart in which `p` is expressed (W with p=0 is z = infinity)
  Complex p;
  double order;  // beta, > -1
};

// A conformal metric presented per chart as a length density:
// dsigma = lambda(Z, z)|dz| = lambda(W, w)|dw|.
class MetricSource {
 public:
  virtual ~MetricSource() = default;
  virtual double lambda(Chart chart, Complex zeta) = 0;
  virtual const std::vector<ConePoint>& cones() const = 0;
  // Relative evaluation noise of lambda; the curvature stencil balances its
  // O(h^4) truncation against noise/h^2 amplification, so noisier sources get
  // a coarser automatic step. Closed-form evaluation sits near machine eps.
  virtual double lambda_noise() const { return 1e-14; }
};

// lambda = 2|dg| / (1 + |g|^2), the length density of the pullback of the
// round metric under a map with value g and derivative dg.
double conformal_factor(Complex g_value, Complex dg_value);

// Finite cones of `chart` plus the order at that chart's infinity; used for
// the harmonic regularization of log lambda and for exclusion tests.
struct ChartCones {
  std::vector<std::pair<Complex, double>> finite;
  double at_infinity = 0.0;
  bool has_infinity = false;
};
ChartCones cones_in_chart(const std::vector<ConePoint>& cones, Chart chart);

// K = -(laplacian log lambda)/lambda^2 by a 5-point stencil on the harmonic
// regularization of log lambda (cone terms beta log|zeta - p| subtracted),
// Richardson-extrapolated from steps h and h/2. h <= 0 balances h^4
// truncation against noise/h^2 roundoff per point (the 1/lambda^2 in K
// magnifies noise where lambda is small), capped at min(0.02, dist/12).
// Throws SingularityTooClose if the stencil comes within 10h of a singular
// point.
double curvature_sample(MetricSource& src, Chart chart, Complex zeta, double h = 0.0);

// Least-squares slope of log lambda against log r over a log-spaced fan
// r in [1e-4, 1e-2] around the cone (in its own chart). FitDiverged if the
// residual exceeds 0.1.
double conical_order_estimate(MetricSource& src, const ConePoint& cone);

// Two-chart area of the metric: midpoint rule on [-1.5,1.5]^2 per chart
// (partition |z| <= sqrt(2)), deep log-radial Gauss-Legendre annuli
// [1e-4, 0.4] around cones of negative order, and a leading-order cap
// pi C^2 rc^{2 beta + 2}/(beta + 1) for the residual disks.
double total_area(MetricSource& src, int resolution);

struct GridSample {
  Complex z;        // always in z-plane coordinates
  Chart chart;      // chart used for evaluation
  double lambda;    // z-chart normalization
  double K_est;     // NaN where the curvature stencil has no room
  double cell_area;
};

struct MetricSampleGrid {
  std::vector<GridSample> samples;
  int resolution = 0;
  double exclusion = 1e-3;       // dropped within this distance of a cone
  double curvature_safe = 0.15;  // K_est only beyond this distance
};

MetricSampleGrid sample_metric(MetricSource& src, int resolution, double exclusion = 1e-3);

// Closed-form reducible metric pulled back through the label-normalizing
// Moebius map: lambda_orig(z) = lambda_solver(sigma(z)) |sigma'(z)|.
class PullbackSource final : public MetricSource {
 public:
  PullbackSource(DevelopingMap g, MobiusPerm perm, std::array<double, 3> original_beta);
  double lambda(Chart chart, Complex zeta) override;
  const std::vector<ConePoint>& cones() const override { return cones_; }

 private:
  DevelopingMap g_;
  MobiusPerm perm_;  // original point k sits at solver point perm_.s[k]
  std::vector<ConePoint> cones_;
};

// Metric evaluated by numerically continuing a frame of the developing ODE.
// The target map turns the frame into a developing value:
//   lambda = 2|T'| / (|F11 - T F21|^2 + |F12 - T F22|^2)   (det F = 1).
// The metric itself uses T(z) = z in the z-chart and T(w) = 1/w in the
// w-chart; surfaces substitute their own secondary target.
class FrameSource final : public MetricSource {
 public:
  // (chart, zeta) -> (T, dT/dzeta)
  using TargetFn = std::function<void(Chart, Complex, Complex&, Complex&)>;

  FrameSource(CoeffFn A_z, CoeffFn A_w, Mat2 initial_frame, std::vector<ConePoint> cones,
              IntegratorConfig cfg = tight_config(), TargetFn target = {});

  double lambda(Chart chart, Complex zeta) override;
  const std::vector<ConePoint>& cones() const override { return cones_; }
  // Frames carry the integrator's relative error, dominated by rtol.
  double lambda_noise() const override { return std::max(1e-13, 30.0 * cfg_.rtol); }

  // Developing value -(F12 - T F22)/(F11 - T F21) on the branch reached by
  // continuation; nearby queries continue from the previous frame, so a
  // tight stencil sees one consistent branch.
  Complex develop_value(Chart chart, Complex zeta);

  Mat2 frame_at(Chart chart, Complex zeta);

  static IntegratorConfig tight_config() {
    IntegratorConfig c;
    c.rtol = 1e-11;
    c.atol = 1e-13;
    return c;
  }

 private:
  void target_of(Chart chart, Complex zeta, Complex& T, Complex& Tp) const;

  CoeffFn A_z_, A_w_;
  Mat2 F0_;
  std::vector<ConePoint> cones_;
  IntegratorConfig cfg_;
  TargetFn target_;

  struct Anchor {
    bool valid = false;
    Chart chart = Chart::Z;
    Complex zeta;
    Mat2 F;
  } anchor_;
};

}  // namespace conemet
