#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "conemet/pathint.hpp"

using namespace conemet;

namespace {

template <typename F>
bool throws_code(F&& f, Err code) {
  try {
    f();
  } catch (const Error& e) {
    return e.code == code;
  }
  return false;
}

}  // namespace

TEST_CASE("segment parameterization") {
  Segment l = Segment::line(Complex(-1), Complex(2, 3));
  CHECK(std::abs(l.start() - Complex(-1)) < 1e-15);
  CHECK(std::abs(l.end() - Complex(2, 3)) < 1e-15);
  CHECK(std::abs(l.at(0.5) - Complex(0.5, 1.5)) < 1e-14);
  CHECK(std::abs(l.velocity(0.25) - Complex(3, 3)) < 1e-14);
  CHECK(l.arclength() == doctest::Approx(std::sqrt(18.0)).epsilon(1e-13));
  CHECK(Segment::line(Complex(0), Complex(1)).distance_to(Complex(0.5, 0.3)) ==
        doctest::Approx(0.3).epsilon(1e-12));
  CHECK(Segment::line(Complex(0), Complex(1)).distance_to(Complex(2, 0)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  Segment a = Segment::arc(Complex(1), 0.5, 0.0, kPi);
  CHECK(std::abs(a.start() - Complex(1.5)) < 1e-14);
  CHECK(std::abs(a.end() - Complex(0.5)) < 1e-13);
  CHECK(a.arclength() == doctest::Approx(0.5 * kPi).epsilon(1e-13));
  // velocity = i r (th1-th0) e^{i th}
  CHECK(std::abs(a.velocity(0.0) - Complex(0, 0.5 * kPi)) < 1e-13);
}

TEST_CASE("path validation enforces clearance and continuity") {
  PathSpec ok = PathSpec::polyline({Complex(-1), Complex(-1, 1), Complex(2, 1), Complex(2)});
  CHECK_NOTHROW(ok.validate());
  CHECK(std::abs(ok.start() - Complex(-1)) < 1e-15);
  CHECK(std::abs(ok.end() - Complex(2)) < 1e-15);

  // Passes within 0.02 of the obstacle at 0.
  PathSpec bad = PathSpec::polyline({Complex(-1), Complex(-0.02, 0.0), Complex(-1, 0.5)});
  CHECK(throws_code([&] { bad.validate(); }, Err::PathTooClose));

  PathSpec gap;
  gap.segs.push_back(Segment::line(Complex(-1), Complex(-2)));
  gap.segs.push_back(Segment::line(Complex(-3), Complex(-4)));
  CHECK(throws_code([&] { gap.validate(); }, Err::BadArgument));
}

TEST_CASE("unipotent system integrates to the exact antiderivative") {
  // dF = [[0, z^-2],[0,0]] F: with F(-1) = id the only moving entry is
  // F12 = [-1/z], so F12(2) = -1/2 - 1 = -3/2.
  CoeffFn A = [](Complex z) { return Mat2{0, 1.0 / (z * z), 0, 0}; };
  PathSpec path = PathSpec::polyline({Complex(-1), Complex(-1, 1), Complex(2, 1), Complex(2)});
  IntegrationStats stats;
  Mat2 F = integrate_frame(path, A, {}, Mat2::id(), &stats);
  CHECK(std::abs(F.a - Complex(1)) < 1e-12);
  CHECK(std::abs(F.c) < 1e-12);
  CHECK(std::abs(F.d - Complex(1)) < 1e-12);
  CHECK(std::abs(F.b - Complex(-1.5)) < 1e-9);
  CHECK(stats.steps > 0);
  CHECK(stats.det_drift < 1e-9);
}

TEST_CASE("diagonal system around a full loop picks up e^{2 pi i nu}") {
  const double nu = 0.25;
  CoeffFn A = [nu](Complex z) { return Mat2{nu / z, 0, 0, -nu / z}; };
  PathSpec loop;
  loop.segs.push_back(Segment::arc(Complex(0), 0.4, kPi, 3 * kPi));
  Mat2 F = integrate_frame(loop, A, {}, Mat2::id());
  const Complex expect = std::exp(Complex(0, 2 * kPi * nu));  // = i
  CHECK(std::abs(F.a - expect) < 1e-9);
  CHECK(std::abs(F.d - 1.0 / expect) < 1e-9);
  CHECK(std::abs(F.b) < 1e-12);
  CHECK(std::abs(F.c) < 1e-12);
}

TEST_CASE("monodromy is invariant under loop homotopy") {
  HopfDifferential q = hopf_from_divisor(make_divisor(-0.6, -0.6, -0.6));
  CoeffFn A = [q](Complex z) { return ode_coefficient(q, z); };

  PathSpec wide;
  wide.segs.push_back(Segment::line(Complex(-1), Complex(-0.4)));
  wide.segs.push_back(Segment::arc(Complex(0), 0.4, kPi, 3 * kPi));
  wide.segs.push_back(Segment::line(Complex(-0.4), Complex(-1)));
  wide.validate();

  PathSpec narrow;
  narrow.segs.push_back(Segment::line(Complex(-1), Complex(-0.15)));
  narrow.segs.push_back(Segment::arc(Complex(0), 0.15, kPi, 3 * kPi));
  narrow.segs.push_back(Segment::line(Complex(-0.15), Complex(-1)));
  narrow.validate();

  Mat2 Mw = integrate_frame(wide, A, {}, Mat2::id());
  Mat2 Mn = integrate_frame(narrow, A, {}, Mat2::id());
  CHECK(Mw.dist(Mn) < 1e-8);
  CHECK(std::abs(Mw.det() - Complex(1)) < 1e-10);
}

TEST_CASE("reflection symmetry of real-coefficient frames") {
  HopfDifferential q = hopf_from_divisor(make_divisor(-0.6, -0.6, -0.6));
  PathSpec path = PathSpec::polyline({Complex(-1), Complex(-0.5, 0.7), Complex(0.5, 0.9)});
  CHECK(conjugate_symmetry_check(path, q) < 1e-8);
}

TEST_CASE("step controller collapses on a pole crossing the path") {
  CoeffFn A = [](Complex z) {
    Complex d = z - 2.5;
    Complex d3 = d * d * d;
    return Mat2{0, 1.0 / (d3 * d3), 0, 0};
  };
  PathSpec path = PathSpec::polyline({Complex(2), Complex(3)});
  CHECK(throws_code([&] { integrate_frame(path, A, {}, Mat2::id()); }, Err::StepUnderflow));
}

TEST_CASE("frame coefficient structure and w-chart transform") {
  HopfDifferential q = hopf_from_divisor(make_divisor(0.5, 2, 0.5));
  Complex z(0.7, 0.4);
  Mat2 A = ode_coefficient(q, z);
  Complex Q = evaluate_Q(q, z);
  CHECK(std::abs(A.c - Q) < 1e-13 * (1 + std::abs(Q)));
  CHECK(std::abs(A.a - z * Q) < 1e-13 * (1 + std::abs(Q)));
  CHECK(std::abs(A.b + z * z * Q) < 1e-13 * (1 + std::abs(Q)));
  CHECK(std::abs(A.tr()) < 1e-13 * (1 + std::abs(Q)));
  CHECK(std::abs(A.det()) < 1e-13 * (1 + std::norm(Q)));

  Complex w(0.4, -0.3);
  Mat2 direct = ode_coefficient_wchart(q, w);
  Mat2 pulled = ode_coefficient(q, 1.0 / w) * (-1.0 / (w * w));
  CHECK(direct.dist(pulled) < 1e-11 * (1 + direct.norm()));
}
