#include "conemet/serialize.hpp"

namespace conemet {

using nlohmann::json;

json js(Complex z) { return json::array({z.real(), z.imag()}); }

json js(const Mat2& m) {
  return json::array({json::array({js(m.a), js(m.b)}), json::array({js(m.c), js(m.d)})});
}

json js(const std::vector<Complex>& v) {
  json a = json::array();
  for (Complex z : v) a.push_back(js(z));
  return a;
}

json js(const Divisor& d) { return json{{"beta", d.beta}}; }

json js(const HopfDifferential& q) { return json{{"c", q.c}}; }

json js(const Segment& s) {
  if (s.kind == Segment::Kind::Line)
    return json{{"type", "line"}, {"from", js(s.a)}, {"to", js(s.b)}};
  return json{{"type", "arc"},
              {"center", js(s.center)},
              {"radius", s.radius},
              {"th0", s.th0},
              {"th1", s.th1}};
}

json js(const PathSpec& p) {
  json segs = json::array();
  for (const Segment& s : p.segs) segs.push_back(js(s));
  return json{{"segments", segs}, {"r_min", p.r_min}, {"obstacles", js(p.obstacles)}};
}

json js(const MonodromyTriple& m) {
  return json{{"M1", js(m.M1)},
              {"M2", js(m.M2)},
              {"M3", js(m.M3)},
              {"basepoint", js(m.basepoint)},
              {"loop_radius", m.loop_radius},
              {"wloop_radius", m.wloop_radius},
              {"product_residual", m.product_residual},
              {"wchart_residual", m.wchart_residual}};
}

json js(const Unitarization& u) {
  return json{{"P", js(u.P)},
              {"U1", js(u.U1)},
              {"U2", js(u.U2)},
              {"U3", js(u.U3)},
              {"kernel_gap", u.kernel_gap},
              {"max_unitary_defect", u.max_unitary_defect}};
}

json js(const DevelopingMap& g) {
  return json{{"numerator", js(g.num.c)},
              {"denominator", js(g.den.c)},
              {"mu", g.mu},
              {"nu", json::array({g.nu1, double(g.nu2)})},
              {"c", js(g.c)},
              {"t", g.t}};
}

const char* json_reducibility(ReducibilityClass c) {
  switch (c) {
    case ReducibilityClass::Irreducible: return "irreducible";
    case ReducibilityClass::H1Reducible: return "h1-reducible";
    case ReducibilityClass::H3Reducible: return "h3-reducible";
  }
  return "unknown";
}

json js(const ReducibleSolution& s) {
  json out{{"class", json_reducibility(s.klass)},
           {"N", s.N},
           {"roots", js(s.roots)},
           {"exponents", json{{"nu1", s.nu1}, {"nu2", s.nu2}, {"nu3", s.nu3}}},
           {"c", js(s.c)},
           {"solver_beta", s.solver_beta},
           {"perm", s.perm.s},
           {"residue_bound", s.residue_bound}};
  out["case"] = s.h1_case ? json(h1_case_name(*s.h1_case)) : json(nullptr);
  return out;
}

json js(const ConePoint& c) {
  return json{{"chart", c.chart == Chart::Z ? "z" : "w"}, {"p", js(c.p)}, {"order", c.order}};
}

}  // namespace conemet
