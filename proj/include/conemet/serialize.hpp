#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "conemet/divisor.hpp"
#include "conemet/hopf.hpp"
#include "conemet/metriceval.hpp"
#include "conemet/monodromy.hpp"
#include "conemet/pathint.hpp"
#include "conemet/reducible.hpp"

namespace conemet {

// JSON views of the library types. Complex numbers are [re, im] pairs,
// matrices row-major nested arrays; everything round-trips losslessly
// through doubles.
nlohmann::json js(Complex z);
nlohmann::json js(const Mat2& m);
nlohmann::json js(const std::vector<Complex>& v);
nlohmann::json js(const Divisor& d);
nlohmann::json js(const HopfDifferential& q);
nlohmann::json js(const Segment& s);
nlohmann::json js(const PathSpec& p);
nlohmann::json js(const MonodromyTriple& m);
nlohmann::json js(const Unitarization& u);
nlohmann::json js(const DevelopingMap& g);
nlohmann::json js(const ReducibleSolution& s);
nlohmann::json js(const ConePoint& c);

// Lowercase wire names ("irreducible", "h1-reducible", "h3-reducible").
const char* json_reducibility(ReducibilityClass c);

}  // namespace conemet
