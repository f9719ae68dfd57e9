#pragma once

#include <array>
#include <string>

#include "json.hpp"

namespace conemet {

// Everything a run depends on; embedded verbatim in each JSON artifact so
// outputs are self-describing and reruns reproducible.
struct RunConfig {
  std::string subcommand;
  std::string beta_text;
  double rtol = 1e-10;
  double atol = 1e-12;
  int res = 200;
  double exclusion = 1e-3;
  double curvature_safe = 0.15;
  int multistart = 200;
  unsigned long long seed = 12345;
  bool deterministic = false;
  std::string out_dir;    // "" = stdout only
  std::string mesh_path;  // optional OBJ export (surface)
};

nlohmann::json js(const RunConfig& cfg);

// Exit codes: 0 = ok / metric exists, 2 = proven nonexistent,
// 3 = undetermined, 64 = usage error, 1 = invariant check failed.
int run_cli(int argc, const char* const* argv);

}  // namespace conemet
