#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tailqw/evolve.hpp"
#include "tailqw/io.hpp"

namespace tailqw {

struct ScenarioResult {
  std::string name;
  io::json parameters;  // after defaults are filled in
  io::json tables;      // name -> JSON value, or CSV text for names ending in ".csv"
  std::vector<PSTCertificate> certificates;
  std::vector<std::uint64_t> seeds;
  double wall_clock_seconds = 0.0;

  // Everything except the timing field is a pure function of the parameters.
  io::json to_json(bool include_timing = true) const;
};

std::vector<std::string> scenario_names();
// One line per scenario listing its parameters and defaults.
std::string scenario_usage();

/// Runs a named preset. Unknown names or parameters, and out-of-range
/// values, throw ValidationError with the usage text appended.
ScenarioResult run_scenario(const std::string& name, const io::json& params = io::json::object());

// Graph builders shared with the CLI and tests.
TailedGraph lollipop(int n);
TailedGraph multicone_with_tails(int m, int n);
TailedGraph cone_cube_with_tail(int n);
TailedGraph fly_swatter();
TailedGraph series_oriented_k3();

struct DualRail {
  TailedGraph graph;
  int u0, u1, v0, v1;
};
// Rooted product of P3 with {G, tail, G}; G rooted at 0, v the last vertex.
DualRail dual_rail(const Graph& g);
// Two copies of G joined as G x K2, roots tied to a middle vertex with the tail.
DualRail dual_rail_prism(const Graph& g);

}  // namespace tailqw
