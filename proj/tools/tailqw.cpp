// tailqw: quantum walks on graphs with semi-infinite tails.
//
//   tailqw scenario fly-swatter
//   tailqw graph lollipop --n 5 --out lollipop5.json
//   tailqw decouple --graph lollipop5.json
//   tailqw evolve --graph g.json --source 0 --time 1.5
//   tailqw certify --graph fly.json --pair-source 1,2:2,1 --pair-target 2,3:3,2 --horizon 10
//
// Exit status: 0 ok, 2 invalid input, 3 numerical failure, 1 anything else.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "tailqw/cube_modules.hpp"
#include "tailqw/decouple.hpp"
#include "tailqw/errors.hpp"
#include "tailqw/evolve.hpp"
#include "tailqw/io.hpp"
#include "tailqw/scenarios.hpp"

namespace {

using tailqw::io::json;

struct Common {
  std::string graph;
  std::string out;
  std::string format = "json";
  double tol = tailqw::kDefaultTolerance;
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream f(c.out);
  if (!f) throw tailqw::ValidationError("cannot write " + c.out);
  f << text;
  if (text.empty() || text.back() != '\n') f << '\n';
}

tailqw::TailedGraph load_graph(const Common& c) {
  if (c.graph.empty()) throw tailqw::ValidationError("--graph is required");
  return tailqw::io::graph_from_json(tailqw::io::read_json_file(c.graph));
}

// "a:b" -> (e_a - e_b) / sqrt(2)
tailqw::State pair_state(const tailqw::TailedGraph& t, const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos || spec.find(':', colon + 1) != std::string::npos)
    throw tailqw::ValidationError("pair state '" + spec + "' must look like u1,u2:v1,v2");
  const int a = tailqw::io::resolve_vertex(t.base(), spec.substr(0, colon));
  const int b = tailqw::io::resolve_vertex(t.base(), spec.substr(colon + 1));
  if (a == b) throw tailqw::ValidationError("pair state '" + spec + "' names one vertex twice");
  tailqw::CVector v = tailqw::CVector::Zero(t.finite_size());
  v[a] = 1.0 / std::sqrt(2.0);
  v[b] = -1.0 / std::sqrt(2.0);
  return tailqw::State::from_finite(t, std::move(v));
}

struct StateArgs {
  std::string vertex, pair, file;
};

void add_state_options(CLI::App* app, StateArgs& s, const std::string& role) {
  auto* v = app->add_option("--" + role, s.vertex, "vertex id or label");
  auto* p = app->add_option("--pair-" + role, s.pair, "pair state u1,u2:v1,v2");
  auto* f = app->add_option("--" + role + "-state", s.file, "state JSON file");
  v->excludes(p)->excludes(f);
  p->excludes(f);
}

tailqw::State build_state(const tailqw::TailedGraph& t, const StateArgs& s, const std::string& role) {
  if (!s.vertex.empty()) return tailqw::State::vertex(t, tailqw::io::resolve_vertex(t.base(), s.vertex));
  if (!s.pair.empty()) return pair_state(t, s.pair);
  if (!s.file.empty()) {
    auto state = tailqw::io::state_from_json(tailqw::io::read_json_file(s.file), t);
    if (std::abs(state.norm() - 1.0) > 1e-10) throw tailqw::ValidationError(s.file + ": state is not normalized");
    return state;
  }
  throw tailqw::ValidationError("one of --" + role + ", --pair-" + role + " or --" + role + "-state is required");
}

tailqw::TailedGraph build_family(const std::string& family, int n, int m) {
  using namespace tailqw;
  if (family == "lollipop") return lollipop(n);
  if (family == "multicone") return multicone_with_tails(m, n);
  if (family == "cone-cube") return cone_cube_with_tail(n);
  if (family == "tailed-cube") return attach_tail(hypercube(n), 0);
  if (family == "fly-swatter") return fly_swatter();
  if (family == "series-k3") return series_oriented_k3();
  if (family == "dual-rail") return dual_rail(krawtchouk_chain(n)).graph;
  if (family == "dual-rail-prism") return dual_rail_prism(krawtchouk_chain(n)).graph;
  if (family == "path") return TailedGraph(path(n), {});
  if (family == "complete") return TailedGraph(complete(n), {});
  if (family == "cube") return TailedGraph(hypercube(n), {});
  if (family == "krawtchouk") return TailedGraph(krawtchouk_chain(n), {});
  throw ValidationError("unknown graph family '" + family + "'");
}

json parse_params(const std::vector<std::string>& pairs) {
  json params = json::object();
  for (const auto& kv : pairs) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw tailqw::ValidationError("--param expects key=value, got '" + kv + "'");
    const std::string value = kv.substr(eq + 1);
    try {
      params[kv.substr(0, eq)] = json::parse(value);
    } catch (const json::parse_error&) {
      throw tailqw::ValidationError("--param " + kv + ": value is not a number");
    }
  }
  return params;
}

int run(int argc, char** argv) {
  CLI::App app{"Continuous-time quantum walks on graphs with infinite path tails"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&](CLI::App* sub, bool graph) {
    if (graph) sub->add_option("--graph", common.graph, "graph JSON file")->required();
    sub->add_option("--out", common.out, "write to this file instead of stdout");
    sub->add_option("--tol", common.tol, "truncation convergence tolerance")->check(CLI::PositiveNumber);
  };

  // scenario
  auto* scenario = app.add_subcommand("scenario", "run a named preset");
  scenario->footer(tailqw::scenario_usage());
  std::string scenario_name;
  std::vector<std::string> scenario_params;
  std::optional<std::uint64_t> seed;
  bool no_timing = false;
  scenario->add_option("name", scenario_name, "preset name")->required();
  scenario->add_option("--param", scenario_params, "key=value, repeatable");
  scenario->add_option("--seed", seed, "random seed");
  scenario->add_option("--format", common.format)->check(CLI::IsMember({"json", "csv"}));
  scenario->add_flag("--no-timing", no_timing, "omit the wall-clock field");
  add_common(scenario, false);

  // graph builder
  auto* graph = app.add_subcommand("graph", "write a graph family as JSON");
  std::string family;
  int family_n = 3, family_m = 1;
  graph->add_option("family", family,
                    "lollipop, multicone, cone-cube, tailed-cube, fly-swatter, series-k3, dual-rail, "
                    "dual-rail-prism, path, complete, cube, krawtchouk")
      ->required();
  graph->add_option("--n", family_n, "size parameter");
  graph->add_option("--m", family_m, "coclique size for multicone");
  graph->add_option("--out", common.out, "write to this file instead of stdout");

  // decouple
  auto* decouple = app.add_subcommand("decouple", "dark block and Jacobi prefix of a graph with tails");
  add_common(decouple, true);

  // evolve
  auto* evolve = app.add_subcommand("evolve", "state at time t");
  StateArgs evolve_src;
  double evolve_time = 0.0;
  add_state_options(evolve, evolve_src, "source");
  evolve->add_option("--time", evolve_time, "evolution time")->required();
  add_common(evolve, true);

  // curve
  auto* curve = app.add_subcommand("curve", "fidelity |<target, U(t) source>| on a grid");
  StateArgs curve_src, curve_tgt;
  double curve_horizon = 10.0, curve_step = 0.01;
  add_state_options(curve, curve_src, "source");
  add_state_options(curve, curve_tgt, "target");
  curve->add_option("--horizon", curve_horizon)->check(CLI::PositiveNumber);
  curve->add_option("--step", curve_step)->check(CLI::PositiveNumber);
  curve->add_option("--format", common.format)->check(CLI::IsMember({"json", "csv"}));
  add_common(curve, true);

  // certify
  auto* certify = app.add_subcommand("certify", "search for perfect state transfer");
  StateArgs cert_src, cert_tgt;
  double horizon = 10.0;
  std::optional<double> cert_time;
  double threshold = tailqw::kPstThreshold;
  add_state_options(certify, cert_src, "source");
  add_state_options(certify, cert_tgt, "target");
  certify->add_option("--horizon", horizon, "search window [0, horizon]")->check(CLI::PositiveNumber);
  certify->add_option("--time", cert_time, "certify at this time instead of searching");
  certify->add_option("--threshold", threshold)->check(CLI::Range(0.0, 1.0));
  add_common(certify, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*scenario) {
    auto params = parse_params(scenario_params);
    if (seed) params["seed"] = *seed;
    const auto result = tailqw::run_scenario(scenario_name, params);
    if (common.format == "csv") {
      std::string csv;
      for (const auto& [key, value] : result.tables.items())
        if (key.size() > 4 && key.ends_with(".csv")) {
          csv = value.get<std::string>();
          break;
        }
      if (csv.empty()) throw tailqw::ValidationError("scenario " + scenario_name + " has no CSV table");
      emit(common, csv);
    } else {
      emit(common, result.to_json(!no_timing).dump(2));
    }
  } else if (*graph) {
    emit(common, tailqw::io::graph_to_json(build_family(family, family_n, family_m)).dump(2));
  } else if (*decouple) {
    auto t = load_graph(common);
    json out = json::object();
    if (t.tails().size() > 1) {
      auto reduced = tailqw::reduce_multitail(t);
      out["vertex_map"] = reduced.vertex_map;
      t = std::move(reduced.graph);
    }
    const auto form = tailqw::decouple(t);
    out["form"] = tailqw::io::to_json(form);
    out["residual"] = tailqw::verify_decoupling(t, form, 100);
    emit(common, out.dump(2));
  } else if (*evolve) {
    const auto t = load_graph(common);
    const auto result = tailqw::evolve(t, build_state(t, evolve_src, "source"), evolve_time, common.tol);
    auto j = tailqw::io::to_json(result);
    j["time"] = evolve_time;
    emit(common, j.dump(2));
  } else if (*curve) {
    const auto t = load_graph(common);
    const auto src = build_state(t, curve_src, "source");
    const auto tgt = build_state(t, curve_tgt, "target");
    std::vector<double> times;
    for (double x = 0.0; x <= curve_horizon + 1e-12; x += curve_step) times.push_back(x);
    const auto c = tailqw::fidelity_curve(t, src, tgt, times, common.tol);
    emit(common, common.format == "csv" ? tailqw::io::curve_to_csv(c.times, c.magnitudes)
                                        : tailqw::io::to_json(c).dump(2));
  } else if (*certify) {
    const auto t = load_graph(common);
    const auto src = build_state(t, cert_src, "source");
    const auto tgt = build_state(t, cert_tgt, "target");
    const double reach = cert_time ? std::abs(*cert_time) : horizon;
    const auto op = tailqw::converged_operator(t, src, reach, common.tol);
    const auto s = tailqw::embed(t, src, op.truncation);
    const auto g = tailqw::embed(t, tgt, op.truncation);
    std::vector<tailqw::PSTCertificate> certs;
    if (cert_time) certs.push_back(tailqw::certify_transfer(op.eig, s, g, *cert_time, threshold));
    else certs = tailqw::detect_pst(op.eig, s, g, horizon, threshold);
    json list = json::array();
    for (const auto& c : certs) list.push_back(tailqw::io::to_json(c));
    emit(common, json{{"truncation", op.truncation}, {"certificates", list}}.dump(2));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const tailqw::NonConvergence& e) {
    std::cerr << "error: " << e.what();
    if (e.truncation_reached() > 0) std::cerr << " (truncation reached: " << e.truncation_reached() << ")";
    std::cerr << '\n';
    return 3;
  } catch (const tailqw::NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const tailqw::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
