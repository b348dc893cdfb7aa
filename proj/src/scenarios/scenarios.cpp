#include "tailqw/scenarios.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "tailqw/cube_modules.hpp"
#include "tailqw/decouple.hpp"
#include "tailqw/errors.hpp"
#include "tailqw/partition.hpp"

namespace tailqw {

using io::json;

namespace {

constexpr double kPi = std::numbers::pi;

struct Param {
  std::string key;
  json fallback;
  double lo;
  double hi;
  bool integer;
};

struct Preset {
  std::vector<Param> params;
  std::function<void(const json&, ScenarioResult&)> run;
};

std::vector<double> uniform_grid(double horizon, double step) {
  const auto count = static_cast<std::size_t>(std::floor(horizon / step + 1e-9));
  std::vector<double> t(count + 1);
  for (std::size_t i = 0; i <= count; ++i) t[i] = static_cast<double>(i) * step;
  return t;
}

CVector pair_vector(int dim, int a, int b) {
  CVector v = CVector::Zero(dim);
  v[a] = 1.0 / std::sqrt(2.0);
  v[b] = -1.0 / std::sqrt(2.0);
  return v;
}

// Best certificate of detect_pst (if any) closest to `expected`.
std::optional<PSTCertificate> nearest(std::vector<PSTCertificate> certs, double expected) {
  if (certs.empty()) return std::nullopt;
  auto it = std::min_element(certs.begin(), certs.end(), [&](const auto& a, const auto& b) {
    return std::abs(a.time - expected) < std::abs(b.time - expected);
  });
  return std::move(*it);
}

json sedentary_summary(const SedentarinessReport& r) {
  json j{{"vertex", r.vertex},
         {"min_magnitude", r.min_magnitude},
         {"argmin_time", r.argmin_time},
         {"truncation", r.truncation}};
  if (r.analytic_bound) {
    j["analytic_bound"] = *r.analytic_bound;
    j["bound_holds"] = r.min_magnitude >= *r.analytic_bound;
  }
  return j;
}

void run_lollipop(const json& p, ScenarioResult& out) {
  const int n = p["n"];
  const double horizon = p["horizon"], step = p["step"], tol = p["tol"];
  const auto t = lollipop(n);
  const auto times = uniform_grid(horizon, step);
  const auto report = sedentariness(t, 1, times, tol);

  // Tail-free clique against |e^{-it(n-1)}/n + e^{it}(1 - 1/n)|.
  const auto eig = hermitian_eig(complete(n).hermitian());
  CVector e = CVector::Zero(n);
  e[1] = 1.0;
  const SpectralOverlap clique(eig, e, e);
  const auto amps = clique.amplitudes(times);
  double worst = 0.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double x = times[i];
    const double closed = std::abs(std::exp(cplx(0.0, -x * (n - 1))) / static_cast<double>(n) +
                                   std::exp(cplx(0.0, x)) * (1.0 - 1.0 / n));
    worst = std::max(worst, std::abs(std::abs(amps[i]) - closed));
  }
  auto summary = sedentary_summary(report);
  summary["clique_formula_max_error"] = worst;
  out.tables["summary"] = summary;
  out.tables["return_curve.csv"] = io::curve_to_csv(report.times, report.magnitudes);
}

void run_multicone(const json& p, ScenarioResult& out) {
  const int m = p["m"], n = p["n"];
  const double horizon = p["horizon"], step = p["step"], tol = p["tol"];
  const auto t = multicone_with_tails(m, n);
  const auto report = sedentariness(t, m, uniform_grid(horizon, step), tol);
  out.tables["summary"] = sedentary_summary(report);
  out.tables["return_curve.csv"] = io::curve_to_csv(report.times, report.magnitudes);
}

void run_cone_cube(const json& p, ScenarioResult& out) {
  const int n = p["n"];
  const double horizon = p["horizon"], step = p["step"], tol = p["tol"];
  const auto t = cone_cube_with_tail(n);
  const int u = 1, v = 1 << n;  // cube vertices 0 and its antipode, shifted past the apex
  const auto src = State::vertex(t, u);
  const auto tgt = State::vertex(t, v);
  const auto op = converged_operator(t, src, horizon, tol);
  const CVector s = embed(t, src, op.truncation), g = embed(t, tgt, op.truncation);
  const SpectralOverlap overlap(op.eig, s, g);

  auto peaks = detect_pst(op.eig, s, g, horizon, 0.5);
  json peak_rows = json::array();
  for (const auto& c : peaks) peak_rows.push_back({{"time", c.time}, {"fidelity", c.fidelity}});
  json summary{{"n", n}, {"truncation", op.truncation}, {"peaks", peak_rows}};
  if (!peaks.empty()) {
    auto best = *std::max_element(peaks.begin(), peaks.end(),
                                  [](const auto& a, const auto& b) { return a.fidelity < b.fidelity; });
    summary["transfer_time"] = best.time;
    summary["transfer_fidelity"] = best.fidelity;
    summary["deficit"] = 1.0 - best.fidelity;
    best.threshold = 0.95;
    out.certificates.push_back(std::move(best));
  }
  json marks = json::array();
  for (int k = 1; k * kPi / 2 <= horizon + 1e-12; k += 2)
    marks.push_back({{"time", k * kPi / 2}, {"fidelity", std::abs(overlap.amplitude(k * kPi / 2))}});
  summary["odd_half_pi"] = marks;
  summary["fidelity_at_n_half_pi"] = std::abs(overlap.amplitude(n * kPi / 2));
  out.tables["summary"] = summary;

  const auto times = uniform_grid(horizon, step);
  const auto amps = overlap.amplitudes(times);
  std::vector<double> mags;
  for (const auto& a : amps) mags.push_back(std::abs(a));
  out.tables["transfer_curve.csv"] = io::curve_to_csv(times, mags);
}

void run_random(const json& p, ScenarioResult& out) {
  const int n = p["n"], trials = p["trials"];
  const std::uint64_t seed = p["seed"];
  json rows = json::array();
  int controllable = 0;
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    out.seeds.push_back(s);
    const auto g = cone(random_graph(n, s));
    const auto report = controllability(g, 0);
    const bool full = report.dark_dimension == 0;
    controllable += full;
    rows.push_back({{"seed", s}, {"rank", report.rank}, {"controllable", full}});
  }
  out.tables["trials"] = rows;
  out.tables["summary"] = {{"n", n},
                           {"trials", trials},
                           {"controllable", controllable},
                           {"fraction", static_cast<double>(controllable) / trials}};
}

void run_series_k3(const json& p, ScenarioResult& out) {
  const double horizon = p["horizon"], tol = p["tol"];
  const Graph k3 = oriented_clique3();
  const auto k3_eig = hermitian_eig(k3.hermitian());
  const auto t = series_oriented_k3();
  const auto form = decouple(t);

  json rows = json::array();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      CVector s = CVector::Zero(3), g = CVector::Zero(3);
      s[a] = 1.0;
      g[b] = 1.0;
      const auto certs = detect_pst(k3_eig, s, g, horizon);
      if (certs.empty()) {
        rows.push_back({{"source", a}, {"target", b}, {"pst", false}});
        continue;
      }
      const auto& c = certs.front();
      json row{{"source", a}, {"target", b}, {"pst", true}, {"time", c.time}, {"fidelity", c.fidelity}};
      json tailed = json::array();
      for (int copy = 0; copy < 2; ++copy) {
        const int off = 1 + 3 * copy;
        tailed.push_back(fidelity(t, State::vertex(t, off + a), State::vertex(t, off + b), c.time, tol));
      }
      row["tailed_fidelity"] = tailed;
      rows.push_back(row);
      out.certificates.push_back(c);
    }
  }
  out.tables["pairs"] = rows;
  out.tables["summary"] = {{"dark_dimension", form.dark_dimension()},
                           {"krylov_dimension", form.krylov_dimension()}};
}

void run_fly_swatter(const json& p, ScenarioResult& out) {
  const double horizon = p["horizon"], tol = p["tol"];
  const auto t = fly_swatter();
  const int dim = t.finite_size();
  const auto src = State::from_finite(t, pair_vector(dim, io::resolve_vertex(t.base(), "1,2"),
                                                     io::resolve_vertex(t.base(), "2,1")));
  const auto tgt = State::from_finite(t, pair_vector(dim, io::resolve_vertex(t.base(), "2,3"),
                                                     io::resolve_vertex(t.base(), "3,2")));
  const auto op = converged_operator(t, src, horizon, tol);
  const double expected = kPi / std::sqrt(2.0);
  auto cert = nearest(detect_pst(op.eig, embed(t, src, op.truncation), embed(t, tgt, op.truncation), horizon),
                      expected);
  const auto form = decouple(t);
  json summary{{"expected_time", expected},
               {"truncation", op.truncation},
               {"dark_dimension", form.dark_dimension()},
               {"fidelity_at_expected", fidelity(t, src, tgt, expected, tol)}};
  if (cert) {
    summary["time"] = cert->time;
    summary["fidelity"] = cert->fidelity;
    out.certificates.push_back(std::move(*cert));
  }
  out.tables["summary"] = summary;
}

json module_rows(const std::vector<WalkModule>& modules, const CMatrix& a, double horizon,
                 ScenarioResult& out, bool& all_certified) {
  json rows = json::array();
  all_certified = true;
  for (const auto& m : modules) {
    const HermitianMatrix block(module_block(m, a));
    const auto eig = hermitian_eig(block);
    const int len = m.chain_length;
    CVector s = CVector::Zero(len), g = CVector::Zero(len);
    s[0] = 1.0;
    g[len - 1] = 1.0;
    PSTCertificate cert = len == 1 ? certify_transfer(eig, s, g, kPi / 2)
                                   : nearest(detect_pst(eig, s, g, horizon), kPi / 2).value_or(
                                         certify_transfer(eig, s, g, kPi / 2));
    const bool ok = cert.fidelity >= cert.threshold && std::abs(cert.time - kPi / 2) < 1e-6;
    all_certified = all_certified && ok;
    rows.push_back({{"chain_length", len},
                    {"primary", m.is_primary},
                    {"time", cert.time},
                    {"fidelity", cert.fidelity},
                    {"invariance_residual", invariance_residual(m, a)}});
    if (len > 1) out.certificates.push_back(std::move(cert));
  }
  return rows;
}

void run_clebsch_gordan(const json& p, ScenarioResult& out) {
  const int n = p["n"];
  const double horizon = p["horizon"];
  const auto k = krawtchouk_chain(n);
  const CMatrix a = cartesian(k, k).adjacency();
  const auto modules = clebsch_gordan_square(n);
  bool all = false;
  const auto rows = module_rows(modules, a, horizon, out, all);
  std::vector<int> lengths;
  for (const auto& m : modules) lengths.push_back(m.chain_length);
  out.tables["modules"] = rows;
  out.tables["summary"] = {{"chain_lengths", lengths},
                           {"block_residual", block_residual(modules, a)},
                           {"all_endpoint_pst", all}};
}

void run_cube_dark(const json& p, ScenarioResult& out) {
  const int n = p["n"];
  const double horizon = p["horizon"], tol = p["tol"];
  const auto t = attach_tail(hypercube(n), 0);
  const auto src = State::from_finite(t, zeta_state(n, 1));
  const auto tgt = State::from_finite(t, zeta_state(n, n - 1));
  const auto op = converged_operator(t, src, kPi / 2, tol);
  auto cert = certify_transfer(op.eig, embed(t, src, op.truncation), embed(t, tgt, op.truncation), kPi / 2);

  const CMatrix a = hypercube(n).adjacency();
  const auto modules = dark_modules_of_tailed_cube(n);
  bool all = false;
  ScenarioResult scratch;
  const auto rows = module_rows(modules, a, horizon, scratch, all);
  std::map<int, int> histogram;
  for (const auto& m : modules) ++histogram[m.chain_length];
  json counts = json::object();
  for (const auto& [len, count] : histogram) counts[std::to_string(len)] = count;

  const auto form = decouple(t);
  out.tables["summary"] = {{"n", n},
                           {"zeta_time", cert.time},
                           {"zeta_fidelity", cert.fidelity},
                           {"truncation", op.truncation},
                           {"dark_modules", modules.size()},
                           {"chain_length_counts", counts},
                           {"dark_dimension", form.dark_dimension()},
                           {"all_modules_endpoint_pst", all}};
  out.tables["modules"] = rows;
  out.certificates.push_back(std::move(cert));
}

void run_dual_rail(const json& p, ScenarioResult& out) {
  const int k = p["k"];
  const double horizon = p["horizon"], tol = p["tol"];
  const Graph g = krawtchouk_chain(k);
  json summary = json::object();
  for (const auto& [label, rail] : {std::pair{"rooted_product", dual_rail(g)},
                                    std::pair{"prism", dual_rail_prism(g)}}) {
    const auto& t = rail.graph;
    const int dim = t.finite_size();
    const auto src = State::from_finite(t, pair_vector(dim, rail.u0, rail.u1));
    const auto tgt = State::from_finite(t, pair_vector(dim, rail.v0, rail.v1));
    const auto op = converged_operator(t, src, horizon, tol);
    const CVector s = embed(t, src, op.truncation), e = embed(t, tgt, op.truncation);
    auto cert = certify_transfer(op.eig, s, e, kPi / 2);
    const auto found = detect_pst(op.eig, s, e, horizon);
    json times = json::array();
    for (const auto& c : found) times.push_back(c.time);
    summary[label] = {{"fidelity", cert.fidelity},
                      {"phase", std::arg(cert.amplitude)},
                      {"detected_times", times},
                      {"truncation", op.truncation}};
    out.certificates.push_back(std::move(cert));
  }
  out.tables["summary"] = summary;
}

Param tol_param() { return {"tol", kDefaultTolerance, 1e-15, 1e-2, false}; }

const std::map<std::string, Preset>& presets() {
  static const std::map<std::string, Preset> table = {
      {"lollipop-sedentary",
       {{{"n", 10, 3, 40, true}, {"horizon", 30.0, 0.01, 200, false}, {"step", 0.01, 1e-4, 10, false}, tol_param()},
        run_lollipop}},
      {"multicone-sedentary",
       {{{"m", 3, 1, 8, true}, {"n", 6, 2, 30, true}, {"horizon", 30.0, 0.01, 200, false},
         {"step", 0.01, 1e-4, 10, false}, tol_param()},
        run_multicone}},
      {"cone-cube-transport",
       {{{"n", 4, 1, 8, true}, {"horizon", 4 * kPi, 0.1, 100, false}, {"step", 0.01, 1e-4, 10, false}, tol_param()},
        run_cone_cube}},
      {"random-controllability",
       {{{"n", 12, 1, 40, true}, {"trials", 50, 1, 10000, true}, {"seed", 1, 0, 9.0e15, true}},
        run_random}},
      {"series-oriented-k3", {{{"horizon", 2 * kPi, 0.1, 100, false}, tol_param()}, run_series_k3}},
      {"fly-swatter", {{{"horizon", 4.0, 0.1, 100, false}, tol_param()}, run_fly_swatter}},
      {"clebsch-gordan-square", {{{"n", 3, 1, 10, true}, {"horizon", 2.0, 0.1, 100, false}}, run_clebsch_gordan}},
      {"cube-dark-pst", {{{"n", 4, 2, 10, true}, {"horizon", 2.0, 0.1, 100, false}, tol_param()}, run_cube_dark}},
      {"dual-rail", {{{"k", 4, 1, 12, true}, {"horizon", 2.0, 0.1, 100, false}, tol_param()}, run_dual_rail}},
  };
  return table;
}

json resolve_params(const std::string& name, const Preset& preset, const json& given) {
  if (!given.is_object()) throw ValidationError("scenario parameters must be a JSON object\n" + scenario_usage());
  json out = json::object();
  for (const auto& [key, value] : given.items()) {
    const auto it = std::find_if(preset.params.begin(), preset.params.end(),
                                 [&](const Param& p) { return p.key == key; });
    if (it == preset.params.end())
      throw ValidationError("scenario " + name + ": unknown parameter '" + key + "'\n" + scenario_usage());
    if (!value.is_number() || (it->integer && !value.is_number_integer()))
      throw ValidationError("scenario " + name + ": parameter '" + key + "' must be " +
                            (it->integer ? "an integer" : "a number") + "\n" + scenario_usage());
    const double x = value.get<double>();
    if (x < it->lo || x > it->hi) {
      std::ostringstream msg;
      msg << "scenario " << name << ": parameter '" << key << "' must lie in [" << it->lo << ", " << it->hi
          << "]\n"
          << scenario_usage();
      throw ValidationError(msg.str());
    }
    out[key] = value;
  }
  for (const auto& p : preset.params)
    if (!out.contains(p.key)) out[p.key] = p.fallback;
  return out;
}

}  // namespace

json ScenarioResult::to_json(bool include_timing) const {
  json certs = json::array();
  for (const auto& c : certificates) certs.push_back(io::to_json(c));
  json j{{"scenario", name}, {"parameters", parameters}, {"tables", tables}, {"certificates", certs},
         {"seeds", seeds}};
  if (include_timing) j["wall_clock_seconds"] = wall_clock_seconds;
  return j;
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (const auto& [name, _] : presets()) names.push_back(name);
  return names;
}

std::string scenario_usage() {
  std::ostringstream out;
  out << "scenarios:\n";
  for (const auto& [name, preset] : presets()) {
    out << "  " << name;
    for (const auto& p : preset.params) out << ' ' << p.key << '=' << p.fallback.dump();
    out << '\n';
  }
  return out.str();
}

ScenarioResult run_scenario(const std::string& name, const json& params) {
  const auto it = presets().find(name);
  if (it == presets().end()) throw ValidationError("unknown scenario '" + name + "'\n" + scenario_usage());
  ScenarioResult out;
  out.name = name;
  out.parameters = resolve_params(name, it->second, params);
  out.tables = json::object();
  const auto start = std::chrono::steady_clock::now();
  it->second.run(out.parameters, out);
  out.wall_clock_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

TailedGraph lollipop(int n) { return attach_tail(complete(n), 0); }

TailedGraph multicone_with_tails(int m, int n) {
  std::vector<Tail> tails;
  for (int i = 0; i < m; ++i) tails.push_back({i, 1.0});
  return TailedGraph(mcone(m, complete(n)), std::move(tails));
}

TailedGraph cone_cube_with_tail(int n) { return attach_tail(cone(hypercube(n)), 0); }

TailedGraph fly_swatter() {
  const Graph p3 = with_labels(path(3), {"1", "2", "3"});
  return attach_tail(cartesian(p3, p3), 0);
}

TailedGraph series_oriented_k3() {
  const std::vector<Graph> parts{complete(1), oriented_clique3(), oriented_clique3()};
  return attach_tail(series_graph(parts), 0);
}

DualRail dual_rail(const Graph& g) {
  const std::vector<RootedPiece> pieces{FinitePiece{g, 0}, TailMarker{}, FinitePiece{g, 0}};
  const Graph base = path(3);
  const auto map = rooted_product_vertex_map(base, pieces);
  const int last = g.size() - 1;
  return {rooted_product(base, pieces), map[0][0], map[2][0], map[0][last], map[2][last]};
}

DualRail dual_rail_prism(const Graph& g) {
  const int n = g.size();
  const Graph prism = cartesian(complete(2), g);
  const int middle = 2 * n;
  const std::vector<Edge> extra{{0, middle}, {n, middle}};
  const Graph base = with_edges(disjoint_union(prism, empty_graph(1)), extra);
  return {attach_tail(base, middle), 0, n, n - 1, 2 * n - 1};
}

}  // namespace tailqw
