#include "tailqw/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "tailqw/errors.hpp"

namespace tailqw::io {

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& msg) {
  throw ValidationError("field '" + field + "': " + msg);
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) field_error(where + key, "missing");
  return obj.at(key);
}

int as_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) field_error(field, "expected an integer, got " + std::string(j.type_name()));
  return j.get<int>();
}

double as_double(const json& j, const std::string& field) {
  if (!j.is_number()) field_error(field, "expected a number, got " + std::string(j.type_name()));
  return j.get<double>();
}

std::string idx(const std::string& base, std::size_t i) { return base + "[" + std::to_string(i) + "]"; }

int vertex_ref(const json& j, const Graph& g, const std::string& field) {
  if (j.is_string()) {
    try {
      return resolve_vertex(g, j.get<std::string>());
    } catch (const ValidationError& e) {
      field_error(field, e.what());
    }
  }
  const int v = as_int(j, field);
  if (v < 0 || v >= g.size()) field_error(field, "vertex " + std::to_string(v) + " out of range");
  return v;
}

}  // namespace

TailedGraph graph_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("graph: expected a JSON object");
  const int n = as_int(require(j, "n", ""), "n");
  if (n < 0) field_error("n", "must be non-negative");

  std::vector<Edge> edges;
  if (j.contains("edges")) {
    const auto& list = j.at("edges");
    if (!list.is_array()) field_error("edges", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& e = list[i];
      const auto at = idx("edges", i);
      if (!e.is_array() || e.size() < 2 || e.size() > 4)
        field_error(at, "expected [u, v], [u, v, re] or [u, v, re, im]");
      Edge edge{as_int(e[0], idx(at, 0)), as_int(e[1], idx(at, 1))};
      const double re = e.size() > 2 ? as_double(e[2], idx(at, 2)) : 1.0;
      const double im = e.size() > 3 ? as_double(e[3], idx(at, 3)) : 0.0;
      edge.weight = cplx(re, im);
      edges.push_back(edge);
    }
  }

  std::vector<std::string> labels;
  if (j.contains("labels")) {
    const auto& list = j.at("labels");
    if (!list.is_array()) field_error("labels", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i].is_string()) labels.push_back(list[i].get<std::string>());
      else if (list[i].is_number_integer()) labels.push_back(std::to_string(list[i].get<long long>()));
      else field_error(idx("labels", i), "expected a string");
    }
  }

  Graph g;
  try {
    g = Graph(n, edges, std::move(labels));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("graph: ") + e.what());
  }

  std::vector<Tail> tails;
  if (j.contains("tails")) {
    const auto& list = j.at("tails");
    if (!list.is_array()) field_error("tails", "expected an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const auto& t = list[i];
      const auto at = idx("tails", i);
      if (t.is_number_integer()) {
        tails.push_back({as_int(t, at), 1.0});
        continue;
      }
      if (!t.is_object()) field_error(at, "expected {\"vertex\": v, \"weight\": w}");
      Tail tail{as_int(require(t, "vertex", at + "."), at + ".vertex"), 1.0};
      if (t.contains("weight")) tail.weight = as_double(t.at("weight"), at + ".weight");
      tails.push_back(tail);
    }
  }
  try {
    return TailedGraph(std::move(g), std::move(tails));
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("graph: ") + e.what());
  }
}

json graph_to_json(const TailedGraph& t) {
  const Graph& g = t.base();
  json j;
  j["n"] = g.size();
  j["edges"] = json::array();
  for (const auto& [key, w] : g.entries()) {
    if (w.imag() == 0.0) j["edges"].push_back({key.first, key.second, w.real()});
    else j["edges"].push_back({key.first, key.second, w.real(), w.imag()});
  }
  j["tails"] = json::array();
  for (const auto& tail : t.tails()) j["tails"].push_back({{"vertex", tail.vertex}, {"weight", tail.weight}});
  if (!g.labels().empty()) j["labels"] = g.labels();
  return j;
}

json parse_text(std::string_view text, std::string_view source_name) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ValidationError(std::string(source_name) + ":" + std::to_string(line) + ":" +
                          std::to_string(column) + ": JSON syntax error");
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str(), path);
}

int resolve_vertex(const Graph& g, std::string_view ref) {
  const auto& labels = g.labels();
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == ref) return static_cast<int>(i);
  int v = -1;
  const auto [ptr, ec] = std::from_chars(ref.data(), ref.data() + ref.size(), v);
  if (ec != std::errc() || ptr != ref.data() + ref.size())
    throw ValidationError("no vertex labelled '" + std::string(ref) + "'");
  if (v < 0 || v >= g.size())
    throw ValidationError("vertex " + std::string(ref) + " out of range");
  return v;
}

State state_from_json(const json& j, const TailedGraph& t) {
  if (!j.is_object()) throw ValidationError("state: expected a JSON object");
  const auto& entries = require(j, "entries", "");
  if (!entries.is_array()) field_error("entries", "expected an array");
  CVector amps = CVector::Zero(t.finite_size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const auto at = idx("entries", i);
    if (!e.is_array() || e.size() < 2 || e.size() > 3) field_error(at, "expected [vertex, re, im]");
    const int v = vertex_ref(e[0], t.base(), idx(at, 0));
    const double re = as_double(e[1], idx(at, 1));
    const double im = e.size() > 2 ? as_double(e[2], idx(at, 2)) : 0.0;
    amps[v] += cplx(re, im);
  }
  return State::from_finite(t, std::move(amps));
}

Partition partition_from_json(const json& j, int n) {
  const auto& cells = require(j, "cells", "");
  if (!cells.is_array()) field_error("cells", "expected an array");
  std::vector<std::vector<int>> out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!cells[i].is_array()) field_error(idx("cells", i), "expected an array");
    std::vector<int> cell;
    for (std::size_t k = 0; k < cells[i].size(); ++k) cell.push_back(as_int(cells[i][k], idx(idx("cells", i), k)));
    out.push_back(std::move(cell));
  }
  return Partition(n, std::move(out));
}

json partition_to_json(const Partition& p) { return {{"cells", p.cells()}}; }

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
  return out;
}

json matrix_to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose()));
  return out;
}

json to_json(const DecoupledForm& form) {
  return {
      {"attachment", form.attachment},
      {"dark_dimension", form.dark_dimension()},
      {"krylov_dimension", form.krylov_dimension()},
      {"krylov_basis", matrix_to_json(form.krylov_basis)},
      {"dark_basis", matrix_to_json(form.dark_basis)},
      {"dark_block", matrix_to_json(form.dark_block)},
      {"jacobi", {{"a", form.jacobi.diagonal}, {"b", form.jacobi.off_diagonal},
                  {"tail_coupling", form.jacobi.tail_coupling}}},
  };
}

json to_json(const PSTCertificate& cert) {
  json support = json::array();
  for (const auto& e : cert.eigen_support)
    support.push_back({{"eigenvalue", e.eigenvalue},
                       {"source_weight", e.source_weight},
                       {"target_weight", e.target_weight},
                       {"overlap", complex_to_json(e.overlap)},
                       {"phase_error", e.phase_error}});
  return {{"time", cert.time},
          {"fidelity", cert.fidelity},
          {"threshold", cert.threshold},
          {"certified", cert.fidelity >= cert.threshold},
          {"amplitude", complex_to_json(cert.amplitude)},
          {"source", vector_to_json(cert.source)},
          {"target", vector_to_json(cert.target)},
          {"eigen_support", support}};
}

json to_json(const FidelityCurve& curve) {
  return {{"t", curve.times},
          {"magnitude", curve.magnitudes},
          {"truncation", curve.truncation},
          {"converged", curve.converged}};
}

json to_json(const SedentarinessReport& report) {
  json j{{"vertex", report.vertex},
         {"t", report.times},
         {"magnitude", report.magnitudes},
         {"min_magnitude", report.min_magnitude},
         {"argmin_time", report.argmin_time},
         {"truncation", report.truncation}};
  j["analytic_bound"] = report.analytic_bound ? json(*report.analytic_bound) : json(nullptr);
  return j;
}

json to_json(const WalkModule& module) {
  json basis = json::array();
  for (Eigen::Index c = 0; c < module.basis.cols(); ++c) basis.push_back(vector_to_json(module.basis.col(c)));
  return {{"chain_length", module.chain_length},
          {"primary", module.is_primary},
          {"highest_weight", module.highest_weight},
          {"basis", basis}};
}

json to_json(const WalkMatrixReport& report) {
  return {{"rank", report.rank}, {"dark_dimension", report.dark_dimension}, {"exact", report.exact}};
}

json to_json(const EvolveResult& result) {
  json tails = json::array();
  for (const auto& t : result.state.tails) tails.push_back(vector_to_json(t));
  return {{"truncation", result.truncation},
          {"finite", vector_to_json(result.state.finite)},
          {"tails", tails}};
}

std::string curve_to_csv(const std::vector<double>& times, const std::vector<double>& magnitudes) {
  std::ostringstream out;
  out.precision(17);
  out << "t,magnitude\n";
  for (std::size_t i = 0; i < times.size() && i < magnitudes.size(); ++i)
    out << times[i] << ',' << magnitudes[i] << '\n';
  return out.str();
}

}  // namespace tailqw::io
