#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "tailqw/cube_modules.hpp"
#include "tailqw/decouple.hpp"
#include "tailqw/evolve.hpp"
#include "tailqw/graph.hpp"
#include "tailqw/partition.hpp"

namespace tailqw::io {

using nlohmann::json;

/// Graph file:
///   {"n": 4, "edges": [[u, v], [u, v, re], [u, v, re, im]],
///    "tails": [{"vertex": 0, "weight": 1.0}], "labels": ["a", ...]}
/// Errors name the offending field, e.g. "edges[2][1]".
TailedGraph graph_from_json(const json& j);
json graph_to_json(const TailedGraph& t);

// Parses text, reporting syntax errors with line and column.
json parse_text(std::string_view text, std::string_view source_name);
json read_json_file(const std::string& path);

// Label lookup first, then a decimal vertex id.
int resolve_vertex(const Graph& g, std::string_view ref);

/// {"entries": [[vertex, re, im], ...]}; vertex is an id or a label.
/// Normalizes nothing: the caller decides whether a unit vector is required.
State state_from_json(const json& j, const TailedGraph& t);

Partition partition_from_json(const json& j, int n);
json partition_to_json(const Partition& p);

json complex_to_json(cplx z);
json vector_to_json(const CVector& v);
// Row-major: [[[re, im], ...], ...]
json matrix_to_json(const CMatrix& m);

json to_json(const DecoupledForm& form);
json to_json(const PSTCertificate& cert);
json to_json(const FidelityCurve& curve);
json to_json(const SedentarinessReport& report);
json to_json(const WalkModule& module);
json to_json(const WalkMatrixReport& report);
json to_json(const EvolveResult& result);

// Columns t, magnitude.
std::string curve_to_csv(const std::vector<double>& times, const std::vector<double>& magnitudes);

}  // namespace tailqw::io
