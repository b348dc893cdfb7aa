#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "generators.hpp"
#include "tailqw/errors.hpp"
#include "tailqw/io.hpp"

using namespace tailqw;
using tailqw::io::json;

namespace {

std::string error_of(const json& j) {
  try {
    io::graph_from_json(j);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(GraphJson, MinimalAndWeighted) {
  const auto t = io::graph_from_json(json::parse(R"({"n": 3, "edges": [[0,1],[1,2,0.5,-0.25]], "tails": [2]})"));
  EXPECT_EQ(t.finite_size(), 3);
  EXPECT_EQ(t.base().weight(0, 1), cplx(1.0, 0.0));
  EXPECT_EQ(t.base().weight(1, 2), cplx(0.5, -0.25));
  EXPECT_EQ(t.base().weight(2, 1), cplx(0.5, 0.25));
  ASSERT_EQ(t.tails().size(), 1u);
  EXPECT_EQ(t.tails()[0].vertex, 2);
  EXPECT_EQ(t.tails()[0].weight, 1.0);
}

TEST(GraphJson, RoundTripRandom) {
  gen::Rng rng(71);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 9;
    const Graph g = gen::graph(rng, n, 0.5, trial % 2 == 1);
    const TailedGraph t(g, {{trial % n, 0.5 + trial}});
    const auto back = io::graph_from_json(json::parse(io::graph_to_json(t).dump()));
    EXPECT_EQ(back, t) << "trial " << trial;
  }
}

TEST(GraphJson, LabelsSurviveRoundTrip) {
  const auto t = io::graph_from_json(json::parse(R"({"n": 2, "edges": [[0,1]], "labels": ["a", 7]})"));
  EXPECT_EQ(t.base().label(0), "a");
  EXPECT_EQ(t.base().label(1), "7");
  EXPECT_EQ(io::graph_from_json(io::graph_to_json(t)).base().labels(), t.base().labels());
}

TEST(GraphJson, FieldDiagnostics) {
  EXPECT_NE(error_of(json::parse(R"({"edges": []})")).find("field 'n'"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"n": 3, "edges": [[0,1],[1,2],[0,"x"]]})")).find("field 'edges[2][1]'"),
            std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"n": 3, "edges": [[0]]})")).find("field 'edges[0]'"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"n": 3, "tails": [{"weight": 1}]})")).find("tails[0].vertex"),
            std::string::npos);
  EXPECT_NE(error_of(json::parse(R"({"n": 2, "edges": [[0,5]]})")).find("graph:"), std::string::npos);
  EXPECT_NE(error_of(json::parse(R"([1,2])")).find("object"), std::string::npos);
  // A self loop is rejected by the graph constructor.
  EXPECT_FALSE(error_of(json::parse(R"({"n": 2, "edges": [[1,1]]})")).empty());
}

TEST(ParseText, ReportsLineAndColumn) {
  try {
    io::parse_text("{\n  \"n\": 3,\n  \"edges\": [[0,1]\n}", "g.json");
    FAIL() << "expected a syntax error";
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    EXPECT_EQ(msg.rfind("g.json:4:", 0), 0u) << msg;
    EXPECT_NE(msg.find("JSON syntax error"), std::string::npos);
  }
}

TEST(ReadJsonFile, MissingFileAndRoundTrip) {
  EXPECT_THROW(io::read_json_file("/nonexistent/graph.json"), ValidationError);
  const std::string path = ::testing::TempDir() + "tailqw_io_test.json";
  {
    std::ofstream out(path);
    out << io::graph_to_json(attach_tail(complete(4), 1)).dump();
  }
  EXPECT_EQ(io::graph_from_json(io::read_json_file(path)), attach_tail(complete(4), 1));
  std::remove(path.c_str());
}

TEST(ResolveVertex, LabelsThenIds) {
  const Graph g = with_labels(path(3), {"x", "0", "y"});
  EXPECT_EQ(io::resolve_vertex(g, "x"), 0);
  EXPECT_EQ(io::resolve_vertex(g, "0"), 1);  // label wins over id
  EXPECT_EQ(io::resolve_vertex(g, "2"), 2);
  EXPECT_THROW(io::resolve_vertex(g, "z"), ValidationError);
  EXPECT_THROW(io::resolve_vertex(g, "9"), ValidationError);
  EXPECT_THROW(io::resolve_vertex(path(3), "1a"), ValidationError);
}

TEST(StateJson, EntriesByIdOrLabel) {
  const TailedGraph t(with_labels(path(3), {"a", "b", "c"}), {{0, 1.0}});
  const double h = 1.0 / std::sqrt(2.0);
  json j{{"entries", {{"a", h, 0.0}, {2, 0.0, h}}}};
  const auto s = io::state_from_json(j, t);
  EXPECT_EQ(s.finite[0], cplx(h, 0.0));
  EXPECT_EQ(s.finite[2], cplx(0.0, h));
  EXPECT_THROW(io::state_from_json(json{{"entries", {{"q", 1.0}}}}, t), ValidationError);
  EXPECT_THROW(io::state_from_json(json{{"entries", 3}}, t), ValidationError);
  EXPECT_THROW(io::state_from_json(json::object(), t), ValidationError);
}

TEST(PartitionJson, RoundTrip) {
  const Partition p(5, {{0, 4}, {1}, {2, 3}});
  EXPECT_EQ(io::partition_from_json(io::partition_to_json(p), 5).cells(), p.cells());
  EXPECT_THROW(io::partition_from_json(json{{"cells", {{0, 1}}}}, 3), ValidationError);
  EXPECT_THROW(io::partition_from_json(json{{"cells", {{0, "1"}}}}, 2), ValidationError);
}

TEST(MatrixJson, RowMajorComplexPairs) {
  CMatrix m(2, 2);
  m << cplx(1, 2), cplx(3, 0), cplx(0, -1), cplx(4, 5);
  const json j = io::matrix_to_json(m);
  EXPECT_EQ(j[0][1][0], 3.0);
  EXPECT_EQ(j[1][0][1], -1.0);
  EXPECT_EQ(j[1][1], json::array({4.0, 5.0}));
}

TEST(CurveCsv, HeaderAndPrecision) {
  const std::string csv = io::curve_to_csv({0.0, 0.1}, {1.0, 1.0 / 3.0});
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "t,magnitude");
  std::getline(in, line);
  EXPECT_EQ(line, "0,1");
  std::getline(in, line);
  EXPECT_EQ(line, "0.10000000000000001,0.33333333333333331");
}
