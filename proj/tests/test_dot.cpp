#include <regex>
#include <set>
#include <sstream>

#include "arrowlab/dot.hpp"
#include "doctest.h"

using namespace arrowlab;

namespace {

struct Parsed {
  std::set<Vertex> nodes;
  std::vector<Edge> edges;
  std::vector<std::string> colours;  // per edge, "" when absent
  std::vector<std::string> clusters;
};

Parsed parse(const std::string& dot) {
  Parsed p;
  std::istringstream in(dot);
  std::string line;
  const std::regex edge_re(R"(^\s*(\d+) -- (\d+)(?: \[(.*)\])?;$)");
  const std::regex node_re(R"(^\s*(\d+);$)");
  const std::regex label_re(R"re(^\s*label="(.*)";$)re");
  const std::regex colour_re(R"(color=(\w+))");
  std::smatch m;
  while (std::getline(in, line)) {
    if (std::regex_match(line, m, edge_re)) {
      p.edges.emplace_back(static_cast<Vertex>(std::stoul(m[1])), static_cast<Vertex>(std::stoul(m[2])));
      const std::string attrs = m[3];
      std::smatch c;
      p.colours.push_back(std::regex_search(attrs, c, colour_re) ? std::string(c[1]) : "");
    } else if (std::regex_match(line, m, node_re)) {
      p.nodes.insert(static_cast<Vertex>(std::stoul(m[1])));
    } else if (std::regex_match(line, m, label_re)) {
      p.clusters.push_back(m[1]);
    }
  }
  return p;
}

}  // namespace

TEST_CASE("dot export of K3") {
  const auto p = parse(export_dot(complete_graph(3)));
  CHECK(p.nodes.size() == 3);
  CHECK(p.edges.size() == 3);
  CHECK(p.clusters.empty());
}

TEST_CASE("dot colouring overlay") {
  const Graph k5 = complete_graph(5);
  const EdgeColouring c(2, {1, 2, 2, 1, 1, 2, 2, 1, 2, 1});
  DotAnnotations notes;
  notes.colouring = c;
  const auto p = parse(export_dot(k5, notes));
  REQUIRE(p.edges == k5.edges());
  for (EdgeId e = 0; e < k5.m(); ++e) CHECK(p.colours[e] == dot_colour_name(c[e]));
}

TEST_CASE("dot clusters for the containment construction round-trip") {
  MockSenderProvider mock;
  const Graph f = *named_graph("P3");
  const EdgeColouring free(2, {1, 2});
  const auto r = build_theorem12_graph(complete_graph(3), f, 2, free, mock, false);
  DotAnnotations notes;
  notes.parts = r.parts;
  for (EdgeId x : r.e) notes.edge_labels.push_back({x, "e"});
  const std::string dot = export_dot(r.graph, notes);
  const auto p = parse(dot);
  CHECK(p.nodes.size() == r.graph.n());
  CHECK(p.edges == r.graph.edges());
  std::set<std::string> kinds;
  for (const auto& label : p.clusters)
    for (const char* k : {"(i) ", "(ii) ", "(iii) ", "(iv) ", "(v) "})
      if (label.rfind(k, 0) == 0) kinds.insert(k);
  CHECK(kinds.size() == 5);
  CHECK(dot == export_dot(r.graph, notes));
  CHECK(dot.find("label=\"e\"") != std::string::npos);
}
