#pragma once

#include <string>
#include <vector>

#include "liftratio/liftratio.hpp"

namespace liftratio::test_support {

inline Poly P(const std::string& s) { return parse_poly(s); }

/// Vertices 1..3 with one edge i -> j of weight x_ij for every ordered pair.
inline WeightedDigraph complete_with_loops_3() {
  WeightedDigraph g;
  for (int i = 1; i <= 3; ++i) g.add_vertex(std::to_string(i));
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j)
      g.add_edge(std::to_string(i), std::to_string(j), Poly::var("x" + std::to_string(i) + std::to_string(j)));
  return g;
}

inline const char* kTriple3Text =
    "fold 3\n"
    "vertex 1\nvertex 2\nvertex 3\n"
    "edge 1 1 weight a voltage 321\n"
    "edge 1 2 weight b voltage 231\n"
    "edge 2 3 weight c voltage 123\n"
    "edge 3 1 weight d voltage 123\n"
    "edge 3 2 weight e voltage 132\n";

inline VoltageGraph triple3() { return std::get<VoltageGraph>(parse_graph(kTriple3Text)); }

/// The voltage Laplacian of triple3() as printed in the literature, basis
/// 1^2, 1^3, 2^2, 2^3, 3^2, 3^3.
inline RingMatrix triple3_voltage_laplacian() {
  std::vector<std::vector<std::string>> rows{
      {"b", "0", "0", "-b", "0", "0"},   {"a", "2*a+b", "b", "b", "0", "0"},
      {"0", "0", "c", "0", "-c", "0"},   {"0", "0", "0", "c", "0", "-c"},
      {"-d", "0", "0", "-e", "d+e", "0"}, {"0", "-d", "-e", "0", "0", "d+e"}};
  std::vector<std::vector<Poly>> polys;
  for (const auto& r : rows) {
    polys.emplace_back();
    for (const auto& s : r) polys.back().push_back(P(s));
  }
  return RingMatrix::from_rows(polys);
}

inline WeightedDigraph two_loops() {
  WeightedDigraph g;
  g.add_vertex("v");
  g.add_edge("v", "v", Poly::var("a"));
  g.add_edge("v", "v", Poly::var("b"));
  return g;
}

}  // namespace liftratio::test_support
