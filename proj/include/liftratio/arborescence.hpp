#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liftratio/errors.hpp"
#include "liftratio/graph.hpp"
#include "liftratio/matrix.hpp"

namespace liftratio {

/// Spanning tree directed towards `root`: one chosen out-edge per non-root
/// vertex, none for the root.
struct Arborescence {
  VertexId root;
  std::vector<std::optional<EdgeId>> chosen;

  Poly weight(const WeightedDigraph& g) const {
    Poly w(1);
    for (const auto& e : chosen)
      if (e) w *= g.edge(*e).weight;
    return w;
  }
  friend bool operator==(const Arborescence&, const Arborescence&) = default;
};

struct EnumerationOptions {
  /// Loops can never lie on a path to the root; skipping them prunes choices.
  bool skip_loops = true;
  /// Upper bound on the number of out-edge combinations examined.
  std::uint64_t max_choices = 1'000'000;
};

namespace detail {

inline bool reaches_root(const WeightedDigraph& g, const std::vector<std::optional<EdgeId>>& chosen,
                         VertexId root) {
  const std::size_t n = g.vertex_count();
  // 0 = unknown, 1 = on current walk, 2 = known to reach root
  std::vector<std::uint8_t> state(n, 0);
  state[root] = 2;
  std::vector<VertexId> path;
  for (VertexId start = 0; start < n; ++start) {
    path.clear();
    VertexId v = start;
    while (state[v] == 0) {
      state[v] = 1;
      path.push_back(v);
      v = g.edge(*chosen[v]).tgt;
    }
    if (state[v] == 1) return false;
    for (VertexId p : path) state[p] = 2;
  }
  return true;
}

}  // namespace detail

/// Visits every arborescence rooted at `root` by walking the Cartesian
/// product of out-edge choices and keeping the in-trees.
template <class Visitor>
void for_each_arborescence(const WeightedDigraph& g, VertexId root, Visitor&& visit,
                           const EnumerationOptions& opts = {}) {
  const std::size_t n = g.vertex_count();
  if (root >= n) throw DomainError("root is not a vertex of the graph");

  std::vector<std::vector<EdgeId>> choices(n);
  std::uint64_t combos = 1;
  for (VertexId v = 0; v < n; ++v) {
    if (v == root) continue;
    for (EdgeId e : g.out_edges(v))
      if (!opts.skip_loops || !g.edge(e).is_loop()) choices[v].push_back(e);
    if (choices[v].empty()) return;
    combos *= choices[v].size();
    if (combos > opts.max_choices) throw BudgetExceeded("more than " + std::to_string(opts.max_choices), opts.max_choices);
  }

  std::vector<std::size_t> digit(n, 0);
  Arborescence current{root, std::vector<std::optional<EdgeId>>(n)};
  for (;;) {
    for (VertexId v = 0; v < n; ++v)
      if (v != root) current.chosen[v] = choices[v][digit[v]];
    if (detail::reaches_root(g, current.chosen, root)) visit(static_cast<const Arborescence&>(current));

    VertexId v = 0;
    for (; v < n; ++v) {
      if (v == root) continue;
      if (++digit[v] < choices[v].size()) break;
      digit[v] = 0;
    }
    if (v == n) return;
  }
}

inline std::vector<Arborescence> enumerate_arborescences(const WeightedDigraph& g, VertexId root,
                                                         const EnumerationOptions& opts = {}) {
  std::vector<Arborescence> out;
  for_each_arborescence(g, root, [&](const Arborescence& a) { out.push_back(a); }, opts);
  return out;
}

/// A_root(g) by definition: the sum of arborescence weights.
inline Poly arborescence_sum_bruteforce(const WeightedDigraph& g, VertexId root,
                                        const EnumerationOptions& opts = {}) {
  Poly total;
  for_each_arborescence(g, root, [&](const Arborescence& a) { total += a.weight(g); }, opts);
  return total;
}

/// A_root(g) as the principal minor of the Laplacian at the root.
inline Poly arborescence_sum_matrixtree(const WeightedDigraph& g, VertexId root) {
  if (root >= g.vertex_count()) throw DomainError("root is not a vertex of the graph");
  return determinant(delete_row_col(laplacian(g), root, root));
}

}  // namespace liftratio
