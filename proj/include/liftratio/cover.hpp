#pragma once

#include <span>
#include <string>
#include <vector>

#include "liftratio/arborescence.hpp"
#include "liftratio/errors.hpp"
#include "liftratio/graph.hpp"
#include "liftratio/matrix.hpp"

namespace liftratio {

/// Name of the lift of `base` on sheet `letter` (1-based): `v^3`.
inline std::string lift_name(const std::string& base, unsigned letter) {
  return base + "^" + std::to_string(letter);
}

/// A cover together with its projection onto the base graph.
struct DerivedCover {
  WeightedDigraph base;
  WeightedDigraph cover;
  std::vector<VertexId> vertex_projection;  // cover vertex -> base vertex
  std::vector<EdgeId> edge_projection;      // cover edge -> base edge
  unsigned k = 1;

  /// Cover vertex (v, letter) with letter 1-based, for covers built by derive_cover.
  VertexId lift(VertexId v, unsigned letter) const { return v * k + (letter - 1); }
};

/// Vertices (v, x) for x = 1..k and edges (v, x) -> (w, sigma_e(x)) for each
/// base edge e = (v, w), each carrying wt(e).
inline DerivedCover derive_cover(const VoltageGraph& vg) {
  const WeightedDigraph& g = vg.base();
  const unsigned k = vg.k();
  DerivedCover dc{g, {}, {}, {}, k};
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (unsigned x = 1; x <= k; ++x) {
      dc.cover.add_vertex(lift_name(g.name(v), x));
      dc.vertex_projection.push_back(v);
    }
  for (const Edge& e : g.edges()) {
    const Permutation& sigma = vg.voltage(e.id);
    for (unsigned x = 0; x < k; ++x) {
      dc.cover.add_edge(e.src * k + x, e.tgt * k + sigma.apply(x), e.weight);
      dc.edge_projection.push_back(e.id);
    }
  }
  return dc;
}

struct CoverViolation {
  int condition;        // which covering-map condition failed, 1..4
  std::string witness;  // offending vertex or edge
  std::string detail;

  std::string to_string() const { return "condition " + std::to_string(condition) + ": " + witness + ": " + detail; }
};

/// Checks the combinatorial covering conditions:
///   1. the projection maps vertices to vertices and edges to edges, compatibly with endpoints;
///   2. every base vertex and edge has exactly k preimages;
///   3. every cover edge has the weight of its image;
///   4. every cover vertex has the out- and in-degree of its image.
inline std::vector<CoverViolation> validate_cover(const DerivedCover& dc) {
  std::vector<CoverViolation> out;
  const WeightedDigraph& base = dc.base;
  const WeightedDigraph& cov = dc.cover;

  bool maps_ok = true;
  if (dc.vertex_projection.size() != cov.vertex_count()) {
    out.push_back({1, "vertex projection", "defined on " + std::to_string(dc.vertex_projection.size()) + " of " +
                                               std::to_string(cov.vertex_count()) + " vertices"});
    maps_ok = false;
  }
  if (dc.edge_projection.size() != cov.edge_count()) {
    out.push_back({1, "edge projection", "defined on " + std::to_string(dc.edge_projection.size()) + " of " +
                                             std::to_string(cov.edge_count()) + " edges"});
    maps_ok = false;
  }
  if (!maps_ok) return out;
  for (VertexId v = 0; v < cov.vertex_count(); ++v)
    if (dc.vertex_projection[v] >= base.vertex_count()) {
      out.push_back({1, cov.name(v), "projects to no base vertex"});
      maps_ok = false;
    }
  for (EdgeId e = 0; e < cov.edge_count(); ++e)
    if (dc.edge_projection[e] >= base.edge_count()) {
      out.push_back({1, cov.describe(e), "projects to no base edge"});
      maps_ok = false;
    }
  if (!maps_ok) return out;

  for (const Edge& e : cov.edges()) {
    const Edge& b = base.edge(dc.edge_projection[e.id]);
    if (dc.vertex_projection[e.src] != b.src || dc.vertex_projection[e.tgt] != b.tgt)
      out.push_back({1, cov.describe(e.id), "endpoints do not project onto " + base.describe(b.id)});
  }

  std::vector<std::size_t> vfiber(base.vertex_count(), 0), efiber(base.edge_count(), 0);
  for (VertexId p : dc.vertex_projection) ++vfiber[p];
  for (EdgeId p : dc.edge_projection) ++efiber[p];
  for (VertexId v = 0; v < base.vertex_count(); ++v)
    if (vfiber[v] != dc.k)
      out.push_back({2, base.name(v), std::to_string(vfiber[v]) + " preimages, expected " + std::to_string(dc.k)});
  for (EdgeId e = 0; e < base.edge_count(); ++e)
    if (efiber[e] != dc.k)
      out.push_back({2, base.describe(e), std::to_string(efiber[e]) + " preimages, expected " + std::to_string(dc.k)});

  for (const Edge& e : cov.edges()) {
    const Poly& expected = base.edge(dc.edge_projection[e.id]).weight;
    if (!(e.weight == expected))
      out.push_back({3, cov.describe(e.id), "weight " + e.weight.to_string() + " differs from " + expected.to_string()});
  }

  for (VertexId v = 0; v < cov.vertex_count(); ++v) {
    VertexId b = dc.vertex_projection[v];
    std::size_t out_c = cov.out_edges(v).size(), out_b = base.out_edges(b).size();
    std::size_t in_c = cov.in_degree(v), in_b = base.in_degree(b);
    if (out_c != out_b)
      out.push_back({4, cov.name(v), "out-degree " + std::to_string(out_c) + ", base has " + std::to_string(out_b)});
    if (in_c != in_b)
      out.push_back({4, cov.name(v), "in-degree " + std::to_string(in_c) + ", base has " + std::to_string(in_b)});
  }
  return out;
}

/// Marks a projection entry that has no image.
inline constexpr std::size_t kNoImage = static_cast<std::size_t>(-1);

/// Rebuilds the projection of an externally supplied cover whose vertices
/// are named `<base>^<letter>`. Each cover edge goes to a base edge with the
/// projected endpoints, preferring equal weight and then the least-used edge.
/// Unresolvable entries are kNoImage and surface as condition-1 violations.
inline DerivedCover infer_projection(const WeightedDigraph& base, WeightedDigraph cover, unsigned k) {
  DerivedCover dc{base, std::move(cover), {}, {}, k};
  for (const auto& name : dc.cover.vertex_names()) {
    auto caret = name.rfind('^');
    VertexId img = kNoImage;
    if (caret != std::string::npos && caret > 0 && base.has_vertex(name.substr(0, caret))) img = base.vertex(name.substr(0, caret));
    dc.vertex_projection.push_back(img);
  }
  std::vector<std::size_t> used(base.edge_count(), 0);
  for (const Edge& e : dc.cover.edges()) {
    VertexId s = dc.vertex_projection[e.src], t = dc.vertex_projection[e.tgt];
    EdgeId best = kNoImage;
    bool best_weight = false;
    for (const Edge& b : base.edges()) {
      if (b.src != s || b.tgt != t) continue;
      bool same = b.weight == e.weight;
      if (best == kNoImage || (same && !best_weight) || (same == best_weight && used[b.id] < used[best])) {
        best = b.id;
        best_weight = same;
      }
    }
    if (best != kNoImage) ++used[best];
    dc.edge_projection.push_back(best);
  }
  return dc;
}

/// Voltage Laplacian D - A on the basis v_1^2..v_1^k, v_2^2..v_n^k, where
///   A[v_i^t, v_j^r] = sum over edges e = (v_i -> v_j) of wt(e) * ([sigma_e(t) = r] - [sigma_e(t) = 1])
/// and D is the out-weight of v_i on the diagonal. `weights` is indexed by
/// edge id, so the same routine serves symbolic and evaluated weights.
template <class Ring>
Matrix<Ring> voltage_laplacian_matrix(const WeightedDigraph& g, unsigned k, std::span<const Permutation> voltages,
                                      std::span<const Ring> weights) {
  if (k == 0) throw DomainError("fold count must be at least 1");
  const std::size_t sheets = k - 1;
  Matrix<Ring> m(g.vertex_count() * sheets);
  if (sheets == 0) return m;
  auto idx = [sheets](VertexId v, unsigned letter0) { return v * sheets + (letter0 - 1); };
  for (const Edge& e : g.edges()) {
    const Ring& w = weights[e.id];
    const Permutation& sigma = voltages[e.id];
    for (unsigned t = 1; t < k; ++t) {
      std::size_t row = idx(e.src, t);
      m(row, row) += w;
      unsigned r = sigma.apply(t);
      if (r != 0) {
        m(row, idx(e.tgt, r)) -= w;
      } else {
        for (unsigned c = 1; c < k; ++c) m(row, idx(e.tgt, c)) += w;
      }
    }
  }
  return m;
}

struct VoltageLaplacian {
  RingMatrix matrix;
  std::vector<std::string> basis;
};

inline std::vector<std::string> voltage_basis(const WeightedDigraph& g, unsigned k) {
  std::vector<std::string> basis;
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    for (unsigned t = 2; t <= k; ++t) basis.push_back(lift_name(g.name(v), t));
  return basis;
}

inline VoltageLaplacian voltage_laplacian(const VoltageGraph& vg) {
  std::vector<Poly> weights;
  weights.reserve(vg.base().edge_count());
  for (const Edge& e : vg.base().edges()) weights.push_back(e.weight);
  VoltageLaplacian out{voltage_laplacian_matrix<Poly>(vg.base(), vg.k(), vg.voltages(), weights),
                       voltage_basis(vg.base(), vg.k())};
  out.matrix.set_labels(out.basis);
  return out;
}

/// (1/k) det of the voltage Laplacian.
inline Poly ratio_via_det(const VoltageGraph& vg) {
  return determinant(voltage_laplacian(vg).matrix).scaled(Rational(BigInt(1), BigInt(vg.k())));
}

/// The ratio at evaluated edge weights.
inline Rational ratio_value(const WeightedDigraph& g, unsigned k, std::span<const Permutation> voltages,
                            std::span<const Rational> weights) {
  return determinant(voltage_laplacian_matrix<Rational>(g, k, voltages, weights)) / Rational(static_cast<long>(k));
}

enum class ArborMethod { matrix_tree, brute_force };

inline Poly arborescence_sum(const WeightedDigraph& g, VertexId root, ArborMethod method) {
  return method == ArborMethod::brute_force ? arborescence_sum_bruteforce(g, root)
                                            : arborescence_sum_matrixtree(g, root);
}

/// A_(v, lift)(cover) / A_v(base), divided exactly. NotDivisible here means
/// an internal inconsistency since the quotient is always a polynomial.
inline Poly ratio_direct(const VoltageGraph& vg, VertexId v, unsigned lift_letter,
                         ArborMethod method = ArborMethod::matrix_tree) {
  const WeightedDigraph& g = vg.base();
  if (v >= g.vertex_count()) throw DomainError("root is not a vertex of the base graph");
  if (lift_letter < 1 || lift_letter > vg.k()) throw DomainError("lift index outside 1..k");
  Poly base_sum = arborescence_sum(g, v, method);
  if (base_sum.is_zero()) throw BaseHasNoArborescence(g.name(v));
  DerivedCover dc = derive_cover(vg);
  Poly cover_sum = arborescence_sum(dc.cover, dc.lift(v, lift_letter), method);
  return div_exact(cover_sum, base_sum);
}

}  // namespace liftratio
