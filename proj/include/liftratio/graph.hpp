#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "liftratio/errors.hpp"
#include "liftratio/matrix.hpp"
#include "liftratio/poly.hpp"

namespace liftratio {

using VertexId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  EdgeId id;
  VertexId src;
  VertexId tgt;
  Poly weight;

  bool is_loop() const noexcept { return src == tgt; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed multigraph with polynomial edge weights. Loops and parallel
/// edges are allowed; vertex order is declaration order and fixes the
/// basis of every matrix built from the graph.
class WeightedDigraph {
 public:
  static bool valid_vertex_name(std::string_view name) {
    return !name.empty() && std::none_of(name.begin(), name.end(), [](char c) {
      return c == '#' || std::isspace(static_cast<unsigned char>(c));
    });
  }

  VertexId add_vertex(std::string name) {
    if (!valid_vertex_name(name)) throw DomainError("invalid vertex name '" + name + "'");
    if (index_.count(name)) throw DomainError("duplicate vertex '" + name + "'");
    index_.emplace(name, names_.size());
    names_.push_back(std::move(name));
    out_.emplace_back();
    return names_.size() - 1;
  }

  EdgeId add_edge(VertexId src, VertexId tgt, Poly weight) {
    if (src >= names_.size() || tgt >= names_.size()) throw DomainError("edge endpoint is not a vertex");
    if (weight.is_zero()) throw DomainError("edge weight must be nonzero");
    EdgeId id = edges_.size();
    edges_.push_back(Edge{id, src, tgt, std::move(weight)});
    out_[src].push_back(id);
    return id;
  }
  EdgeId add_edge(std::string_view src, std::string_view tgt, Poly weight) {
    return add_edge(vertex(src), vertex(tgt), std::move(weight));
  }

  std::size_t vertex_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<std::string>& vertex_names() const noexcept { return names_; }
  const std::string& name(VertexId v) const { return names_.at(v); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }

  /// E_s(v): ids of edges leaving `v`, in declaration order.
  const std::vector<EdgeId>& out_edges(VertexId v) const { return out_.at(v); }

  std::size_t in_degree(VertexId v) const {
    return static_cast<std::size_t>(
        std::count_if(edges_.begin(), edges_.end(), [v](const Edge& e) { return e.tgt == v; }));
  }

  bool has_vertex(std::string_view name) const { return index_.count(std::string(name)) != 0; }
  VertexId vertex(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) throw DomainError("unknown vertex '" + std::string(name) + "'");
    return it->second;
  }

  /// Sum of weights of edges leaving `v`.
  Poly out_weight(VertexId v) const {
    Poly s;
    for (EdgeId e : out_.at(v)) s += edges_[e].weight;
    return s;
  }

  std::string describe(EdgeId e) const {
    const Edge& ed = edges_.at(e);
    return "#" + std::to_string(e) + " (" + names_[ed.src] + " -> " + names_[ed.tgt] + ")";
  }

  friend bool operator==(const WeightedDigraph& a, const WeightedDigraph& b) {
    return a.names_ == b.names_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VertexId> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> out_;
};

/// Element of S_k in one-line notation. Letters are 1..k externally and
/// 0..k-1 through `apply`.
class Permutation {
 public:
  Permutation() = default;

  /// From 1-based one-line images; throws BadPermutation unless a bijection.
  explicit Permutation(const std::vector<unsigned>& images_one_based) {
    const std::size_t k = images_one_based.size();
    if (k == 0) throw BadPermutation(0, "permutation must act on at least one letter");
    std::vector<bool> seen(k, false);
    images_.reserve(k);
    for (unsigned img : images_one_based) {
      if (img < 1 || img > k || seen[img - 1])
        throw BadPermutation(0, "images do not form a bijection on {1.." + std::to_string(k) + "}");
      seen[img - 1] = true;
      images_.push_back(img - 1);
    }
  }

  static Permutation identity(unsigned k) {
    std::vector<unsigned> img(k);
    for (unsigned i = 0; i < k; ++i) img[i] = i + 1;
    return Permutation(img);
  }

  static Permutation from_zero_based(const std::vector<unsigned>& images) {
    std::vector<unsigned> one(images.size());
    std::transform(images.begin(), images.end(), one.begin(), [](unsigned x) { return x + 1; });
    return Permutation(one);
  }

  /// `321` (k <= 9) or `[3,2,1]`. `k` is checked when nonzero.
  static Permutation parse(std::string_view text, unsigned k = 0) {
    std::vector<unsigned> img;
    if (!text.empty() && text.front() == '[') {
      if (text.back() != ']') throw BadPermutation(0, "unterminated permutation '" + std::string(text) + "'");
      std::string_view body = text.substr(1, text.size() - 2);
      std::size_t start = 0;
      while (start <= body.size()) {
        std::size_t comma = body.find(',', start);
        std::string_view tok = body.substr(start, comma == std::string_view::npos ? body.size() - start : comma - start);
        while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.front()))) tok.remove_prefix(1);
        while (!tok.empty() && std::isspace(static_cast<unsigned char>(tok.back()))) tok.remove_suffix(1);
        if (tok.empty() || tok.size() > 9 ||
            !std::all_of(tok.begin(), tok.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          throw BadPermutation(0, "malformed permutation '" + std::string(text) + "'");
        img.push_back(static_cast<unsigned>(std::stoul(std::string(tok))));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
      }
    } else {
      if (text.empty()) throw BadPermutation(0, "empty permutation");
      for (char c : text) {
        if (c < '1' || c > '9') throw BadPermutation(0, "malformed permutation '" + std::string(text) + "'");
        img.push_back(static_cast<unsigned>(c - '0'));
      }
    }
    if (k != 0 && img.size() != k)
      throw BadPermutation(0, "permutation '" + std::string(text) + "' does not act on " + std::to_string(k) + " letters");
    return Permutation(img);
  }

  unsigned k() const noexcept { return static_cast<unsigned>(images_.size()); }
  unsigned apply(unsigned x) const { return images_.at(x); }
  const std::vector<unsigned>& images() const noexcept { return images_; }
  bool is_identity() const {
    for (unsigned i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  std::string to_string() const {
    std::string s;
    if (images_.size() <= 9) {
      for (unsigned x : images_) s += static_cast<char>('1' + x);
      return s;
    }
    s = "[";
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(images_[i] + 1);
    }
    return s + "]";
  }

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<unsigned> images_;
};

/// Base graph with one permutation of S_k per edge.
class VoltageGraph {
 public:
  VoltageGraph(WeightedDigraph base, unsigned k, std::vector<Permutation> voltages)
      : base_(std::move(base)), k_(k), voltages_(std::move(voltages)) {
    if (k_ == 0) throw DomainError("fold count must be at least 1");
    if (voltages_.size() != base_.edge_count()) throw DomainError("every edge needs exactly one voltage");
    for (const auto& p : voltages_)
      if (p.k() != k_) throw DomainError("voltage acts on the wrong number of letters");
  }

  const WeightedDigraph& base() const noexcept { return base_; }
  unsigned k() const noexcept { return k_; }
  const std::vector<Permutation>& voltages() const noexcept { return voltages_; }
  const Permutation& voltage(EdgeId e) const { return voltages_.at(e); }

  friend bool operator==(const VoltageGraph&, const VoltageGraph&) = default;

 private:
  WeightedDigraph base_;
  unsigned k_;
  std::vector<Permutation> voltages_;
};

inline RingMatrix degree_matrix(const WeightedDigraph& g) {
  RingMatrix d(g.vertex_count());
  for (const Edge& e : g.edges()) d(e.src, e.src) += e.weight;
  d.set_labels(g.vertex_names());
  return d;
}

inline RingMatrix adjacency_matrix(const WeightedDigraph& g) {
  RingMatrix a(g.vertex_count());
  for (const Edge& e : g.edges()) a(e.src, e.tgt) += e.weight;
  a.set_labels(g.vertex_names());
  return a;
}

/// D - A. Each row sums to zero and loops cancel.
inline RingMatrix laplacian(const WeightedDigraph& g) {
  RingMatrix l = degree_matrix(g) - adjacency_matrix(g);
  l.set_labels(g.vertex_names());
  return l;
}

/// Edge weights evaluated at a point, indexed by edge id.
inline std::vector<Rational> evaluate_weights(const WeightedDigraph& g, const Assignment& at) {
  std::vector<Rational> w;
  w.reserve(g.edge_count());
  for (const Edge& e : g.edges()) w.push_back(e.weight.eval(at));
  return w;
}

}  // namespace liftratio
