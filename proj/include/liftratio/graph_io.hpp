#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "liftratio/errors.hpp"
#include "liftratio/graph.hpp"

namespace liftratio {

// Line-oriented graph text:
//
//   # comment
//   fold 3
//   vertex 1
//   edge 1 2 weight a + b voltage 231
//
// A `fold` header makes the file a voltage graph and every edge must then
// carry a voltage, either as digits (k <= 9) or as `[3,2,1]`.

using ParsedGraph = std::variant<WeightedDigraph, VoltageGraph>;

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string tok; in >> tok;) out.push_back(std::move(tok));
  return out;
}

inline std::string join(const std::vector<std::string>& toks, std::size_t from, std::size_t to,
                        std::string_view sep) {
  std::string s;
  for (std::size_t i = from; i < to; ++i) {
    if (i > from) s += sep;
    s += toks[i];
  }
  return s;
}

}  // namespace detail

inline ParsedGraph parse_graph(std::string_view text) {
  WeightedDigraph g;
  std::optional<unsigned> fold;
  std::vector<std::optional<Permutation>> voltages;
  std::vector<std::size_t> edge_lines;

  std::size_t lineno = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto toks = detail::split_ws(raw);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    try {
      if (kw == "fold") {
        if (fold) throw ParseError(lineno, "duplicate fold header");
        if (g.vertex_count() > 0) throw ParseError(lineno, "fold must precede vertices and edges");
        if (toks.size() != 2) throw ParseError(lineno, "expected 'fold <k>'");
        const auto& t = toks[1];
        if (t.empty() || t.size() > 6 ||
            !std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
          throw ParseError(lineno, "fold count must be a positive integer");
        unsigned k = static_cast<unsigned>(std::stoul(t));
        if (k == 0) throw ParseError(lineno, "fold count must be a positive integer");
        fold = k;
      } else if (kw == "vertex") {
        if (toks.size() != 2) throw ParseError(lineno, "expected 'vertex <name>'");
        if (!WeightedDigraph::valid_vertex_name(toks[1])) throw ParseError(lineno, "invalid vertex name");
        if (g.has_vertex(toks[1])) throw ParseError(lineno, "duplicate vertex '" + toks[1] + "'");
        g.add_vertex(toks[1]);
      } else if (kw == "edge") {
        if (toks.size() < 5 || toks[3] != "weight")
          throw ParseError(lineno, "expected 'edge <src> <tgt> weight <poly> [voltage <perm>]'");
        for (int i : {1, 2})
          if (!g.has_vertex(toks[i])) throw ParseError(lineno, "undeclared vertex '" + toks[i] + "'");
        std::size_t vpos = toks.size();
        for (std::size_t i = 4; i < toks.size(); ++i)
          if (toks[i] == "voltage") vpos = i;
        if (vpos == 4) throw ParseError(lineno, "missing edge weight");
        Poly w;
        try {
          w = parse_poly(detail::join(toks, 4, vpos, " "));
        } catch (const ParseError& e) {
          throw ParseError(lineno, e.what());
        }
        if (w.is_zero()) throw ParseError(lineno, "edge weight must be nonzero");
        std::optional<Permutation> volt;
        if (vpos < toks.size()) {
          if (!fold) throw ParseError(lineno, "voltage given but no fold declared");
          if (vpos + 1 == toks.size()) throw ParseError(lineno, "missing voltage after 'voltage'");
          try {
            volt = Permutation::parse(detail::join(toks, vpos + 1, toks.size(), ""), *fold);
          } catch (const BadPermutation& e) {
            throw BadPermutation(lineno, e.what());
          }
        }
        g.add_edge(toks[1], toks[2], std::move(w));
        voltages.push_back(std::move(volt));
        edge_lines.push_back(lineno);
      } else {
        throw ParseError(lineno, "unknown directive '" + kw + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }

  if (!fold) return g;
  std::vector<Permutation> perms;
  perms.reserve(voltages.size());
  for (std::size_t e = 0; e < voltages.size(); ++e) {
    if (!voltages[e]) throw MissingVoltage(edge_lines[e], g.describe(e));
    perms.push_back(*voltages[e]);
  }
  return VoltageGraph(std::move(g), *fold, std::move(perms));
}

inline ParsedGraph read_graph_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_graph(buf.str());
}

/// The base graph of a parse result, dropping voltages.
inline const WeightedDigraph& base_of(const ParsedGraph& pg) {
  if (const auto* vg = std::get_if<VoltageGraph>(&pg)) return vg->base();
  return std::get<WeightedDigraph>(pg);
}

namespace detail {

inline std::string serialize_body(const WeightedDigraph& g, const std::vector<Permutation>* voltages) {
  std::string out;
  for (const auto& v : g.vertex_names()) out += "vertex " + v + "\n";
  for (const Edge& e : g.edges()) {
    out += "edge " + g.name(e.src) + " " + g.name(e.tgt) + " weight " + e.weight.to_string();
    if (voltages) out += " voltage " + (*voltages)[e.id].to_string();
    out += "\n";
  }
  return out;
}

}  // namespace detail

inline std::string serialize(const WeightedDigraph& g) { return detail::serialize_body(g, nullptr); }

inline std::string serialize(const VoltageGraph& vg) {
  return "fold " + std::to_string(vg.k()) + "\n" + detail::serialize_body(vg.base(), &vg.voltages());
}

inline std::string serialize(const ParsedGraph& pg) {
  return std::visit([](const auto& g) { return serialize(g); }, pg);
}

}  // namespace liftratio
