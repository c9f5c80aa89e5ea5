#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "liftratio/liftratio.hpp"

namespace liftratio::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInput = 2, kBudget = 3, kInternal = 4 };

/// Raised when two routes that must agree do not.
class ConsistencyFailure : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline Assignment parse_assignment(const std::string& text) {
  Assignment out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError(0, "expected var=rational in --assign, got '" + item + "'");
    std::string var = item.substr(0, eq);
    if (!VarId::valid(var)) throw ParseError(0, "invalid variable '" + var + "' in --assign");
    out[var] = Rational::parse(item.substr(eq + 1));
  }
  return out;
}

inline std::string matrix_text(const RingMatrix& m, bool porcelain, const std::string& tag) {
  std::string s;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    std::string label = m.row_labels() ? (*m.row_labels())[i] : std::to_string(i);
    if (porcelain) {
      s += tag + '\t' + label;
      for (std::size_t j = 0; j < m.dim(); ++j) s += '\t' + m(i, j).to_string();
      s += '\n';
    } else {
      s += label + ": [";
      for (std::size_t j = 0; j < m.dim(); ++j) s += (j ? ", " : "") + m(i, j).to_string();
      s += "]\n";
    }
  }
  if (!porcelain && m.col_labels()) {
    std::string cols = "columns:";
    for (const auto& c : *m.col_labels()) cols += ' ' + c;
    s = cols + '\n' + s;
  }
  return s;
}

inline const VoltageGraph& require_voltage(const ParsedGraph& pg) {
  if (const auto* vg = std::get_if<VoltageGraph>(&pg)) return *vg;
  throw ParseError(0, "graph file has no 'fold' header; a voltage graph is required");
}

}  // namespace detail

/// Parses `args` (without the program name), runs one subcommand and
/// returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Arborescence sums, permutation-voltage covers and expected arborescence ratios", "liftratio"};
  app.require_subcommand(1);

  std::string graph_path, root, method = "both", matrix = "laplacian", mode = "formula", assign, cover_path;
  unsigned k = 0, t = 0;
  std::uint64_t samples = 10'000, seed = 0, budget = kDefaultBudget;
  unsigned workers = 1;
  bool porcelain = false, brute = false, check_direct = false;

  auto graph_opt = [&](CLI::App* sub) {
    sub->add_option("--graph", graph_path, "Graph file (vertex/edge lines, optional fold header)")
        ->required()
        ->check(CLI::ExistingFile);
  };
  auto porcelain_opt = [&](CLI::App* sub) {
    sub->add_flag("--porcelain", porcelain, "Tab-separated output, one record per line");
  };

  auto* arbor = app.add_subcommand("arbor", "Sum of arborescences rooted at a vertex");
  graph_opt(arbor);
  arbor->add_option("--root", root, "Root vertex (default: every vertex)");
  arbor->add_option("--method", method, "det, brute or both")
      ->check(CLI::IsMember({"det", "brute", "both"}))
      ->capture_default_str();
  porcelain_opt(arbor);

  auto* lap = app.add_subcommand("laplacian", "Print the degree, adjacency, Laplacian or voltage Laplacian matrix");
  graph_opt(lap);
  lap->add_option("--matrix", matrix, "degree, adjacency, laplacian or voltage")
      ->check(CLI::IsMember({"degree", "adjacency", "laplacian", "voltage"}))
      ->capture_default_str();
  porcelain_opt(lap);

  auto* cover = app.add_subcommand("cover", "Derived covers of permutation-voltage graphs");
  cover->require_subcommand(1);
  auto* derive = cover->add_subcommand("derive", "Print the derived cover in graph file syntax");
  graph_opt(derive);
  auto* validate = cover->add_subcommand("validate", "Check the covering-map conditions");
  graph_opt(validate);
  validate->add_option("--cover", cover_path, "Candidate cover with vertices named <base>^<letter> (default: derived)")
      ->check(CLI::ExistingFile);
  validate->add_option("--k", k, "Fold count of the candidate cover (default: the graph's fold)");
  porcelain_opt(validate);
  auto* vlap = cover->add_subcommand("laplacian", "Print the voltage Laplacian with its basis");
  graph_opt(vlap);
  porcelain_opt(vlap);
  auto* ratio = cover->add_subcommand("ratio", "Arborescence ratio (1/k) det of the voltage Laplacian");
  graph_opt(ratio);
  ratio->add_flag("--check-direct", check_direct, "Also divide cover by base arborescence sums for every root and lift");
  ratio->add_option("--method", method, "Arborescence route for --check-direct: det or brute")
      ->check(CLI::IsMember({"det", "brute"}))
      ->default_str("det");
  porcelain_opt(ratio);

  auto* expect = app.add_subcommand("expect", "Expected arborescence ratio under uniform random voltages");
  graph_opt(expect);
  expect->add_option("--k", k, "Fold count (default: the graph's fold)");
  expect->add_option("--mode", mode, "formula, exact or mc")
      ->check(CLI::IsMember({"formula", "exact", "mc"}))
      ->capture_default_str();
  expect->add_option("--samples", samples, "Monte Carlo sample count")->capture_default_str()->check(CLI::PositiveNumber);
  expect->add_option("--seed", seed, "Monte Carlo master seed")->capture_default_str();
  expect->add_option("--assign", assign, "Weight values, var=rational,... (required for mc)");
  expect->add_option("--budget", budget, "Maximum number of enumerated voltage assignments")->capture_default_str();
  expect->add_option("--workers", workers, "Worker threads; output does not depend on it")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  porcelain_opt(expect);

  auto* moment = app.add_subcommand("moment", "Moments of centred permutation indicators");
  moment->add_option("--k", k, "Number of letters")->required()->check(CLI::PositiveNumber);
  moment->add_option("--t", t, "Moment order, 1 <= t <= k-1")->required()->check(CLI::PositiveNumber);
  moment->add_flag("--brute", brute, "Also enumerate every query over S_k and compare");
  porcelain_opt(moment);

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("liftratio");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (arbor->parsed()) {
      const ParsedGraph pg = read_graph_file(graph_path);
      const WeightedDigraph& g = base_of(pg);
      std::vector<VertexId> roots;
      if (root.empty()) {
        for (VertexId v = 0; v < g.vertex_count(); ++v) roots.push_back(v);
      } else {
        roots.push_back(g.vertex(root));
      }
      bool mismatch = false;
      for (VertexId r : roots) {
        std::optional<Poly> det, bf;
        if (method != "brute") det = arborescence_sum_matrixtree(g, r);
        if (method != "det") bf = arborescence_sum_bruteforce(g, r);
        if (porcelain) {
          if (det) out << "arbor\t" << g.name(r) << "\tdet\t" << *det << '\n';
          if (bf) out << "arbor\t" << g.name(r) << "\tbrute\t" << *bf << '\n';
        } else {
          out << "root " << g.name(r) << '\n';
          if (det) out << "  matrix-tree: " << *det << '\n';
          if (bf) out << "  brute-force: " << *bf << '\n';
        }
        if (det && bf) {
          bool ok = *det == *bf;
          mismatch |= !ok;
          if (porcelain) out << "check\t" << g.name(r) << '\t' << (ok ? "MATCH" : "MISMATCH") << '\n';
          else out << "  " << (ok ? "MATCH" : "MISMATCH") << '\n';
        }
      }
      if (mismatch) throw ConsistencyFailure("matrix-tree and brute-force sums disagree");
    } else if (lap->parsed()) {
      ParsedGraph pg = read_graph_file(graph_path);
      RingMatrix m;
      if (matrix == "voltage") m = voltage_laplacian(detail::require_voltage(pg)).matrix;
      else if (matrix == "degree") m = degree_matrix(base_of(pg));
      else if (matrix == "adjacency") m = adjacency_matrix(base_of(pg));
      else m = laplacian(base_of(pg));
      out << detail::matrix_text(m, porcelain, matrix);
    } else if (derive->parsed()) {
      const ParsedGraph pg = read_graph_file(graph_path);
      out << serialize(derive_cover(detail::require_voltage(pg)).cover);
    } else if (validate->parsed()) {
      ParsedGraph pg = read_graph_file(graph_path);
      DerivedCover dc;
      if (cover_path.empty()) {
        dc = derive_cover(detail::require_voltage(pg));
      } else {
        unsigned fold = k;
        if (fold == 0) {
          if (const auto* vg = std::get_if<VoltageGraph>(&pg)) fold = vg->k();
          else throw ParseError(0, "--k is required when the base graph has no fold header");
        }
        const ParsedGraph candidate = read_graph_file(cover_path);
        dc = infer_projection(base_of(pg), base_of(candidate), fold);
      }
      auto violations = validate_cover(dc);
      for (const auto& v : violations) {
        if (porcelain) out << "violation\t" << v.condition << '\t' << v.witness << '\t' << v.detail << '\n';
        else out << v.to_string() << '\n';
      }
      if (porcelain) out << "valid\t" << (violations.empty() ? "yes" : "no") << '\n';
      else out << (violations.empty() ? "valid cover" : std::to_string(violations.size()) + " violation(s)") << '\n';
      if (!violations.empty()) return kInput;
    } else if (vlap->parsed()) {
      const ParsedGraph pg = read_graph_file(graph_path);
      out << detail::matrix_text(voltage_laplacian(detail::require_voltage(pg)).matrix, porcelain, "voltage");
    } else if (ratio->parsed()) {
      const ParsedGraph pg = read_graph_file(graph_path);
      const VoltageGraph& vg = detail::require_voltage(pg);
      Poly r = ratio_via_det(vg);
      if (porcelain) out << "ratio\t" << r << "\nintegral\t" << (r.has_integer_coefficients() ? "yes" : "no") << '\n';
      else out << "ratio: " << r << "\nintegral: " << (r.has_integer_coefficients() ? "yes" : "no") << '\n';
      if (check_direct) {
        ArborMethod am = method == "brute" ? ArborMethod::brute_force : ArborMethod::matrix_tree;
        bool all_equal = true;
        const WeightedDigraph& g = vg.base();
        for (VertexId v = 0; v < g.vertex_count(); ++v)
          for (unsigned x = 1; x <= vg.k(); ++x) {
            std::string where = lift_name(g.name(v), x);
            try {
              Poly d = ratio_direct(vg, v, x, am);
              bool eq = d == r;
              all_equal &= eq;
              if (porcelain) out << "direct\t" << where << '\t' << d << '\t' << (eq ? "MATCH" : "MISMATCH") << '\n';
              else out << "direct " << where << ": " << d << (eq ? "" : "  MISMATCH") << '\n';
            } catch (const BaseHasNoArborescence&) {
              if (porcelain) out << "direct\t" << where << "\tundefined\n";
              else out << "direct " << where << ": undefined (no base arborescence)\n";
            }
          }
        if (porcelain) out << "check\t" << (all_equal ? "MATCH" : "MISMATCH") << '\n';
        else out << (all_equal ? "all direct ratios equal" : "direct ratios DIFFER") << '\n';
        if (!all_equal) throw ConsistencyFailure("direct ratio differs from (1/k) det");
      }
    } else if (expect->parsed()) {
      ParsedGraph pg = read_graph_file(graph_path);
      unsigned fold = k;
      if (fold == 0) {
        if (const auto* vg = std::get_if<VoltageGraph>(&pg)) fold = vg->k();
        else throw ParseError(0, "--k is required when the graph has no fold header");
      }
      const WeightedDigraph& g = base_of(pg);
      std::optional<Assignment> at;
      if (!assign.empty()) at = detail::parse_assignment(assign);
      ExpectationReport rep;
      rep.k = fold;
      rep.formula_value = expected_ratio_formula(g, fold);
      if (at) rep.formula_at_point = rep.formula_value.eval(*at);
      if (mode == "exact") {
        if (at) rep.exact_value = Poly(expected_ratio_exact_value(g, fold, *at, budget, workers));
        else rep.exact_value = expected_ratio_exact(g, fold, budget, workers);
        bool ok = at ? Poly(*rep.formula_at_point) == *rep.exact_value : rep.formula_value == *rep.exact_value;
        out << (porcelain ? rep.to_record() + "\tcheck=" + (ok ? "MATCH" : "MISMATCH") + "\n"
                          : rep.to_text() + "check: " + (ok ? "MATCH" : "MISMATCH") + "\n");
        if (!ok) throw ConsistencyFailure("exhaustive average differs from the closed form");
      } else if (mode == "mc") {
        if (!at) at = Assignment{};
        MonteCarloOptions opts{samples, seed, workers, false};
        rep = expected_ratio_mc(g, fold, opts, *at);
        out << (porcelain ? rep.to_record() + "\n" : rep.to_text());
      } else {
        out << (porcelain ? rep.to_record() + "\n" : rep.to_text());
      }
    } else if (moment->parsed()) {
      Rational f = y_moment_formula(k, t);
      if (porcelain) out << "formula\t" << k << '\t' << t << '\t' << f << '\n';
      else out << "E[Y product] for k=" << k << ", t=" << t << ": " << f << '\n';
      if (brute) {
        std::vector<unsigned> letters;
        for (unsigned x = 2; x <= k; ++x) letters.push_back(x);
        std::size_t queries = 0, agree = 0;
        // All t-subsets of sources and images, and all pairings between them.
        std::vector<bool> src_mask(letters.size(), false);
        std::fill(src_mask.begin(), src_mask.begin() + t, true);
        do {
          std::vector<unsigned> src;
          for (std::size_t i = 0; i < letters.size(); ++i)
            if (src_mask[i]) src.push_back(letters[i]);
          std::vector<bool> img_mask(letters.size(), false);
          std::fill(img_mask.begin(), img_mask.begin() + t, true);
          do {
            std::vector<unsigned> img;
            for (std::size_t i = 0; i < letters.size(); ++i)
              if (img_mask[i]) img.push_back(letters[i]);
            do {
              ++queries;
              if (y_moment_bruteforce(MomentQuery{k, src, img}) == f) ++agree;
            } while (std::next_permutation(img.begin(), img.end()));
          } while (std::prev_permutation(img_mask.begin(), img_mask.end()));
        } while (std::prev_permutation(src_mask.begin(), src_mask.end()));
        bool ok = agree == queries;
        if (porcelain) out << "brute\t" << queries << '\t' << agree << '\t' << (ok ? "MATCH" : "MISMATCH") << '\n';
        else out << "enumerated " << queries << " queries, " << agree << " agree: " << (ok ? "MATCH" : "MISMATCH") << '\n';
        if (!ok) throw ConsistencyFailure("brute-force moments differ from the closed form");
      }
    }
  } catch (const ConsistencyFailure& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  } catch (const NotDivisible& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInput;
  }
  return kOk;
}

}  // namespace liftratio::cli
