#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "liftratio/cover.hpp"
#include "liftratio/errors.hpp"
#include "liftratio/graph.hpp"
#include "liftratio/poly.hpp"
#include "liftratio/rational.hpp"

namespace liftratio {

inline constexpr std::uint64_t kDefaultBudget = 1'000'000;

/// Closed form of E[R] under independent uniform voltages:
/// (1/k) * prod over vertices w of (out-weight of w)^(k-1).
inline Poly expected_ratio_formula(const WeightedDigraph& g, unsigned k) {
  if (k == 0) throw DomainError("fold count must be at least 1");
  Poly prod(1);
  for (VertexId v = 0; v < g.vertex_count(); ++v) prod *= g.out_weight(v).pow(k - 1);
  return prod.scaled(Rational(BigInt(1), BigInt(k)));
}

/// det(D) of the voltage Laplacian: prod over w of (out-weight of w)^(k-1).
inline Poly voltage_degree_det(const WeightedDigraph& g, unsigned k) {
  return expected_ratio_formula(g, k).scaled(Rational(static_cast<long>(k)));
}

/// S_k in lexicographic one-line order.
inline std::vector<Permutation> all_permutations(unsigned k) {
  if (k == 0) throw DomainError("fold count must be at least 1");
  std::vector<unsigned> img(k);
  for (unsigned i = 0; i < k; ++i) img[i] = i;
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_zero_based(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

/// (k!)^edges
inline BigInt assignment_count(unsigned k, std::size_t edges) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), factorial(k).get_mpz_t(), edges);
  return r;
}

namespace detail {

inline std::uint64_t checked_count(unsigned k, std::size_t edges, std::uint64_t budget) {
  BigInt total = assignment_count(k, edges);
  if (total > BigInt(std::to_string(budget))) throw BudgetExceeded(total.get_str(), budget);
  return std::stoull(total.get_str());
}

// Voltage assignment with mixed-radix index `index`; edge 0 is the least
// significant digit.
inline void assignment_at(std::uint64_t index, const std::vector<Permutation>& perms,
                          std::vector<Permutation>& out) {
  const std::uint64_t radix = perms.size();
  for (auto& p : out) {
    p = perms[index % radix];
    index /= radix;
  }
}

// Splits [0, total) into `workers` contiguous ranges and sums `partial(begin,
// end)` over them. Exact accumulation makes the result independent of the
// split.
template <class Acc, class Partial>
Acc parallel_sum(std::uint64_t total, unsigned workers, Partial partial) {
  workers = std::max(1u, workers);
  if (workers == 1 || total < workers) return partial(std::uint64_t{0}, total);
  std::vector<Acc> parts(workers);
  std::vector<std::thread> threads;
  const std::uint64_t chunk = total / workers, extra = total % workers;
  std::uint64_t begin = 0;
  for (unsigned w = 0; w < workers; ++w) {
    std::uint64_t end = begin + chunk + (w < extra ? 1 : 0);
    threads.emplace_back([&parts, &partial, w, begin, end] { parts[w] = partial(begin, end); });
    begin = end;
  }
  for (auto& t : threads) t.join();
  Acc total_acc = parts[0];
  for (unsigned w = 1; w < workers; ++w) total_acc += parts[w];
  return total_acc;
}

struct MomentSums {
  Rational sum{0};
  Rational sum_sq{0};
  MomentSums& operator+=(const MomentSums& o) {
    sum += o.sum;
    sum_sq += o.sum_sq;
    return *this;
  }
};

}  // namespace detail

/// Exact E[R] with symbolic weights: the average of (1/k) det over every
/// voltage assignment in (S_k)^|E|. Throws BudgetExceeded when (k!)^|E|
/// exceeds `budget`.
inline Poly expected_ratio_exact(const WeightedDigraph& g, unsigned k, std::uint64_t budget = kDefaultBudget,
                                 unsigned workers = 1) {
  const std::uint64_t total = detail::checked_count(k, g.edge_count(), budget);
  const auto perms = all_permutations(k);
  std::vector<Poly> weights;
  for (const Edge& e : g.edges()) weights.push_back(e.weight);
  Poly sum = detail::parallel_sum<Poly>(total, workers, [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<Permutation> volts(g.edge_count());
    Poly acc;
    for (std::uint64_t i = begin; i < end; ++i) {
      detail::assignment_at(i, perms, volts);
      acc += determinant(voltage_laplacian_matrix<Poly>(g, k, volts, weights));
    }
    return acc;
  });
  return sum.scaled(Rational(BigInt(1), BigInt(k) * BigInt(std::to_string(total))));
}

/// Exact E[R] at evaluated weights, by the same enumeration.
inline Rational expected_ratio_exact_value(const WeightedDigraph& g, unsigned k, const Assignment& at,
                                           std::uint64_t budget = kDefaultBudget, unsigned workers = 1) {
  const std::uint64_t total = detail::checked_count(k, g.edge_count(), budget);
  const auto perms = all_permutations(k);
  const auto weights = evaluate_weights(g, at);
  Rational sum = detail::parallel_sum<Rational>(total, workers, [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<Permutation> volts(g.edge_count());
    Rational acc(0);
    for (std::uint64_t i = begin; i < end; ++i) {
      detail::assignment_at(i, perms, volts);
      acc += determinant(voltage_laplacian_matrix<Rational>(g, k, volts, weights));
    }
    return acc;
  });
  return sum / (Rational(BigInt(std::to_string(total))) * Rational(static_cast<long>(k)));
}

/// Uniform integer in [0, n) by rejection, independent of the standard
/// library's distribution implementation.
template <class Engine>
std::uint64_t draw_below(Engine& engine, std::uint64_t n) {
  static_assert(Engine::min() == 0 && Engine::max() == ~std::uint64_t{0});
  const std::uint64_t reject_below = (0 - n) % n;
  for (;;) {
    std::uint64_t x = engine();
    if (x >= reject_below) return x % n;
  }
}

/// Fisher-Yates draw from S_k; every permutation has probability 1/k!.
template <class Engine>
Permutation uniform_permutation(unsigned k, Engine& engine) {
  if (k == 0) throw DomainError("fold count must be at least 1");
  std::vector<unsigned> img(k);
  for (unsigned i = 0; i < k; ++i) img[i] = i;
  for (unsigned i = k - 1; i > 0; --i) std::swap(img[i], img[draw_below(engine, i + 1)]);
  return Permutation::from_zero_based(img);
}

/// Generator for sample `index` under `seed`; depends on nothing else, so
/// sharding samples across workers never changes the stream.
inline std::mt19937_64 sample_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

struct MonteCarloOptions {
  std::uint64_t samples = 10'000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  /// Debug mode: sample i uses assignment i of the exhaustive enumeration
  /// instead of a random draw.
  bool exhaustive = false;
};

struct ExpectationReport {
  unsigned k = 1;
  Poly formula_value;
  std::optional<Poly> exact_value;
  std::optional<Rational> formula_at_point;
  std::optional<Rational> mc_estimate;
  std::optional<Rational> mc_variance;  // unbiased sample variance, exact
  std::optional<Rational> mc_stddev;    // sqrt of mc_variance, 2^-64 resolution
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  /// |estimate - target| <= z * stddev / sqrt(samples), decided exactly.
  bool within(const Rational& target, long z) const {
    if (!mc_estimate || !mc_variance || samples == 0) return false;
    Rational diff = *mc_estimate - target;
    return diff * diff * Rational(BigInt(std::to_string(samples))) <= Rational(z * z) * *mc_variance;
  }

  std::string to_text() const {
    std::string s;
    s += "k: " + std::to_string(k) + "\n";
    s += "formula: " + formula_value.to_string() + "\n";
    if (exact_value) s += "exact: " + exact_value->to_string() + "\n";
    if (formula_at_point) s += "formula_at_point: " + formula_at_point->to_string() + "\n";
    if (mc_estimate) {
      s += "mc_estimate: " + mc_estimate->to_string() + "\n";
      s += "mc_estimate_decimal: " + decimal(*mc_estimate) + "\n";
      s += "mc_variance: " + mc_variance->to_string() + "\n";
      s += "mc_stddev: " + decimal(*mc_stddev) + "\n";
      s += "samples: " + std::to_string(samples) + "\n";
      s += "seed: " + std::to_string(seed) + "\n";
    }
    return s;
  }

  /// Single tab-separated `key=value` record.
  std::string to_record() const {
    std::string s = "k=" + std::to_string(k) + "\tformula=" + formula_value.to_string();
    if (exact_value) s += "\texact=" + exact_value->to_string();
    if (formula_at_point) s += "\tformula_at_point=" + formula_at_point->to_string();
    if (mc_estimate) {
      s += "\tmc_estimate=" + mc_estimate->to_string() + "\tmc_variance=" + mc_variance->to_string() +
           "\tmc_stddev=" + decimal(*mc_stddev) + "\tsamples=" + std::to_string(samples) +
           "\tseed=" + std::to_string(seed);
    }
    return s;
  }

  static std::string decimal(const Rational& r, int digits = 12) {
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    BigInt num = r.numerator() * scale;
    BigInt q;
    mpz_tdiv_q(q.get_mpz_t(), num.get_mpz_t(), r.denominator().get_mpz_t());
    bool neg = q < 0;
    if (neg) q = -q;
    std::string s = q.get_str();
    if (s.size() <= static_cast<std::size_t>(digits)) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
    return (neg ? "-" : "") + s;
  }
};

/// Monte Carlo estimate of E[R] at evaluated weights. Sample i draws one
/// uniform voltage per edge from sample_engine(seed, i) in edge order.
inline ExpectationReport expected_ratio_mc(const WeightedDigraph& g, unsigned k, const MonteCarloOptions& opts,
                                           const Assignment& at) {
  if (opts.samples == 0) throw DomainError("at least one sample is required");
  const auto weights = evaluate_weights(g, at);
  std::vector<Permutation> perms;
  if (opts.exhaustive) perms = all_permutations(k);

  auto sums = detail::parallel_sum<detail::MomentSums>(
      opts.samples, opts.workers, [&](std::uint64_t begin, std::uint64_t end) {
        std::vector<Permutation> volts(g.edge_count());
        detail::MomentSums acc;
        for (std::uint64_t i = begin; i < end; ++i) {
          if (opts.exhaustive) {
            detail::assignment_at(i, perms, volts);
          } else {
            auto engine = sample_engine(opts.seed, i);
            for (auto& v : volts) v = uniform_permutation(k, engine);
          }
          Rational r = ratio_value(g, k, volts, weights);
          acc.sum += r;
          acc.sum_sq += r * r;
        }
        return acc;
      });

  ExpectationReport rep;
  rep.k = k;
  rep.formula_value = expected_ratio_formula(g, k);
  rep.formula_at_point = rep.formula_value.eval(at);
  rep.samples = opts.samples;
  rep.seed = opts.seed;
  Rational n(BigInt(std::to_string(opts.samples)));
  rep.mc_estimate = sums.sum / n;
  rep.mc_variance = opts.samples > 1 ? (sums.sum_sq - sums.sum * sums.sum / n) / (n - Rational(1)) : Rational(0);
  rep.mc_stddev = sqrt_approx(*rep.mc_variance);
  return rep;
}

/// A product of centred indicators: letters `sources[l]` paired with
/// `images[l]`, all 1-based and drawn from {2..k}.
struct MomentQuery {
  unsigned k;
  std::vector<unsigned> sources;
  std::vector<unsigned> images;

  unsigned t() const { return static_cast<unsigned>(sources.size()); }

  void validate() const {
    if (sources.size() != images.size()) throw DomainError("pairing needs as many images as sources");
    if (t() < 1 || t() + 1 > k) throw DomainError("moment order t must satisfy 1 <= t <= k-1");
    auto check = [this](const std::vector<unsigned>& letters, const char* what) {
      std::set<unsigned> seen;
      for (unsigned x : letters) {
        if (x < 2 || x > k) throw DomainError(std::string(what) + " must lie in {2..k}");
        if (!seen.insert(x).second) throw DomainError(std::string(what) + " must be distinct");
      }
    };
    check(sources, "sources");
    check(images, "images");
  }
};

/// (1 - t) (k - t)! / k!
inline Rational y_moment_formula(unsigned k, unsigned t) {
  if (t < 1 || t + 1 > k) throw DomainError("moment order t must satisfy 1 <= t <= k-1");
  return Rational(1 - static_cast<long>(t)) * Rational(factorial(k - t), factorial(k));
}

/// E over uniform sigma in S_k of prod_l ([sigma(i_l) = j_l] - [sigma(i_l) = 1]).
inline Rational y_moment_bruteforce(const MomentQuery& q) {
  q.validate();
  std::vector<unsigned> sigma(q.k);
  for (unsigned i = 0; i < q.k; ++i) sigma[i] = i + 1;
  BigInt total = 0;
  do {
    long prod = 1;
    for (unsigned l = 0; l < q.t() && prod != 0; ++l) {
      unsigned img = sigma[q.sources[l] - 1];
      prod *= static_cast<long>(img == q.images[l]) - static_cast<long>(img == 1);
    }
    total += prod;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return Rational(total, factorial(q.k));
}

/// (k - t)! / k! for an injective pairing of size t, 0 otherwise.
inline Rational x_moment_formula(unsigned k, const std::vector<std::pair<unsigned, unsigned>>& pairing) {
  std::set<unsigned> imgs;
  for (const auto& p : pairing) imgs.insert(p.second);
  if (imgs.size() != pairing.size()) return Rational(0);
  return Rational(factorial(k - static_cast<unsigned>(pairing.size())), factorial(k));
}

/// E over uniform sigma in S_k of prod [sigma(i) = pi(i)], 1-based letters.
inline Rational x_moment_bruteforce(unsigned k, const std::vector<std::pair<unsigned, unsigned>>& pairing) {
  if (pairing.size() > k) throw DomainError("pairing larger than k");
  std::set<unsigned> srcs;
  for (const auto& [s, img] : pairing) {
    if (s < 1 || s > k || img < 1 || img > k) throw DomainError("letters must lie in {1..k}");
    if (!srcs.insert(s).second) throw DomainError("sources must be distinct");
  }
  std::vector<unsigned> sigma(k);
  for (unsigned i = 0; i < k; ++i) sigma[i] = i + 1;
  BigInt hits = 0;
  do {
    bool all = std::all_of(pairing.begin(), pairing.end(),
                           [&](const auto& p) { return sigma[p.first - 1] == p.second; });
    if (all) hits += 1;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return Rational(hits, factorial(k));
}

}  // namespace liftratio
