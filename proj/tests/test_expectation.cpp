#include <gtest/gtest.h>

#include <map>
#include <random>

#include "liftratio/expectation.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace liftratio;
using liftratio::test_support::P;
namespace ts = liftratio::test_support;

namespace {

Rational frac(long n, long d) { return Rational(BigInt(n), BigInt(d)); }

WeightedDigraph two_cycle() {
  WeightedDigraph g;
  g.add_vertex("u");
  g.add_vertex("v");
  g.add_edge("u", "v", P("p"));
  g.add_edge("v", "u", P("q"));
  return g;
}

}  // namespace

TEST(Formula, Examples) {
  EXPECT_EQ(expected_ratio_formula(ts::two_loops(), 3), P("1/3*(a+b)^2"));
  EXPECT_EQ(expected_ratio_formula(ts::complete_with_loops_3(), 1), Poly(1));
  EXPECT_EQ(expected_ratio_formula(ts::triple3().base(), 3), P("1/3*(a+b)^2*c^2*(d+e)^2"));
  EXPECT_THROW(expected_ratio_formula(ts::two_loops(), 0), DomainError);
}

TEST(Exact, Examples) {
  EXPECT_EQ(expected_ratio_exact(ts::two_loops(), 3), P("1/3*(a+b)^2"));
  EXPECT_EQ(expected_ratio_exact(two_cycle(), 2), P("1/2*p*q"));
  EXPECT_EQ(expected_ratio_exact(ts::complete_with_loops_3(), 1), Poly(1));
}

TEST(Exact, Budget) {
  try {
    expected_ratio_exact(ts::triple3().base(), 3, 1000);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.required(), "7776");
    EXPECT_EQ(e.budget(), 1000u);
  }
  EXPECT_THROW(expected_ratio_exact_value(ts::complete_with_loops_3(), 4, {}, kDefaultBudget), BudgetExceeded);
}

TEST(Exact, ReductionToDegreeDeterminant) {
  // Averaging det of the voltage Laplacian gives det(D).
  WeightedDigraph g = two_cycle();
  g.add_edge("u", "u", P("r"));
  for (unsigned k : {2u, 3u}) {
    EXPECT_EQ(expected_ratio_exact(g, k).scaled(Rational(static_cast<long>(k))), voltage_degree_det(g, k));
  }
  EXPECT_EQ(voltage_degree_det(g, 3), P("(p+r)^2*q^2"));
}

TEST(Exact, WorkerCountDoesNotMatter) {
  WeightedDigraph g = two_cycle();
  g.add_edge("v", "v", P("s"));
  EXPECT_EQ(expected_ratio_exact(g, 3, kDefaultBudget, 1), expected_ratio_exact(g, 3, kDefaultBudget, 3));
  Assignment at{{"p", 2}, {"q", 3}, {"s", frac(1, 2)}};
  EXPECT_EQ(expected_ratio_exact_value(g, 3, at, kDefaultBudget, 1), expected_ratio_exact_value(g, 3, at, kDefaultBudget, 4));
}

TEST(Exact, SmallFamiliesMatchFormula) {
  for (std::size_t n = 1; n <= 2; ++n) {
    ts::for_each_multigraph(n, 3, [&](const WeightedDigraph& g) {
      ASSERT_EQ(expected_ratio_exact(g, 2), expected_ratio_formula(g, 2)) << serialize(g);
      if (g.edge_count() <= 2) {
        ASSERT_EQ(expected_ratio_exact(g, 3), expected_ratio_formula(g, 3)) << serialize(g);
      }
    });
  }
}

TEST(UniformPermutation, TrivialAndDeterministic) {
  auto e = sample_engine(5, 0);
  for (int i = 0; i < 10; ++i) EXPECT_TRUE(uniform_permutation(1, e).is_identity());
  auto a = sample_engine(99, 12345), b = sample_engine(99, 12345);
  EXPECT_EQ(uniform_permutation(7, a), uniform_permutation(7, b));
  auto c = sample_engine(99, 12346);
  auto d = sample_engine(99, 12345);
  // Adjacent indices give unrelated streams.
  EXPECT_NE(c(), d());
}

TEST(UniformPermutation, FrequenciesForThreeLetters) {
  const int draws = 60'000;
  std::map<std::string, int> counts;
  for (int i = 0; i < draws; ++i) {
    auto e = sample_engine(2024, static_cast<std::uint64_t>(i));
    ++counts[uniform_permutation(3, e).to_string()];
  }
  ASSERT_EQ(counts.size(), 6u);
  // Binomial(60000, 1/6): mean 10000, sd sqrt(60000 * 1/6 * 5/6) ~= 91.3.
  for (const auto& [perm, c] : counts) EXPECT_NEAR(c, 10'000, 5 * 91.3) << perm;
}

TEST(DrawBelow, Unbiased) {
  std::mt19937_64 e(3);
  std::vector<int> counts(5, 0);
  for (int i = 0; i < 50'000; ++i) ++counts[draw_below(e, 5)];
  // Binomial(50000, 1/5): sd ~= 89.4
  for (int c : counts) EXPECT_NEAR(c, 10'000, 5 * 89.4);
}

TEST(MonteCarlo, TwoLoopsNearFormula) {
  Assignment at{{"a", 1}, {"b", 2}};
  auto rep = expected_ratio_mc(ts::two_loops(), 3, {.samples = 10'000, .seed = 11}, at);
  EXPECT_EQ(*rep.formula_at_point, Rational(3));
  EXPECT_TRUE(rep.within(Rational(3), 3)) << rep.to_text();
  EXPECT_GT(*rep.mc_variance, Rational(0));
}

TEST(MonteCarlo, ExhaustiveIndexEqualsExact) {
  WeightedDigraph g = two_cycle();
  g.add_edge("u", "u", P("r"));
  Assignment at2{{"p", 3}, {"q", frac(2, 3)}, {"r", 4}};
  auto rep = expected_ratio_mc(g, 3, {.samples = 216, .exhaustive = true}, at2);
  EXPECT_EQ(*rep.mc_estimate, expected_ratio_exact_value(g, 3, at2));
  EXPECT_EQ(*rep.mc_estimate, expected_ratio_exact(g, 3).eval(at2));
}

TEST(MonteCarlo, TrivialFold) {
  Assignment at{{"a", 1}, {"b", 2}};
  auto rep = expected_ratio_mc(ts::two_loops(), 1, {.samples = 50, .seed = 3}, at);
  EXPECT_EQ(*rep.mc_estimate, Rational(1));
  EXPECT_EQ(*rep.mc_variance, Rational(0));
  EXPECT_EQ(*rep.mc_stddev, Rational(0));
}

TEST(MonteCarlo, Errors) {
  EXPECT_THROW(expected_ratio_mc(ts::two_loops(), 3, {.samples = 10}, {{"a", 1}}), MissingVariable);
  EXPECT_THROW(expected_ratio_mc(ts::two_loops(), 3, {.samples = 0}, {{"a", 1}, {"b", 1}}), DomainError);
}

TEST(MonteCarlo, ReproducibleAcrossWorkers) {
  Assignment at{{"p", 2}, {"q", 5}, {"r", 1}};
  WeightedDigraph g = two_cycle();
  g.add_edge("u", "u", P("r"));
  auto one = expected_ratio_mc(g, 3, {.samples = 2000, .seed = 77, .workers = 1}, at);
  auto three = expected_ratio_mc(g, 3, {.samples = 2000, .seed = 77, .workers = 3}, at);
  EXPECT_EQ(one.to_text(), three.to_text());
  EXPECT_EQ(one.to_record(), three.to_record());
  auto other = expected_ratio_mc(g, 3, {.samples = 2000, .seed = 78}, at);
  EXPECT_NE(one.to_record(), other.to_record());
}

TEST(Report, Serialization) {
  ExpectationReport rep;
  rep.k = 3;
  rep.formula_value = P("1/3*a^2");
  rep.mc_estimate = frac(7, 2);
  rep.mc_variance = Rational(4);
  rep.mc_stddev = Rational(2);
  rep.samples = 4;
  rep.seed = 9;
  EXPECT_EQ(rep.to_text(),
            "k: 3\nformula: 1/3*a^2\nmc_estimate: 7/2\nmc_estimate_decimal: 3.500000000000\n"
            "mc_variance: 4\nmc_stddev: 2.000000000000\nsamples: 4\nseed: 9\n");
  EXPECT_EQ(rep.to_record(), "k=3\tformula=1/3*a^2\tmc_estimate=7/2\tmc_variance=4\tmc_stddev=2.000000000000\tsamples=4\tseed=9");
  EXPECT_EQ(ExpectationReport::decimal(frac(-1, 8), 3), "-0.125");
  // |7/2 - 3| * sqrt(4) = 1 <= z * 2
  EXPECT_TRUE(rep.within(Rational(3), 1));
  EXPECT_FALSE(rep.within(Rational(1), 2));
}

TEST(YMoment, FormulaExamples) {
  EXPECT_EQ(y_moment_formula(5, 1), Rational(0));
  EXPECT_EQ(y_moment_formula(3, 2), frac(-1, 6));
  EXPECT_EQ(y_moment_formula(4, 3), frac(-1, 12));
  EXPECT_THROW(y_moment_formula(3, 3), DomainError);
  EXPECT_THROW(y_moment_formula(3, 0), DomainError);
}

TEST(YMoment, BruteForceExamples) {
  EXPECT_EQ(y_moment_bruteforce({3, {2}, {3}}), Rational(0));
  EXPECT_EQ(y_moment_bruteforce({3, {2, 3}, {2, 3}}), frac(-1, 6));
  EXPECT_EQ(y_moment_bruteforce({3, {2, 3}, {3, 2}}), frac(-1, 6));
  EXPECT_THROW(y_moment_bruteforce({3, {1}, {2}}), DomainError);
  EXPECT_THROW(y_moment_bruteforce({3, {2, 2}, {2, 3}}), DomainError);
  EXPECT_THROW(y_moment_bruteforce({3, {2, 3}, {2}}), DomainError);
  EXPECT_THROW(y_moment_bruteforce({2, {2, 3}, {2, 3}}), DomainError);
}

TEST(XMoment, Examples) {
  EXPECT_EQ(x_moment_bruteforce(3, {{1, 2}, {2, 3}}), frac(1, 6));
  EXPECT_EQ(x_moment_bruteforce(3, {{1, 2}, {3, 2}}), Rational(0));
  EXPECT_EQ(x_moment_bruteforce(4, {{1, 2}, {2, 1}, {3, 4}, {4, 3}}), frac(1, 24));
  EXPECT_EQ(x_moment_bruteforce(4, {}), Rational(1));
  EXPECT_THROW(x_moment_bruteforce(3, {{1, 2}, {1, 3}}), DomainError);
  EXPECT_THROW(x_moment_bruteforce(3, {{1, 4}}), DomainError);
}

TEST(AllPermutations, LexicographicOrder) {
  auto perms = all_permutations(3);
  std::vector<std::string> s;
  for (const auto& p : perms) s.push_back(p.to_string());
  EXPECT_EQ(s, (std::vector<std::string>{"123", "132", "213", "231", "312", "321"}));
  EXPECT_EQ(assignment_count(3, 5), 7776);
}
