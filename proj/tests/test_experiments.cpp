#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mtoeplitz/experiments/checks.hpp"
#include "mtoeplitz/experiments/report.hpp"
#include "mtoeplitz/experiments/support_sets.hpp"
#include "mtoeplitz/io/csv.hpp"
#include "mtoeplitz/io/json.hpp"
#include "oracles.hpp"

using namespace mtoeplitz;

namespace {

const double kPi = std::numbers::pi;

double zeta_mid(double s) {
  const auto b = oracle::zeta_bracket(s, 200000);
  return static_cast<double>((b.lower + b.upper) / 2);
}

std::vector<std::uint64_t> decades(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = lo; x <= hi; x *= 10) out.push_back(x);
  return out;
}

}  // namespace

TEST(RandomTestVector, DeterministicNormalizedAndNonnegative) {
  for (auto dist : {VectorDistribution::uniform, VectorDistribution::heavy_tailed}) {
    for (double p : {1.0, 1.5, 3.0}) {
      const auto a = random_test_vector(500, p, 7, 3, dist);
      const auto b = random_test_vector(500, p, 7, 3, dist);
      const auto c = random_test_vector(500, p, 7, 4, dist);
      EXPECT_EQ(a, b);
      EXPECT_FALSE(a == c);
      EXPECT_NEAR(oracle::lp_norm(a.vector(), p), 1.0, 1e-13);
      for (double v : a.values()) EXPECT_GE(v, 0.0);
    }
  }
  EXPECT_EQ(parse_vector_distribution("heavy"), VectorDistribution::heavy_tailed);
  EXPECT_THROW(parse_vector_distribution("cauchy"), PreconditionFailed);
}

TEST(RandomTestSymbol, DeterministicAndNonnegative) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto f = random_test_symbol(11, i);
    EXPECT_EQ(f, random_test_symbol(11, i));
    EXPECT_TRUE(f.is_nonnegative());
  }
}

TEST(CheckTheorem1, RatiosAreBoundedByOne) {
  const auto rep = check_theorem1(SymbolSpec::power(2), 1.5, 2, 20, 256, 1);
  EXPECT_EQ(rep.verdict, Verdict::pass);
  EXPECT_EQ(rep.series("ratio").size(), 20u);
  EXPECT_LE(rep.last("max_ratio"), 1.0);
  // ||f||_r with r = 6/5: zeta(12/5)^{5/6}.
  EXPECT_NEAR(rep.last("norm_f_r"), std::pow(zeta_mid(2.4), 1 / 1.2), 1e-9);
  EXPECT_THROW(check_theorem1(SymbolSpec::power(0.6), 2, 2, 5, 64, 1), NormDiverges);
}

TEST(CheckTheorem1, RatioMatchesDenseOracle) {
  const double p = 1.5, q = 3, alpha = 1.7;
  const auto rep = check_theorem1(SymbolSpec::power(alpha), p, q, 3, 200, 42);
  const double r = conjugate_r(p, q);
  const double fr = std::pow(zeta_mid(alpha * r), 1 / r);
  for (std::size_t t = 0; t < 3; ++t) {
    const auto x = random_test_vector(200, p, 42, t, VectorDistribution::uniform);
    const auto y = oracle::dense_product(oracle::PowerSymbol{alpha}, x.vector(), 200);
    const double want = oracle::lp_norm(y, q) / (oracle::lp_norm(x.vector(), p) * fr);
    EXPECT_NEAR(rep.series("ratio")[t], want, 1e-9) << t;
  }
}

TEST(CheckTheorem1, SuitePassesOnRandomSymbols) {
  const auto rep = check_theorem1_suite(24, 128, 5);
  EXPECT_EQ(rep.verdict, Verdict::pass);
  EXPECT_EQ(rep.series("ratio").size(), 24u);
  EXPECT_LE(rep.last("max_ratio"), 1.0 + 1e-10);
}

TEST(CheckTheorem2, DiagonalScheduleMatchesDivisorPairEnumeration) {
  const auto rep = check_theorem2_convergence(SymbolSpec::power(2), 2, 2, {{2}, {3}, {5}, {7}});
  EXPECT_EQ(rep.verdict, Verdict::pass);
  const auto& lower = rep.series("lower");
  ASSERT_EQ(lower.size(), 4u);
  const oracle::PowerSymbol f{2};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto c = static_cast<std::uint64_t>(rep.series("c")[i]);
    const auto D = oracle::divisors_brute(c);
    long double s = 0;
    for (auto n : D) {
      for (auto k : D) s += f(n, k);
    }
    EXPECT_NEAR(lower[i], static_cast<double>(s / D.size()), 1e-14);
  }
  EXPECT_DOUBLE_EQ(lower[0], 1.125);
  EXPECT_DOUBLE_EQ(lower[1], 1.1875);
  EXPECT_NEAR(rep.last("upper"), kPi * kPi / 6, 1e-13);
  for (double g : rep.series("gap")) EXPECT_GT(g, 0.0);
}

TEST(CheckTheorem2, DeltaEdgeIsExactAndDualEdgeIncreases) {
  const auto d = check_theorem2_convergence(SymbolSpec::power(2), 1, 2, {{2}, {3}, {5}});
  EXPECT_EQ(d.verdict, Verdict::pass);
  for (double l : d.series("lower")) EXPECT_NEAR(l, std::sqrt(std::pow(kPi, 4) / 90), 1e-12);

  const auto q = check_theorem2_convergence(SymbolSpec::power(1), 2, kInfinity, {{2}, {3}, {5}, {7}, {11}});
  EXPECT_EQ(q.verdict, Verdict::pass);
  const auto& l = q.series("lower");
  for (std::size_t i = 1; i < l.size(); ++i) EXPECT_GT(l[i], l[i - 1]);
  EXPECT_LT(l.back(), kPi / std::sqrt(6.0));

  EXPECT_THROW(check_theorem2_convergence(SymbolSpec::power(2), 1.5, 2, {{2}}), PreconditionFailed);
}

TEST(CheckLemma4, PowerRulesAgreeWithZetaProducts) {
  const double a = 1.2, b = 1.3, c = 1.4, d = 1.5;
  const auto rep = check_lemma4(prime_power_rule(a), prime_power_rule(b), prime_power_rule(c), prime_power_rule(d),
                                {1000, 10000, 100000}, 1'000'000);
  EXPECT_EQ(rep.verdict, Verdict::pass);
  const double rhs = zeta_mid(b + d) * zeta_mid(a + c) * zeta_mid(a + d) * zeta_mid(b + c) / zeta_mid(a + b + c + d);
  EXPECT_NEAR(rep.last("rhs_re"), rhs, 1e-9 * rhs);
  EXPECT_EQ(rep.last("rhs_im"), 0.0);

  // Truncated left side at M = 1000 by direct divisor sums.
  auto conv = [](double s, double t, std::uint64_t n) {
    long double v = 0;
    for (std::uint64_t e = 1; e <= n; ++e) {
      if (n % e == 0) v += std::pow(static_cast<long double>(e), -s) * std::pow(static_cast<long double>(n / e), -t);
    }
    return v;
  };
  long double lhs = 0;
  for (std::uint64_t n = 1; n <= 1000; ++n) lhs += conv(a, b, n) * conv(c, d, n);
  EXPECT_NEAR(rep.series("lhs_re")[0], static_cast<double>(lhs), 1e-12);

  const auto& disc = rep.series("relative_discrepancy");
  for (std::size_t i = 1; i < disc.size(); ++i) EXPECT_LT(disc[i], disc[i - 1]);
}

TEST(CheckLemma4, ComplexPrimeTablesMatchFiniteEulerProducts) {
  // Values supported on {2, 3}: every inner product is a finite Euler product
  // and the truncated left side converges geometrically.
  using C = std::complex<double>;
  const auto f = prime_table({{2, C(0.3, 0.1)}, {3, C(0.2, -0.1)}});
  const auto g = prime_table({{2, C(0.1, 0.2)}, {3, C(0.25, 0)}});
  const auto h = prime_table({{2, C(0.2, 0)}, {3, C(0.1, 0.1)}});
  const auto j = prime_table({{2, C(0.15, -0.05)}, {3, C(0.3, 0)}});
  const auto rep = check_lemma4(f, g, h, j, {100, 10000, 1000000}, 100);
  EXPECT_EQ(rep.verdict, Verdict::pass);
  EXPECT_LT(rep.last("relative_discrepancy"), 1e-10);
  auto ip = [](auto&& x, auto&& y) {
    C v = 1;
    for (std::uint64_t t : {2, 3}) v /= C(1) - x(t) * std::conj(y(t));
    return v;
  };
  auto prod = [](const PrimeValues& x, const PrimeValues& y) {
    return [x, y](std::uint64_t t) { return x.at(t) * y.at(t); };
  };
  const C want = ip(g.at, j.at) * ip(f.at, h.at) * ip(f.at, j.at) * ip(g.at, h.at) / ip(prod(f, g), prod(h, j));
  EXPECT_NEAR(rep.last("rhs_re"), want.real(), 1e-14);
  EXPECT_NEAR(rep.last("rhs_im"), want.imag(), 1e-14);
}

TEST(CheckTheorem3, RatiosStayBelowTheProductBound) {
  const auto rep = check_theorem3_ratio(SymbolSpec::power(0.6), 1.5, 6, 3, 4000);
  EXPECT_EQ(rep.verdict, Verdict::pass);
  EXPECT_EQ(rep.series("ratio_to_bound").size(), 6u);
  EXPECT_LE(rep.last("max_ratio_to_bound"), 1 + 1e-6);
  for (double v : rep.series("empirical_ratio")) EXPECT_GT(v, 0.0);
  EXPECT_THROW(check_theorem3_ratio(SymbolSpec::product_power(1, 1), 1.5, 1, 1, 100), PreconditionFailed);
}

TEST(CheckProp5, NormStaysBelowMajorant) {
  const auto rep = check_prop5(0.6, 1.5, parse_x_rule("divisor"), {1000, 10000, 100000});
  EXPECT_NE(rep.verdict, Verdict::fail);
  const auto& n2 = rep.series("norm_sq");
  const auto& maj = rep.series("majorant");
  ASSERT_EQ(n2.size(), maj.size());
  for (std::size_t i = 0; i < n2.size(); ++i) EXPECT_LE(n2[i], maj[i] * (1 + 1e-12));
  for (std::size_t i = 1; i < n2.size(); ++i) EXPECT_GE(n2[i], n2[i - 1]);
  EXPECT_THROW(check_prop5(0.4, 1.5, parse_x_rule("divisor"), {1000}), PreconditionFailed);
  EXPECT_THROW(check_prop5(0.6, 2.5, parse_x_rule("divisor"), {1000}), PreconditionFailed);
}

TEST(CheckProp5, UnitVectorGivesFiniteColumnNorm) {
  // x = e_1: ||M_f x||_2^2 = sum n^{-2 alpha}, far from the majorant.
  const auto rep = check_prop5(0.8, 1.5, parse_x_rule("unit"), {1000, 10000, 100000});
  long double s = 0;
  for (std::uint64_t n = 100000; n >= 1; --n) s += std::pow(static_cast<long double>(n), -1.6L);
  EXPECT_NEAR(rep.last("norm_sq"), static_cast<double>(s), 1e-10);
}

TEST(CheckDyadic, DivisorConditionAndBoundedPartialSums) {
  const auto rep = check_dyadic_example(0.6, 1.5);
  EXPECT_EQ(rep.verdict, Verdict::pass);
  EXPECT_NEAR(rep.last("divisor_condition_sum"), zeta_mid(3) - 1, 1e-9);
  EXPECT_NEAR(rep.last("divisor_condition_sum"), 0.2020569, 1e-6);
  EXPECT_LT(rep.last("last_decade_increment"), 1e-4);
  EXPECT_LE(rep.last("level_partial"), rep.last("chain_majorant"));
  EXPECT_LT(rep.last("direct_relative_difference"), 1e-10);
}

TEST(CheckDyadic, LevelFormulaMatchesDirectApplication) {
  // Direct ||M_f x||_2^2 over n <= 2^12 for x_{2^k} = (k+1)^{-2}, by the dense oracle.
  const double alpha = 0.7, p = 1.5;
  const std::size_t N = 1 << 12;
  std::vector<double> x(N, 0.0);
  for (std::uint32_t k = 1; (std::size_t{1} << k) <= N; ++k) x[(std::size_t{1} << k) - 1] = std::pow(k + 1.0, -2.0);
  const auto y = oracle::dense_product(oracle::PowerSymbol{alpha}, x, N);
  long double want = 0;
  for (double v : y) want += static_cast<long double>(v) * v;
  const auto rep = check_dyadic_example(alpha, p, 64, 12, [](std::uint32_t k) { return std::pow(k + 1.0, -2.0); });
  EXPECT_NEAR(rep.last("direct_partial"), static_cast<double>(want), 1e-10 * static_cast<double>(want));
}

TEST(CheckProp6, DyadicSupportHasEmptyGammaPart) {
  const auto rep = check_prop6_gamma(0.6, 1.5, DyadicPowers{}, {1000, 10000, 100000});
  EXPECT_EQ(rep.verdict, Verdict::pass);
  EXPECT_DOUBLE_EQ(rep.last("beta"), 15.0);
  for (double g : rep.series("gamma_sq_partial")) EXPECT_EQ(g, 0.0);
}

TEST(CheckProp6, GammaBelowMajorantOnRichSupport) {
  const auto rep = check_prop6_gamma(0.9, 1.2, SmoothNumbers{5}, {1000, 10000, 100000});
  const auto& g = rep.series("gamma_sq_partial");
  const auto& m = rep.series("gamma_majorant");
  ASSERT_EQ(g.size(), m.size());
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_LE(g[i], m[i] * (1 + 1e-12));
  EXPECT_NE(rep.verdict, Verdict::fail);
}

TEST(SupportSets, EnumerationAgreesWithMembership) {
  const std::vector<SupportSetSpec> sets = {DyadicPowers{}, PrimorialMultiples{}, SmoothNumbers{5},
                                            DivisorRich{12}, ExplicitList{{1, 4, 9, 4000}}, AllNaturals{},
                                            Primes{}};
  const std::uint64_t X = 5000;
  for (const auto& S : sets) {
    const auto pts = enumerate_support(S, X);
    std::vector<std::uint64_t> want;
    for (std::uint64_t n = 1; n <= X; ++n) {
      if (contains(S, n)) want.push_back(n);
    }
    ASSERT_EQ(pts.size(), want.size()) << describe(S);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      ASSERT_EQ(pts[i].n, want[i]) << describe(S);
      ASSERT_EQ(pts[i].divisors, oracle::divisors_brute(pts[i].n).size());
    }
    EXPECT_EQ(parse_support_set(describe(S)), S);
  }
}

TEST(SupportSets, MembershipExamples) {
  EXPECT_TRUE(contains(DyadicPowers{}, 1024));
  EXPECT_FALSE(contains(DyadicPowers{}, 1));
  EXPECT_FALSE(contains(DyadicPowers{}, 12));
  EXPECT_TRUE(contains(PrimorialMultiples{}, 2 * 2 * 3));
  EXPECT_TRUE(contains(PrimorialMultiples{}, 2 * 3 * 5 * 7));
  EXPECT_FALSE(contains(PrimorialMultiples{}, 3));
  EXPECT_FALSE(contains(PrimorialMultiples{}, 2 * 5));
  EXPECT_FALSE(contains(PrimorialMultiples{}, 2 * 9));
  EXPECT_TRUE(contains(Primes{}, 97));
  EXPECT_THROW(parse_support_set("lattice"), PreconditionFailed);
}

TEST(SparsityCensus, FlagsDenseAndPrimeSupports) {
  const auto grid = decades(1000, 1000000);
  const auto all = sparsity_census(AllNaturals{}, 1.5, grid);
  EXPECT_EQ(all.verdict, Verdict::fail);
  EXPECT_NEAR(all.last("count_exponent"), 1.0, 1e-12);
  const auto primes = sparsity_census(Primes{}, 1.5, grid);
  EXPECT_EQ(primes.verdict, Verdict::fail);
  const auto dyadic = sparsity_census(DyadicPowers{}, 1.5, grid);
  EXPECT_EQ(dyadic.verdict, Verdict::pass);
  EXPECT_LT(dyadic.last("count_exponent"), 0.1);
  // Count of 2^k <= 10^6 is 19.
  EXPECT_EQ(dyadic.last("count"), 19.0);
  // sum_{k <= 19} d(2^k)^{-3} = sum_{j = 2}^{20} j^{-3}.
  double want = 0;
  for (int j = 2; j <= 20; ++j) want += std::pow(j, -3.0);
  EXPECT_NEAR(dyadic.last("divisor_condition_partial"), want, 1e-15);
}

TEST(SearchCounterexample, DyadicFamilyIsNotACandidate) {
  const auto rep = search_counterexample(0.6, 1.5, {DyadicPowers{}, AllNaturals{}}, {1000, 10000, 100000}, 1);
  EXPECT_NE(rep.verdict, Verdict::fail);
  EXPECT_FALSE(rep.series("dyadic.R").empty());
  EXPECT_LT(rep.last("dyadic.slope"), kCandidateSlope);
  EXPECT_EQ(rep.last("dyadic.candidate"), 0.0);
  EXPECT_EQ(rep.measurements.count("all.R"), 0u);
  bool skipped = false;
  for (const auto& n : rep.notes) skipped = skipped || n.find("all") != std::string::npos;
  EXPECT_TRUE(skipped);
}

TEST(SearchCounterexample, Deterministic) {
  const auto a = search_counterexample(0.6, 1.5, {SmoothNumbers{5}}, {1000, 10000}, 9);
  const auto b = search_counterexample(0.6, 1.5, {SmoothNumbers{5}}, {1000, 10000}, 9);
  EXPECT_EQ(a.measurements, b.measurements);
}

TEST(Report, FitHelpers) {
  const std::vector<double> x{10, 100, 1000, 10000};
  std::vector<double> y;
  for (double v : x) y.push_back(3 * std::sqrt(v));
  EXPECT_NEAR(fit_log_slope(x, y), 0.5, 1e-12);
  const std::vector<double> s{1, 2, 3, 3.5};
  EXPECT_NEAR(last_decade_increment(x, s), 0.5 / 3.5, 1e-12);
}

TEST(Report, CsvAndJsonSerialization) {
  ExperimentReport r;
  r.id = "demo";
  r.series("a") = {1.5, 2};
  r.series("b") = {0.1};
  r.verdict = Verdict::pass;
  r.notes.push_back("note");
  std::ostringstream os;
  write_csv(os, r);
  EXPECT_EQ(os.str(), "step,name,value\n0,a,1.5\n1,a,2\n0,b,0.10000000000000001\n");
  const auto j = report_to_json(r);
  EXPECT_EQ(j.at("id"), "demo");
  EXPECT_EQ(j.at("verdict"), "pass");
  EXPECT_EQ(j.at("measurements").at("a").size(), 2u);
  EXPECT_EQ(j.at("notes").at(0), "note");
}
