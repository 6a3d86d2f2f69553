#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "netrel/assessment.hpp"
#include "netrel/exact_reliability.hpp"
#include "oracles.hpp"

using namespace netrel;

TEST(CriticalEdgeCount, Examples) {
  EXPECT_EQ(critical_edge_count(6, 1.0 / 3.0), 2u);
  EXPECT_EQ(critical_edge_count(8, 0.421053), 3u);
  EXPECT_EQ(critical_edge_count(8, 0.0), 0u);
  EXPECT_EQ(critical_edge_count(250, 1.0 / (std::sqrt(11.0) - 1.0)), 107u);
  EXPECT_EQ(critical_edge_count(10, 1.0), 10u);
  EXPECT_THROW(critical_edge_count(10, 1.2), std::invalid_argument);
}

TEST(RelCHomogeneous, Examples) {
  EXPECT_NEAR(rel_c_homogeneous(6, 2, 0.5), 42.0 / 64.0, 1e-15);
  EXPECT_DOUBLE_EQ(rel_c_homogeneous(6, 2, 1.0), 1.0);
  EXPECT_DOUBLE_EQ(rel_c_homogeneous(6, 2, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(rel_c_homogeneous(6, 6, 0.7), 0.0);
  EXPECT_THROW(rel_c_homogeneous(6, 7, 0.5), std::invalid_argument);
}

TEST(RelCHeterogeneous, Examples) {
  EXPECT_DOUBLE_EQ(rel_c_heterogeneous(std::vector<double>{1, 1, 0}, 1), 1.0);
  const std::vector<double> p{0.9, 0.5, 0.2, 0.7};
  EXPECT_NEAR(rel_c_heterogeneous(p, 2), oracle::brute_tail(p, 2), 1e-14);
  for (double q : {0.0, 0.13, 0.5, 0.91, 1.0})
    EXPECT_NEAR(rel_c_heterogeneous(std::vector<double>(9, q), 4), rel_c_homogeneous(9, 4, q), 1e-14);
}

TEST(RelCHeterogeneous, MatchesSubsetEnumeration) {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 300; ++round) {
    const std::size_t N = 1 + rng() % 15;
    const auto probs = oracle::random_probs(rng, N);
    const std::size_t M = rng() % (N + 1);
    EXPECT_NEAR(rel_c_heterogeneous(probs, M), oracle::brute_tail(probs, M), 1e-12);
  }
}

TEST(RelCHeterogeneous, TailIsMonotoneInEachProbability) {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 200; ++round) {
    const std::size_t N = 1 + rng() % 20;
    auto probs = oracle::random_probs(rng, N);
    const std::size_t M = rng() % (N + 1);
    const double before = rel_c_heterogeneous(probs, M);
    const std::size_t i = rng() % N;
    probs[i] = std::min(1.0, probs[i] + 0.2);
    EXPECT_GE(rel_c_heterogeneous(probs, M), before - 1e-15);
  }
}

TEST(PoissonBinomial, PmfSumsToOne) {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 100; ++round) {
    const auto probs = oracle::random_probs(rng, 1 + rng() % 300);
    const auto pmf = poisson_binomial_pmf(probs);
    double total = 0.0;
    for (double x : pmf) total += x;
    EXPECT_NEAR(total, 1.0, 1e-12);
    const std::size_t M = rng() % probs.size();
    double lower = 0.0;
    for (std::size_t k = 0; k <= M; ++k) lower += pmf[k];
    EXPECT_NEAR(rel_c_heterogeneous(probs, M) + lower, 1.0, 1e-12);
  }
}

TEST(PoissonApprox, Examples) {
  const auto zero = rel_c_poisson_approx(std::vector<double>(5, 0.0), 0);
  EXPECT_EQ(zero.approx, 0.0);
  EXPECT_EQ(zero.mu, 0.0);

  const std::vector<double> small(100, 0.01);
  const auto r = rel_c_poisson_approx(small, 0);
  EXPECT_NEAR(r.mu, 1.0, 1e-14);
  EXPECT_NEAR(r.approx, 1.0 - std::exp(-1.0), 1e-12);
  EXPECT_LE(std::abs(r.approx - rel_c_heterogeneous(small, 0)), le_cam_bound(small));

  const std::vector<double> p{0.9, 0.5, 0.2, 0.7};
  EXPECT_LE(std::abs(rel_c_poisson_approx(p, 2).approx - rel_c_heterogeneous(p, 2)), le_cam_bound(p));
}

TEST(LeCam, BoundValuesAndTotalVariation) {
  EXPECT_NEAR(le_cam_bound(std::vector<double>{0.1, 0.2}), 0.1, 1e-16);
  EXPECT_EQ(le_cam_bound(std::vector<double>(4, 0.0)), 0.0);

  std::mt19937_64 rng(31);
  for (int round = 0; round < 100; ++round) {
    const auto probs = oracle::random_probs(rng, 10);
    const auto exact = oracle::brute_count_pmf(probs);
    double mu = 0.0;
    for (double p : probs) mu += p;
    double tv = 0.0;
    double poisson_mass = 0.0;
    for (std::size_t k = 0; k < exact.size(); ++k) {
      const double poi = std::exp(k * std::log(mu) - mu - std::lgamma(k + 1.0));
      poisson_mass += poi;
      tv += std::abs(exact[k] - poi);
    }
    tv += 1.0 - poisson_mass;
    EXPECT_LE(tv, le_cam_bound(probs));
    for (std::size_t M = 0; M <= probs.size(); ++M)
      EXPECT_LE(std::abs(rel_c_poisson_approx(probs, M).approx - rel_c_heterogeneous(probs, M)), le_cam_bound(probs));
  }
}

TEST(NodeVoting, Examples) {
  EXPECT_DOUBLE_EQ(node_voting_reliability(4, 1.0 / 3.0, 1.0), 1.0);
  EXPECT_NEAR(node_voting_reliability(4, 1.0 / 3.0, 0.5), 11.0 / 16.0, 1e-15);
  EXPECT_DOUBLE_EQ(node_voting_reliability(4, 1.0 / 3.0, 0.0), 0.0);
}

TEST(RelC, K4GapToExactPolynomial) {
  const auto f = f_coefficients(Graph::complete(4));
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    const double gap = rel_c_homogeneous(6, 2, p) - reliability_homogeneous(f, p);
    EXPECT_NEAR(gap, 4.0 * std::pow(p, 3) * std::pow(1.0 - p, 3), 1e-12);
    EXPECT_GE(gap, -1e-15);
  }
}
