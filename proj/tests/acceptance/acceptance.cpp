// End-to-end acceptance checks. Each test prints one line
//   [acceptance N] PASS|FAIL  <name>: <measured values>
// and fails the test when the criterion is not met.

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>

#include "netrel/netrel.hpp"
#include "oracles.hpp"

using namespace netrel;

namespace {

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void report(int number, const std::string& name, bool ok, const std::string& detail) {
  std::printf("[acceptance %d] %s  %s: %s\n", number, ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
  EXPECT_TRUE(ok) << name << ": " << detail;
}

template <typename... Args>
std::string fmt(const char* pattern, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

Graph to_graph(const oracle::RandomGraph& rg) {
  std::vector<Edge> edges;
  for (auto [u, v] : rg.edges) edges.push_back({u, v});
  return Graph(static_cast<std::size_t>(rg.n), edges);
}

const std::vector<double> kDecayRates{0.0379, 0.8795, 0.7818, 0.6949, 0.6841, 0.0732, 0.1629, 0.01045};

}  // namespace

TEST(Acceptance, K4Coefficients) {
  Stopwatch clock;
  const auto f = f_coefficients(Graph::complete(4));
  const double elapsed = clock.seconds();
  const std::vector<std::uint64_t> expected{1, 6, 15, 16, 0, 0, 0};
  std::ostringstream got;
  for (std::size_t i = 0; i < f.counts.size(); ++i) got << (i ? "," : "") << f.counts[i];
  report(1, "K4 F-coefficients", f.counts == expected && elapsed < 1.0,
         "F = (" + got.str() + ")" + fmt(", %.4f s", elapsed));
}

TEST(Acceptance, OracleTriangle) {
  Stopwatch clock;
  std::mt19937_64 rng(20240601);
  double worst = 0.0;
  for (int round = 0; round < 200; ++round) {
    const auto rg = oracle::random_graph(rng, 6, 12);
    const Graph g = to_graph(rg);
    const auto probs = oracle::random_probs(rng, rg.edges.size());
    const double enumeration = reliability_heterogeneous(g, probs);
    const double factoring = reliability_factoring(g, probs);
    worst = std::max(worst, std::abs(enumeration - factoring));

    const double p = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const std::vector<double> same(rg.edges.size(), p);
    const double f_form = reliability_homogeneous(f_coefficients(g), p);
    const double enum_h = reliability_heterogeneous(g, same);
    const double fact_h = reliability_factoring(g, same);
    worst = std::max({worst, std::abs(f_form - enum_h), std::abs(f_form - fact_h), std::abs(enum_h - fact_h)});
  }
  const double elapsed = clock.seconds();
  report(2, "enumeration / factoring / F-form agreement", worst <= 1e-12 && elapsed < 60.0,
         fmt("200 graphs, max disagreement %.3e, %.2f s", worst, elapsed));
}

TEST(Acceptance, FiveNodeThreshold) {
  const auto r = bond_threshold(Empirical::from_degrees(std::vector<int>{4, 4, 3, 3, 2}));
  report(3, "degree sequence (4,4,3,3,2) threshold", std::abs(r.p_c - 0.421053) <= 1e-6,
         fmt("p_c = %.9f (target 0.421053 +- 1e-6)", r.p_c));
}

TEST(Acceptance, HeterogeneousLifetimeWindow) {
  Stopwatch clock;
  const auto profile = EdgeReliabilityProfile::exponential(kDecayRates);
  const auto config = make_assessment_config(8, 0.421053);
  const auto curve = reliability_curve(profile, config, make_grid(0.0, 15.0, 0.01));
  // First grid interval where the curve passes from above p_c to at or below it.
  std::optional<double> grid_crossing;
  for (std::size_t i = 1; i < curve.values.size() && !grid_crossing; ++i) {
    if (curve.values[i - 1] > config.p_c && curve.values[i] <= config.p_c) {
      const double t0 = curve.times[i - 1];
      const double t1 = curve.times[i];
      const double v0 = curve.values[i - 1];
      const double v1 = curve.values[i];
      grid_crossing = t0 + (v0 - config.p_c) / (v0 - v1) * (t1 - t0);
    }
  }
  const double refined = lifetime_threshold_crossing(profile, config).rel_c_crossing;
  const double elapsed = clock.seconds();
  const auto integral = lifetime_integral(reliability_curve(profile, config,
                                                            make_grid(0.0, profile.default_horizon(), 0.01)));
  const bool ok = config.M_c == 3 && grid_crossing && *grid_crossing > 4.0 && *grid_crossing < 5.0 &&
                  elapsed < 1.0;
  report(4, "heterogeneous Rel_c crossing in (4,5)", ok,
         fmt("M_c = %zu, crossing t = %.6f (grid), %.6f (bisection); Rel_c(4) = %.5f; "
             "integral lifetime T = %.4f; %.3f s",
             config.M_c, grid_crossing.value_or(-1.0), refined, rel_c_at(profile, config, 4.0), integral.value,
             elapsed));
}

TEST(Acceptance, PowerLawNetworkLifetime) {
  const double p_c = threshold_truncated(2.5, 1, 11).p_c;
  const double closed = 1.0 / (std::sqrt(11.0) - 1.0);
  const auto config = make_assessment_config(250, p_c);
  const auto r = lifetime_threshold_crossing(EdgeReliabilityProfile::shared_exponential(250, 0.25), config);
  const double edge_level = r.edge_level_crossing.value_or(-1.0);
  const bool ok = std::abs(p_c - closed) <= 1e-9 && std::abs(edge_level - 3.36) <= 0.02 &&
                  std::abs(r.rel_c_crossing - edge_level) < 0.1;
  report(5, "truncated power-law threshold and shared-rate lifetime", ok,
         fmt("p_c = %.12f, M_c = %zu, edge-level crossing %.6f, Rel_c crossing %.6f, gap %.4f", p_c, config.M_c,
             edge_level, r.rel_c_crossing, std::abs(r.rel_c_crossing - edge_level)));
}

TEST(Acceptance, ZetaThresholdShape) {
  bool monotone = true;
  double previous = -1.0;
  for (int i = 1; i <= 1000; ++i) {
    const double p = threshold_zeta(3.0 + i / 1000.0).p_c;
    monotone = monotone && p > previous;
    previous = p;
  }
  const double near_three = threshold_zeta(3.0 + 1e-6).p_c;
  const double crossing = oracle::bisect([](double g) { return threshold_zeta(g).p_c - 1.0; }, 3.01, 4.0, 1e-10);
  const bool ok = monotone && near_three < 1e-5 && std::abs(crossing - 3.48) <= 0.02;
  report(6, "zeta threshold curve on (3,4]", ok,
         fmt("monotone %s, p_c(3+1e-6) = %.3e, crosses 1 at gamma = %.6f", monotone ? "yes" : "no", near_three,
             crossing));
}

TEST(Acceptance, PoissonBinomialTail) {
  Stopwatch clock;
  std::mt19937_64 rng(77);
  double worst = 0.0;
  for (int round = 0; round < 500; ++round) {
    const std::size_t N = 1 + rng() % 15;
    const auto probs = oracle::random_probs(rng, N);
    const std::size_t M = rng() % (N + 1);
    worst = std::max(worst, std::abs(rel_c_heterogeneous(probs, M) - oracle::brute_tail(probs, M)));
  }
  const double elapsed = clock.seconds();
  report(7, "Poisson-binomial tail versus subset enumeration", worst <= 1e-12 && elapsed < 60.0,
         fmt("500 vectors, max error %.3e, %.2f s", worst, elapsed));
}

TEST(Acceptance, LeCamBound) {
  std::mt19937_64 rng(88);
  int violations = 0;
  double tightest = 0.0;
  for (int round = 0; round < 100; ++round) {
    const std::size_t N = 1 + rng() % 12;
    const auto probs = oracle::random_probs(rng, N);
    const auto exact = oracle::brute_count_pmf(probs);
    double mu = 0.0;
    for (double p : probs) mu += p;
    double distance = 0.0;
    double poisson_mass = 0.0;
    for (std::size_t k = 0; k < exact.size(); ++k) {
      const double poi = std::exp(static_cast<double>(k) * std::log(mu) - mu - std::lgamma(k + 1.0));
      poisson_mass += poi;
      distance += std::abs(exact[k] - poi);
    }
    distance += std::max(0.0, 1.0 - poisson_mass);
    const double bound = le_cam_bound(probs);
    if (distance > bound) ++violations;
    tightest = std::max(tightest, distance / bound);
  }
  report(8, "Le Cam bound on total variation", violations == 0,
         fmt("100 vectors, %d violations, largest distance/bound %.4f", violations, tightest));
}

TEST(Acceptance, K4Discrepancy) {
  const auto f = f_coefficients(Graph::complete(4));
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double p = i / 100.0;
    const double gap = rel_c_homogeneous(6, 2, p) - reliability_homogeneous(f, p);
    worst = std::max(worst, std::abs(gap - 4.0 * std::pow(p, 3) * std::pow(1.0 - p, 3)));
  }
  report(9, "K4 gap equals 4p^3(1-p)^3", worst <= 1e-12, fmt("101 points, max deviation %.3e", worst));
}

TEST(Acceptance, MonteCarloConsistency) {
  Stopwatch clock;
  const auto mc = estimate_reliability(Graph::complete(4), std::vector<double>(6, 0.5), 1'000'000, 2024);
  const double z = (mc.estimate - 0.59375) / mc.standard_error;

  const auto degrees = sample_degrees(Poisson{4.0}, 10'000, 31);
  ErasureStats stats;
  const auto g = generate_configuration_model(degrees, 32, &stats);
  std::vector<double> fractions;
  for (int i = 50; i <= 100; ++i) fractions.push_back(i / 100.0);
  const auto sweep = inverse_percolation_sweep(g, fractions, 10, 33);
  const double elapsed = clock.seconds();
  const double g_c = sweep.g_c.value_or(-1.0);
  const bool ok = std::abs(z) < 4.0 && std::abs(g_c - 0.75) <= 0.05 && elapsed < 120.0;
  report(10, "Monte Carlo reliability and percolation sweep", ok,
         fmt("estimate %.5f (z = %.2f); sweep on n = 10000, |E| = %zu: g_c = %.2f; %.1f s", mc.estimate, z,
             g.edge_count(), g_c, elapsed));
}

TEST(Acceptance, FixedPointSolver) {
  const double oracle_root = oracle::bisect([](double x) { return std::exp(2.0 * (x - 1.0)) - x; }, 0.0, 0.5);
  const auto fp = solve_fixed_point(Poisson{2.0}, 1.0);
  const double p_c = bond_threshold(Poisson{2.0}).p_c;
  const bool below = solve_fixed_point(Poisson{2.0}, p_c - 1e-4).nontrivial;
  const bool above = solve_fixed_point(Poisson{2.0}, p_c + 1e-4).nontrivial;
  const bool ok = std::abs(fp.root - 0.2032) <= 1e-3 && std::abs(fp.root - oracle_root) <= 1e-3 && !below && above;
  report(11, "fixed-point root and giant-component flag", ok,
         fmt("root %.10f (bisection oracle %.10f); flag at p_c-1e-4: %s, at p_c+1e-4: %s", fp.root, oracle_root,
             below ? "set" : "clear", above ? "set" : "clear"));
}
