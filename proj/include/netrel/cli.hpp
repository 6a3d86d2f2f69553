#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netrel/assessment.hpp"
#include "netrel/edge_list.hpp"
#include "netrel/error.hpp"
#include "netrel/exact_reliability.hpp"
#include "netrel/json_io.hpp"
#include "netrel/lifetime.hpp"
#include "netrel/percolation.hpp"
#include "netrel/scenario.hpp"
#include "netrel/simulation.hpp"

namespace netrel::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kComputationError = 1;
inline constexpr int kUsageError = 2;

namespace detail {

/// "a:b:step" with a <= b and step > 0.
inline std::vector<double> parse_range(const std::string& text, const std::string& what) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? std::string::npos : text.find(':', first + 1);
  if (second == std::string::npos) throw std::invalid_argument(what + ": expected start:end:step, got '" + text + "'");
  const double a = netrel::detail::parse_double(text.substr(0, first), what);
  const double b = netrel::detail::parse_double(text.substr(first + 1, second - first - 1), what);
  const double step = netrel::detail::parse_double(text.substr(second + 1), what);
  return make_grid(a, b, step);
}

inline std::vector<double> parse_json_numbers(const std::string& text, const std::string& what) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(what + " is not valid JSON: " + e.what());
  }
  return netrel::detail::number_array<double>(j, what);
}

inline std::vector<double> probabilities_at(const std::vector<double>& rates, double t) {
  return evaluate_profile(EdgeReliabilityProfile::exponential(rates), t);
}

inline Json metadata(const std::string& command) {
  return {{"schema_version", kSchemaVersion},
          {"command", command},
          {"seed", nullptr},
          {"threshold_rule", nullptr},
          {"M_c", nullptr}};
}

inline Json graph_summary(const Graph& g) {
  return {{"nodes", g.node_count()}, {"edges", g.edge_count()}};
}

// Options that describe a reliability model: graph, edge profile, threshold
// rule and time grid, either from a scenario file or from flags (flags win).
struct ModelOptions {
  std::string scenario;
  std::string graph;
  std::size_t edges = 0;
  std::string rates_file;
  double rate = 0.0;
  std::string pc_rule;
  std::string dist;
  double start = 0.0;
  double end = 0.0;
  double step = 0.0;
  std::string format;
  std::uint64_t seed = 0;

  CLI::App* app = nullptr;

  void attach(CLI::App* sub, bool with_grid) {
    app = sub;
    sub->add_option("--scenario", scenario, "Scenario JSON file")->check(CLI::ExistingFile);
    sub->add_option("--graph", graph, "Edge-list file ('u v' or 'u v rate' per line)");
    sub->add_option("--edges", edges, "Abstract edge count N (no concrete graph)");
    sub->add_option("--rates", rates_file, "File of per-edge decay rates, in edge order");
    sub->add_option("--rate", rate, "Shared exponential decay rate for all edges");
    sub->add_option("--pc-rule", pc_rule, "Threshold rule: moment | mean-inverse | value:<x> | distribution");
    sub->add_option("--dist", dist, "Degree distribution JSON for the 'distribution' rule");
    sub->add_option("--seed", seed, "Seed for generated graphs (default 0)");
    sub->add_option("--format", format, "Output format: json | csv")->check(CLI::IsMember({"json", "csv"}));
    if (with_grid) {
      sub->add_option("--start", start, "Grid start time (default 0)");
      sub->add_option("--end", end, "Grid end time (default 15)");
      sub->add_option("--step", step, "Grid step (default 0.1)");
    }
  }

  bool given(const std::string& name) const {
    const CLI::Option* opt = app->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  }

  Scenario build() const {
    Scenario s;
    bool have_graph = false;
    if (given("--scenario")) {
      s = read_scenario(scenario);
      have_graph = true;
    }
    if (given("--graph") && given("--edges")) throw std::invalid_argument("give either --graph or --edges, not both");
    if (given("--graph")) {
      s.graph = EdgeListSource{graph};
      have_graph = true;
    }
    if (given("--edges")) {
      s.graph = EdgeCountSource{edges};
      have_graph = true;
    }
    if (!have_graph) throw std::invalid_argument("no graph: give --graph, --edges or --scenario");
    if (given("--rate") && given("--rates")) throw std::invalid_argument("give either --rate or --rates, not both");
    if (given("--rate")) s.profile = ProfileSpec{rate, std::nullopt};
    if (given("--rates")) s.profile = ProfileSpec{std::nullopt, read_number_list(rates_file, "rates file")};
    if (given("--pc-rule")) s.threshold = parse_threshold_rule(pc_rule);
    if (given("--dist")) {
      if (!given("--pc-rule")) s.threshold.kind = ThresholdRule::Kind::Distribution;
      s.threshold.distribution = distribution_from_string(dist);
    }
    if (given("--start")) s.grid.start = start;
    if (given("--end")) {
      s.grid.end = end;
      s.grid.end_given = true;
    }
    if (given("--step")) s.grid.step = step;
    if (given("--format")) s.output = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
    if (given("--seed")) s.seed = seed;
    validate(s);
    return s;
  }
};

// A scenario made concrete: realized graph, threshold and assessment config.
struct Model {
  Scenario scenario;
  RealizedModel realized;
  ResolvedThreshold threshold;
  AssessmentConfig config;

  Json describe(const std::string& command) const {
    Json j = metadata(command);
    if (realized.stochastic) j["seed"] = scenario.seed;
    j["threshold_rule"] = scenario.threshold.name();
    j["threshold_method"] = threshold.method;
    j["M_c"] = config.M_c;
    j["N"] = config.N;
    j["p_c"] = config.p_c;
    if (realized.graph) j["graph"] = graph_summary(*realized.graph);
    if (realized.erasure)
      j["erasure"] = {{"self_loops", realized.erasure->self_loops}, {"multi_edges", realized.erasure->multi_edges}};
    j["scenario"] = to_json(scenario);
    return j;
  }
};

inline Model build_model(Scenario s) {
  Model m;
  m.scenario = std::move(s);
  m.realized = realize(m.scenario);
  m.threshold = resolve_threshold(m.scenario.threshold, m.realized);
  m.config = make_config(m.threshold.report, m.realized.N);
  return m;
}

// Edge probabilities for commands that evaluate one graph state: a common
// --p, an explicit --probs vector, or decay rates evaluated at --time.
struct ProbabilityOptions {
  double p = 0.0;
  std::string probs;
  std::string rates_file;
  double time = 0.0;
  CLI::App* app = nullptr;

  void attach(CLI::App* sub) {
    app = sub;
    sub->add_option("--p", p, "Common edge probability");
    sub->add_option("--probs", probs, "Per-edge probabilities as a JSON array");
    sub->add_option("--rates", rates_file, "File of per-edge decay rates (with --time)");
    sub->add_option("--time", time, "Time at which decay rates are evaluated");
  }

  bool homogeneous() const { return app->count("--p") > 0; }

  std::vector<double> resolve(const EdgeListData& data) const {
    const int given = static_cast<int>(app->count("--p") > 0) + static_cast<int>(app->count("--probs") > 0) +
                      static_cast<int>(app->count("--time") > 0);
    if (given != 1) throw std::invalid_argument("give exactly one of --p, --probs or --time");
    const std::size_t m = data.graph.edge_count();
    std::vector<double> out;
    if (app->count("--p")) {
      check_probability(p, "--p");
      out.assign(m, p);
    } else if (app->count("--probs")) {
      out = parse_json_numbers(probs, "--probs");
    } else {
      std::vector<double> rates;
      if (app->count("--rates")) rates = read_number_list(rates_file, "rates file");
      else if (data.rates) rates = *data.rates;
      else throw std::invalid_argument("--time needs decay rates (--rates or a third edge-list column)");
      if (rates.size() != m)
        throw std::invalid_argument("got " + std::to_string(rates.size()) + " rates for " + std::to_string(m) +
                                    " edges");
      out = probabilities_at(rates, time);
    }
    check_edge_probabilities(data.graph, out);
    return out;
  }
};

inline void write_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

}  // namespace detail

/// Runs the command line `args` (without the program name). Output goes to
/// `out` (or the file named by --out), diagnostics to `err`.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Percolation-based network reliability assessment", "netrel"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out_path;
  app.add_option("--out", out_path, "Write output to this file instead of stdout");

  std::ostringstream buffer;
  std::function<void()> action;

  // exact
  auto* exact = app.add_subcommand("exact", "Exact all-terminal reliability and F-coefficients");
  std::string exact_graph;
  std::string exact_method = "enumeration";
  std::size_t exact_cap = kDefaultEnumerationCap;
  ProbabilityOptions exact_probs;
  exact->add_option("--graph", exact_graph, "Edge-list file")->required();
  exact->add_option("--method", exact_method, "enumeration | factoring")
      ->check(CLI::IsMember({"enumeration", "factoring"}));
  exact->add_option("--cap", exact_cap, "Largest edge count for enumeration (at most 62)");
  exact_probs.attach(exact);
  exact->callback([&] {
    action = [&] {
      const auto data = read_edge_list(exact_graph);
      const auto probs = exact_probs.resolve(data);
      Json j = metadata("exact");
      j["graph"] = graph_summary(data.graph);
      j["method"] = exact_method;
      if (exact_method == "factoring") {
        j["reliability"] = reliability_factoring(data.graph, probs);
      } else {
        j["reliability"] = reliability_heterogeneous(data.graph, probs, exact_cap);
        if (exact_probs.homogeneous()) {
          const auto f = f_coefficients(data.graph, exact_cap);
          j["f_coefficients"] = f.counts;
          j["reliability_f_form"] = reliability_homogeneous(f, probs.empty() ? 1.0 : probs.front());
        }
      }
      if (exact_probs.homogeneous()) j["p"] = exact_probs.p;
      write_json(buffer, j);
    };
  });

  // threshold
  auto* threshold = app.add_subcommand("threshold", "Bond-percolation threshold of a degree distribution");
  std::string th_dist;
  std::string th_graph;
  std::string th_degrees;
  std::string th_scan;
  double th_pe = 0.0;
  std::size_t th_edges = 0;
  threshold->add_option("--dist", th_dist, "Degree distribution JSON, e.g. '{\"kind\":\"poisson\",\"lambda\":4}'");
  threshold->add_option("--graph", th_graph, "Edge-list file (empirical degrees)");
  threshold->add_option("--degrees", th_degrees, "Degree sequence as a JSON array");
  threshold->add_option("--scan-gamma", th_scan, "Scan zeta(g-1)/(zeta(g-2)-zeta(g-1)) over start:end:step (CSV)");
  threshold->add_option("--pe", th_pe, "Also solve the fixed point for this edge probability");
  threshold->add_option("--edges", th_edges, "Edge count N, to report M_c = floor(p_c N)");
  threshold->callback([&] {
    action = [&] {
      if (threshold->count("--scan-gamma")) {
        if (threshold->count("--dist") || threshold->count("--graph") || threshold->count("--degrees"))
          throw std::invalid_argument("--scan-gamma takes no distribution or graph");
        buffer << "gamma,p_c\n";
        for (double g : parse_range(th_scan, "--scan-gamma"))
          buffer << format_number(g) << ',' << format_number(threshold_zeta(g).p_c) << '\n';
        return;
      }
      const int sources = static_cast<int>(threshold->count("--dist") > 0) +
                          static_cast<int>(threshold->count("--graph") > 0) +
                          static_cast<int>(threshold->count("--degrees") > 0);
      if (sources != 1) throw std::invalid_argument("give exactly one of --dist, --graph or --degrees");
      Json j = metadata("threshold");
      DegreeDistribution d = Poisson{1.0};
      FamilyThreshold result;
      if (threshold->count("--dist")) {
        d = distribution_from_string(th_dist);
        result = family_threshold(d);
        j["threshold_rule"] = "distribution";
      } else {
        std::vector<int> degrees;
        if (threshold->count("--graph")) {
          degrees = degree_sequence(read_edge_list(th_graph).graph);
        } else {
          for (double k : parse_json_numbers(th_degrees, "--degrees")) {
            if (k != std::floor(k)) throw std::invalid_argument("--degrees: expected integers");
            degrees.push_back(static_cast<int>(k));
          }
        }
        d = Empirical::from_degrees(degrees);
        result = {bond_threshold(d), "moments"};
        j["threshold_rule"] = "moment";
        j["degrees"] = degrees;
      }
      j["distribution"] = to_json(d);
      j["method"] = result.method;
      j.update(to_json(result.report));
      const Moments mo = moments(d);
      j["moments"] = {{"mean", mo.mean_divergent ? Json(nullptr) : Json(mo.mean)},
                      {"second_moment", mo.second_moment_divergent ? Json(nullptr) : Json(mo.second_moment)},
                      {"mean_divergent", mo.mean_divergent},
                      {"second_moment_divergent", mo.second_moment_divergent}};
      if (result.method != "moments") {
        try {
          j["p_c_moments"] = bond_threshold(d).p_c;
        } catch (const Error&) {
          j["p_c_moments"] = nullptr;
        }
      }
      if (threshold->count("--edges")) {
        j["N"] = th_edges;
        j["M_c"] = make_config(result.report, th_edges).M_c;
      }
      if (threshold->count("--pe")) {
        const auto fp = solve_fixed_point(d, th_pe);
        j["fixed_point"] = {{"p_e", th_pe},
                            {"root", fp.root},
                            {"nontrivial", fp.nontrivial},
                            {"giant_edge_fraction", 1.0 - fp.root},
                            {"iterations", fp.iterations},
                            {"residual", fp.residual},
                            {"used_bisection", fp.used_bisection}};
      }
      write_json(buffer, j);
    };
  });

  // assess
  auto* assess = app.add_subcommand("assess", "Rel_c, its Poisson approximation and the Le Cam bound");
  ModelOptions assess_model;
  double assess_time = 0.0;
  std::string assess_probs;
  bool assess_with_exact = false;
  assess_model.attach(assess, false);
  assess->add_option("--time", assess_time, "Evaluation time (default 0)");
  assess->add_option("--probs", assess_probs, "Explicit per-edge probabilities as a JSON array");
  assess->add_flag("--with-exact", assess_with_exact, "Also report exact all-terminal reliability");
  assess->callback([&] {
    action = [&] {
      const bool explicit_probs = assess->count("--probs") > 0;
      std::vector<double> probs;
      if (explicit_probs) {
        if (assess->count("--time")) throw std::invalid_argument("--probs and --time are exclusive");
        probs = parse_json_numbers(assess_probs, "--probs");
      }
      Scenario s;
      const bool has_graph_flag =
          assess->count("--graph") || assess->count("--edges") || assess->count("--scenario");
      if (!has_graph_flag && explicit_probs) {
        // The probability vector alone fixes N.
        ModelOptions o = assess_model;
        s.graph = EdgeCountSource{probs.size()};
        if (o.given("--pc-rule")) s.threshold = parse_threshold_rule(o.pc_rule);
        if (o.given("--dist")) {
          if (!o.given("--pc-rule")) s.threshold.kind = ThresholdRule::Kind::Distribution;
          s.threshold.distribution = distribution_from_string(o.dist);
        }
        validate(s);
      } else {
        s = assess_model.build();
      }
      const Model m = build_model(s);
      if (!explicit_probs) probs = evaluate_profile(make_profile(s.profile, m.realized), assess_time);
      if (probs.size() != m.config.N)
        throw std::invalid_argument("got " + std::to_string(probs.size()) + " probabilities for N = " +
                                    std::to_string(m.config.N) + " edges");
      Json j = m.describe("assess");
      if (!explicit_probs) j["time"] = assess_time;
      j["rel_c_exact"] = rel_c_heterogeneous(probs, m.config.M_c);
      const auto approx = rel_c_poisson_approx(probs, m.config.M_c);
      j["rel_c_poisson"] = approx.approx;
      j["mu"] = approx.mu;
      j["le_cam_bound"] = le_cam_bound(probs);
      if (assess_with_exact) {
        if (!m.realized.graph) throw std::invalid_argument("--with-exact needs a concrete graph");
        const double rel = reliability_heterogeneous(*m.realized.graph, probs);
        j["all_terminal_reliability"] = rel;
        j["rel_c_minus_all_terminal"] = j["rel_c_exact"].get<double>() - rel;
      }
      write_json(buffer, j);
    };
  });

  // curve
  auto* curve_cmd = app.add_subcommand("curve", "Rel_c(t) on a time grid (CSV 't,rel_c' by default)");
  ModelOptions curve_model;
  bool curve_density = false;
  curve_model.attach(curve_cmd, true);
  curve_cmd->add_flag("--density", curve_density, "Add the failure density f(t) = d(1 - Rel_c)/dt");
  curve_cmd->callback([&] {
    action = [&] {
      Scenario s = curve_model.build();
      if (!s.output) s.output = OutputFormat::Csv;
      const Model m = build_model(s);
      const auto profile = make_profile(s.profile, m.realized);
      const auto curve = reliability_curve(profile, m.config, make_grid(s.grid.start, s.grid.end, s.grid.step));
      std::vector<double> density;
      if (curve_density) density = failure_density(curve);
      if (*s.output == OutputFormat::Csv) {
        buffer << (curve_density ? "t,rel_c,failure_density\n" : "t,rel_c\n");
        for (std::size_t i = 0; i < curve.times.size(); ++i) {
          buffer << format_number(curve.times[i]) << ',' << format_number(curve.values[i]);
          if (curve_density) buffer << ',' << format_number(density[i]);
          buffer << '\n';
        }
        return;
      }
      Json j = m.describe("curve");
      j["t"] = curve.times;
      j["rel_c"] = curve.values;
      if (curve_density) j["failure_density"] = density;
      write_json(buffer, j);
    };
  });

  // lifetime
  auto* lifetime = app.add_subcommand("lifetime", "Lifetime by threshold crossing and by integral of Rel_c");
  ModelOptions life_model;
  double life_horizon = 0.0;
  life_model.attach(lifetime, true);
  lifetime->add_option("--horizon", life_horizon, "Search horizon for the crossing (default from decay rates)");
  lifetime->callback([&] {
    action = [&] {
      Scenario s = life_model.build();
      if (!s.output) s.output = OutputFormat::Json;
      if (*s.output != OutputFormat::Json) throw std::invalid_argument("lifetime emits JSON only");
      const Model m = build_model(s);
      const auto profile = make_profile(s.profile, m.realized);
      CrossingOptions opt;
      if (lifetime->count("--horizon")) opt.horizon = life_horizon;
      const auto crossing = lifetime_threshold_crossing(profile, m.config, opt);
      const double end = s.grid.end_given ? s.grid.end : std::max(s.grid.start, profile.default_horizon());
      const auto curve = reliability_curve(profile, m.config, make_grid(s.grid.start, end, s.grid.step));
      const auto integral = lifetime_integral(curve);
      Json j = m.describe("lifetime");
      j["lifetime_crossing"] = crossing.rel_c_crossing;
      j["edge_level_crossing"] = crossing.edge_level_crossing ? Json(*crossing.edge_level_crossing) : Json(nullptr);
      j["lifetime_integral"] = integral.value;
      j["integral_truncation_residual"] = integral.truncation_residual;
      j["integral_decayed"] = integral.decayed;
      j["integral_grid"] = {{"start", s.grid.start}, {"end", end}, {"step", s.grid.step}};
      const double at_T = rel_c_at(profile, m.config, integral.value);
      j["rel_c_at_T"] = at_T;
      j["rel_c_at_T_minus_p_c"] = at_T - m.config.p_c;
      write_json(buffer, j);
    };
  });

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of all-terminal reliability");
  std::string sim_graph;
  std::uint64_t sim_trials = 10000;
  std::uint64_t sim_seed = 0;
  bool sim_exact = false;
  ProbabilityOptions sim_probs;
  simulate->add_option("--graph", sim_graph, "Edge-list file")->required();
  simulate->add_option("--trials", sim_trials, "Number of trials (default 10000)");
  simulate->add_option("--seed", sim_seed, "Seed (default 0)");
  simulate->add_flag("--exact", sim_exact, "Also report the exact value by enumeration");
  sim_probs.attach(simulate);
  simulate->callback([&] {
    action = [&] {
      const auto data = read_edge_list(sim_graph);
      const auto probs = sim_probs.resolve(data);
      const auto r = estimate_reliability(data.graph, probs, sim_trials, sim_seed);
      Json j = metadata("simulate");
      j["seed"] = sim_seed;
      j["rng"] = SplitMix64::kAlgorithm;
      j["graph"] = graph_summary(data.graph);
      j["estimate"] = r.estimate;
      j["standard_error"] = r.standard_error;
      j["trials"] = r.trials;
      if (sim_exact) {
        const double exact_value = reliability_heterogeneous(data.graph, probs);
        j["exact"] = exact_value;
        j["z_score"] = r.standard_error > 0.0 ? Json((r.estimate - exact_value) / r.standard_error) : Json(nullptr);
      }
      write_json(buffer, j);
    };
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Inverse-percolation sweep: largest component versus removed fraction");
  std::string sw_graph;
  std::string sw_dist;
  std::size_t sw_nodes = 0;
  std::string sw_fractions = "0:1:0.01";
  std::uint64_t sw_trials = 10;
  std::uint64_t sw_seed = 0;
  double sw_giant = 0.05;
  std::string sw_format = "json";
  sweep->add_option("--graph", sw_graph, "Edge-list file");
  sweep->add_option("--dist", sw_dist, "Degree distribution JSON for a configuration-model graph");
  sweep->add_option("--nodes", sw_nodes, "Node count for the generated graph");
  sweep->add_option("--fractions", sw_fractions, "Removal fractions start:end:step (default 0:1:0.01)");
  sweep->add_option("--trials", sw_trials, "Trials per fraction (default 10)");
  sweep->add_option("--seed", sw_seed, "Seed (default 0)");
  sweep->add_option("--giant-threshold", sw_giant, "Largest-component fraction marking disappearance (0.05)");
  sweep->add_option("--format", sw_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  sweep->callback([&] {
    action = [&] {
      const bool from_graph = sweep->count("--graph") > 0;
      if (from_graph == (sweep->count("--dist") > 0))
        throw std::invalid_argument("give exactly one of --graph or --dist");
      Json j = metadata("sweep");
      std::optional<Graph> g;
      if (from_graph) {
        g = read_edge_list(sw_graph).graph;
      } else {
        if (!sweep->count("--nodes")) throw std::invalid_argument("--dist needs --nodes");
        const auto d = distribution_from_string(sw_dist);
        ErasureStats stats;
        g = generate_configuration_model(sample_degrees(d, sw_nodes, sw_seed), sw_seed + 1, &stats);
        j["distribution"] = to_json(d);
        j["erasure"] = {{"self_loops", stats.self_loops}, {"multi_edges", stats.multi_edges}};
      }
      check_probability(sw_giant, "--giant-threshold");
      const auto result =
          inverse_percolation_sweep(*g, parse_range(sw_fractions, "--fractions"), sw_trials, sw_seed, sw_giant);
      if (sw_format == "csv") {
        buffer << "g,mean_largest_fraction\n";
        for (std::size_t i = 0; i < result.fractions.size(); ++i)
          buffer << format_number(result.fractions[i]) << ',' << format_number(result.mean_largest_fraction[i])
                 << '\n';
        return;
      }
      j["seed"] = sw_seed;
      j["rng"] = SplitMix64::kAlgorithm;
      j["graph"] = graph_summary(*g);
      j["trials"] = sw_trials;
      j["giant_threshold"] = sw_giant;
      j["fractions"] = result.fractions;
      j["mean_largest_fraction"] = result.mean_largest_fraction;
      j["g_c_empirical"] = result.g_c ? Json(*result.g_c) : Json(nullptr);
      try {
        const auto theory = bond_threshold(Empirical::from_degrees(degree_sequence(*g)));
        j["threshold_rule"] = "moment";
        j["p_c_theory"] = theory.p_c;
        j["g_c_theory"] = theory.g_c();
        if (theory.p_c <= 1.0) j["M_c"] = critical_edge_count(g->edge_count(), theory.p_c);
      } catch (const Error&) {
        j["p_c_theory"] = nullptr;
        j["g_c_theory"] = nullptr;
      }
      write_json(buffer, j);
    };
  });

  // generate
  auto* generate = app.add_subcommand("generate", "Emit a random graph as an edge list");
  std::string gen_model = "configuration";
  std::string gen_dist;
  std::size_t gen_nodes = 0;
  std::size_t gen_target = 0;
  double gen_p = 0.0;
  std::uint64_t gen_seed = 0;
  generate->add_option("--model", gen_model, "configuration | binomial")
      ->check(CLI::IsMember({"configuration", "binomial"}));
  generate->add_option("--dist", gen_dist, "Degree distribution JSON (configuration model)");
  generate->add_option("--nodes", gen_nodes, "Node count");
  generate->add_option("--target-edges", gen_target, "Draw degrees until about this many edges");
  generate->add_option("--p", gen_p, "Pair probability (binomial model)");
  generate->add_option("--seed", gen_seed, "Seed (default 0)");
  generate->callback([&] {
    action = [&] {
      std::optional<Graph> g;
      std::ostringstream header;
      header << "# netrel generate model=" << gen_model << " seed=" << gen_seed;
      if (gen_model == "binomial") {
        if (!generate->count("--nodes") || !generate->count("--p"))
          throw std::invalid_argument("binomial model needs --nodes and --p");
        g = generate_inhomogeneous(gen_nodes, gen_p, gen_seed);
        header << " p=" << format_number(gen_p);
      } else {
        if (!generate->count("--dist")) throw std::invalid_argument("configuration model needs --dist");
        if (generate->count("--nodes") == generate->count("--target-edges"))
          throw std::invalid_argument("configuration model needs exactly one of --nodes or --target-edges");
        const auto d = distribution_from_string(gen_dist);
        const auto degrees = generate->count("--nodes") ? sample_degrees(d, gen_nodes, gen_seed)
                                                        : sample_degrees_for_edges(d, gen_target, gen_seed);
        ErasureStats stats;
        g = generate_configuration_model(degrees, gen_seed + 1, &stats);
        header << " distribution=" << to_json(d).dump() << " self_loops_erased=" << stats.self_loops
               << " multi_edges_erased=" << stats.multi_edges;
      }
      header << " nodes=" << g->node_count() << " edges=" << g->edge_count() << '\n';
      buffer << header.str();
      write_edge_list(buffer, *g);
    };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "netrel: " << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (action) action();
  } catch (const Error& e) {
    err << "netrel: error: " << e.what() << "\n";
    return kComputationError;
  } catch (const std::invalid_argument& e) {
    err << "netrel: invalid input: " << e.what() << "\n";
    return kUsageError;
  } catch (const Json::exception& e) {
    err << "netrel: invalid input: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "netrel: error: " << e.what() << "\n";
    return kComputationError;
  }

  if (!out_path.empty()) {
    std::ofstream file(out_path);
    if (!file) {
      err << "netrel: cannot write '" << out_path << "'\n";
      return kUsageError;
    }
    file << buffer.str();
  } else {
    out << buffer.str();
  }
  return kOk;
}

}  // namespace netrel::cli
