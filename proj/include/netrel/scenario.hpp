#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "netrel/assessment.hpp"
#include "netrel/edge_list.hpp"
#include "netrel/json_io.hpp"
#include "netrel/lifetime.hpp"
#include "netrel/percolation.hpp"
#include "netrel/simulation.hpp"

namespace netrel {

// A scenario bundles everything needed to reproduce one assessment run.
//
//   {
//     "graph":     {"edge_list": "five_node.edges"}
//                | {"generator": {"kind": "configuration", "distribution": {...},
//                                 "target_edges": 250}}           (or "nodes": n)
//                | {"generator": {"kind": "binomial", "nodes": 100, "p": 0.05}}
//                | {"edge_count": 250},
//     "profile":   {"shared_rate": 0.25} | {"rates": [...]} | {"rates_file": "five_node.rates"},
//     "threshold": "moment" | "mean-inverse" | "value:0.42"
//                | {"rule": "value", "value": 0.42}
//                | {"rule": "distribution", "distribution": {...}},
//     "grid":      {"start": 0, "end": 15, "step": 0.1},
//     "output":    "json" | "csv",                 (default depends on the command)
//     "seed":      0
//   }
//
// Only "graph" is required. Relative paths resolve against the scenario file.

struct EdgeListSource {
  std::string path;
};

struct GeneratorSource {
  std::string kind;  // "configuration" or "binomial"
  std::optional<DegreeDistribution> distribution;
  std::size_t target_edges = 0;
  std::size_t nodes = 0;
  double p = 0.0;
};

struct EdgeCountSource {
  std::size_t edges = 0;
};

using GraphSource = std::variant<EdgeListSource, GeneratorSource, EdgeCountSource>;

struct ProfileSpec {
  std::optional<double> shared_rate;
  std::optional<std::vector<double>> rates;
};

struct ThresholdRule {
  enum class Kind { Moment, MeanInverse, Value, Distribution };
  Kind kind = Kind::Moment;
  double value = 0.0;
  std::optional<DegreeDistribution> distribution;

  std::string name() const {
    switch (kind) {
      case Kind::Moment: return "moment";
      case Kind::MeanInverse: return "mean-inverse";
      case Kind::Value: return "value:" + format_number(value);
      case Kind::Distribution: return "distribution";
    }
    return "moment";
  }
};

struct GridSpec {
  double start = 0.0;
  double end = 15.0;
  double step = 0.1;
  bool end_given = false;
};

enum class OutputFormat { Json, Csv };

struct Scenario {
  GraphSource graph = EdgeCountSource{};
  ProfileSpec profile;
  ThresholdRule threshold;
  GridSpec grid;
  std::optional<OutputFormat> output;  // unset: the command's own default
  std::uint64_t seed = 0;
};

/// "moment", "mean-inverse", "value:<x>" or "distribution".
inline ThresholdRule parse_threshold_rule(const std::string& text) {
  ThresholdRule rule;
  if (text == "moment") {
    rule.kind = ThresholdRule::Kind::Moment;
  } else if (text == "mean-inverse") {
    rule.kind = ThresholdRule::Kind::MeanInverse;
  } else if (text == "distribution") {
    rule.kind = ThresholdRule::Kind::Distribution;
  } else if (text.rfind("value:", 0) == 0) {
    rule.kind = ThresholdRule::Kind::Value;
    rule.value = detail::parse_double(text.substr(6), "threshold rule");
    if (!(rule.value >= 0.0 && rule.value <= 1.0))
      throw std::invalid_argument("threshold value must lie in [0,1], got " + text.substr(6));
  } else {
    throw std::invalid_argument("unknown threshold rule '" + text +
                                "' (expected moment, mean-inverse, value:<x> or distribution)");
  }
  return rule;
}

namespace detail {

inline std::string resolve_path(const std::string& path, const std::filesystem::path& base) {
  const std::filesystem::path p(path);
  if (p.is_absolute() || base.empty()) return path;
  return (base / p).string();
}

inline std::size_t size_field(const Json& obj, const std::string& key, const std::string& where) {
  const Json& v = require_field(obj, key, where);
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw std::invalid_argument(where + "." + key + ": expected a nonnegative integer");
  return v.get<std::size_t>();
}

inline GraphSource parse_graph_source(const Json& g, const std::filesystem::path& base) {
  if (!g.is_object()) throw std::invalid_argument("graph: expected an object");
  const int given = static_cast<int>(g.contains("edge_list")) + static_cast<int>(g.contains("generator")) +
                    static_cast<int>(g.contains("edge_count"));
  if (given != 1)
    throw std::invalid_argument("graph: exactly one of 'edge_list', 'generator' or 'edge_count' is required");
  if (g.contains("edge_list")) {
    if (!g["edge_list"].is_string()) throw std::invalid_argument("graph.edge_list: expected a path string");
    return EdgeListSource{resolve_path(g["edge_list"].get<std::string>(), base)};
  }
  if (g.contains("edge_count")) return EdgeCountSource{size_field(g, "edge_count", "graph")};

  const Json& gen = g["generator"];
  const std::string where = "graph.generator";
  const Json& kind = require_field(gen, "kind", where);
  if (!kind.is_string()) throw std::invalid_argument(where + ".kind: expected a string");
  GeneratorSource src;
  src.kind = kind.get<std::string>();
  if (src.kind == "configuration") {
    src.distribution = distribution_from_json(require_field(gen, "distribution", where), where + ".distribution");
    const bool by_edges = gen.contains("target_edges");
    if (by_edges == gen.contains("nodes"))
      throw std::invalid_argument(where + ": exactly one of 'target_edges' or 'nodes' is required");
    if (by_edges) src.target_edges = size_field(gen, "target_edges", where);
    else src.nodes = size_field(gen, "nodes", where);
  } else if (src.kind == "binomial") {
    src.nodes = size_field(gen, "nodes", where);
    src.p = number_field(gen, "p", where);
    check_probability(src.p, where + ".p");
  } else {
    throw std::invalid_argument(where + ".kind: unknown generator '" + src.kind +
                                "' (expected configuration or binomial)");
  }
  return src;
}

inline ThresholdRule parse_threshold_json(const Json& t) {
  if (t.is_string()) return parse_threshold_rule(t.get<std::string>());
  const Json& rule_value = require_field(t, "rule", "threshold");
  if (!rule_value.is_string()) throw std::invalid_argument("threshold.rule: expected a string");
  const auto name = rule_value.get<std::string>();
  ThresholdRule rule;
  if (name == "value") {
    rule.kind = ThresholdRule::Kind::Value;
    rule.value = number_field(t, "value", "threshold");
    if (!(rule.value >= 0.0 && rule.value <= 1.0))
      throw std::invalid_argument("threshold.value: must lie in [0,1], got " + format_number(rule.value));
  } else {
    rule = parse_threshold_rule(name);
    if (rule.kind == ThresholdRule::Kind::Distribution)
      rule.distribution = distribution_from_json(require_field(t, "distribution", "threshold"),
                                                 "threshold.distribution");
  }
  return rule;
}

}  // namespace detail

inline void validate(const Scenario& s) {
  if (!(s.grid.step > 0.0)) throw std::invalid_argument("grid.step: must be > 0");
  if (!(s.grid.start >= 0.0)) throw std::invalid_argument("grid.start: must be >= 0");
  if (!(s.grid.end >= s.grid.start)) throw std::invalid_argument("grid.end: must be >= grid.start");
  if (s.profile.shared_rate && s.profile.rates)
    throw std::invalid_argument("profile: give either 'shared_rate' or 'rates', not both");
  if (s.profile.shared_rate && !(*s.profile.shared_rate >= 0.0))
    throw std::invalid_argument("profile.shared_rate: must be >= 0");
  if (s.threshold.kind == ThresholdRule::Kind::Distribution && !s.threshold.distribution)
    throw std::invalid_argument("threshold: rule 'distribution' needs a distribution");
}

inline Scenario parse_scenario(const Json& j, const std::filesystem::path& base_dir = {}) {
  if (!j.is_object()) throw std::invalid_argument("scenario: expected a JSON object");
  static const char* const known[] = {"graph", "profile", "threshold", "grid", "output", "seed"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known))
      throw std::invalid_argument("scenario: unknown field '" + key + "'");
  }
  Scenario s;
  s.graph = detail::parse_graph_source(detail::require_field(j, "graph", "scenario"), base_dir);

  if (const auto it = j.find("profile"); it != j.end()) {
    const Json& p = *it;
    if (!p.is_object()) throw std::invalid_argument("profile: expected an object");
    const int given = static_cast<int>(p.contains("shared_rate")) + static_cast<int>(p.contains("rates")) +
                      static_cast<int>(p.contains("rates_file"));
    if (given != 1)
      throw std::invalid_argument("profile: exactly one of 'shared_rate', 'rates' or 'rates_file' is required");
    if (p.contains("shared_rate")) s.profile.shared_rate = detail::number_field(p, "shared_rate", "profile");
    if (p.contains("rates")) s.profile.rates = detail::number_array<double>(p["rates"], "profile.rates");
    if (p.contains("rates_file")) {
      if (!p["rates_file"].is_string()) throw std::invalid_argument("profile.rates_file: expected a path string");
      s.profile.rates =
          read_number_list(detail::resolve_path(p["rates_file"].get<std::string>(), base_dir), "rates file");
    }
  }

  if (const auto it = j.find("threshold"); it != j.end()) s.threshold = detail::parse_threshold_json(*it);

  if (const auto it = j.find("grid"); it != j.end()) {
    if (!it->is_object()) throw std::invalid_argument("grid: expected an object");
    if (it->contains("start")) s.grid.start = detail::number_field(*it, "start", "grid");
    if (it->contains("end")) {
      s.grid.end = detail::number_field(*it, "end", "grid");
      s.grid.end_given = true;
    }
    if (it->contains("step")) s.grid.step = detail::number_field(*it, "step", "grid");
  }

  if (const auto it = j.find("output"); it != j.end()) {
    const std::string format = it->is_string() ? it->get<std::string>() : "";
    if (format == "json") s.output = OutputFormat::Json;
    else if (format == "csv") s.output = OutputFormat::Csv;
    else throw std::invalid_argument("output: expected \"json\" or \"csv\"");
  }

  if (const auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0))
      throw std::invalid_argument("seed: expected a nonnegative integer");
    s.seed = it->get<std::uint64_t>();
  }
  validate(s);
  return s;
}

inline Scenario read_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument("scenario '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_scenario(j, std::filesystem::path(path).parent_path());
}

/// Echo of a scenario with every default filled in.
inline Json to_json(const Scenario& s) {
  Json graph;
  if (const auto* e = std::get_if<EdgeListSource>(&s.graph)) {
    graph = {{"edge_list", e->path}};
  } else if (const auto* c = std::get_if<EdgeCountSource>(&s.graph)) {
    graph = {{"edge_count", c->edges}};
  } else {
    const auto& g = std::get<GeneratorSource>(s.graph);
    Json gen = {{"kind", g.kind}};
    if (g.kind == "configuration") {
      gen["distribution"] = to_json(*g.distribution);
      if (g.target_edges > 0) gen["target_edges"] = g.target_edges;
      else gen["nodes"] = g.nodes;
    } else {
      gen["nodes"] = g.nodes;
      gen["p"] = g.p;
    }
    graph = {{"generator", gen}};
  }
  Json profile = nullptr;
  if (s.profile.shared_rate) profile = {{"shared_rate", *s.profile.shared_rate}};
  else if (s.profile.rates) profile = {{"rates", *s.profile.rates}};
  Json threshold = {{"rule", s.threshold.name()}};
  if (s.threshold.distribution) threshold["distribution"] = to_json(*s.threshold.distribution);
  return {{"graph", graph},
          {"profile", profile},
          {"threshold", threshold},
          {"grid", {{"start", s.grid.start}, {"end", s.grid.end}, {"step", s.grid.step}}},
          {"output", s.output ? Json(*s.output == OutputFormat::Json ? "json" : "csv") : Json(nullptr)},
          {"seed", s.seed}};
}

/// A scenario's graph source made concrete.
struct RealizedModel {
  std::optional<Graph> graph;  // absent for an abstract edge count
  std::size_t N = 0;
  std::optional<std::vector<double>> file_rates;  // rates carried by the edge list
  std::optional<ErasureStats> erasure;
  bool stochastic = false;
};

inline RealizedModel realize(const Scenario& s) {
  RealizedModel m;
  if (const auto* e = std::get_if<EdgeListSource>(&s.graph)) {
    auto data = read_edge_list(e->path);
    m.graph = std::move(data.graph);
    m.file_rates = std::move(data.rates);
  } else if (const auto* c = std::get_if<EdgeCountSource>(&s.graph)) {
    m.N = c->edges;
    return m;
  } else {
    const auto& g = std::get<GeneratorSource>(s.graph);
    m.stochastic = true;
    if (g.kind == "binomial") {
      m.graph = generate_inhomogeneous(g.nodes, g.p, s.seed);
    } else {
      const auto degrees = g.target_edges > 0 ? sample_degrees_for_edges(*g.distribution, g.target_edges, s.seed)
                                              : sample_degrees(*g.distribution, g.nodes, s.seed);
      ErasureStats stats;
      m.graph = generate_configuration_model(degrees, s.seed + 1, &stats);
      m.erasure = stats;
    }
  }
  m.N = m.graph->edge_count();
  return m;
}

struct ResolvedThreshold {
  ThresholdReport report;
  std::string method;
};

/// Applies the scenario's threshold rule to the realized model.
inline ResolvedThreshold resolve_threshold(const ThresholdRule& rule, const RealizedModel& m) {
  ResolvedThreshold out;
  switch (rule.kind) {
    case ThresholdRule::Kind::Value:
      out.report.p_c = rule.value;
      out.report.meaningful = rule.value > 0.0 && rule.value < 1.0;
      out.method = "value";
      return out;
    case ThresholdRule::Kind::Distribution: {
      auto f = family_threshold(*rule.distribution);
      out.report = f.report;
      out.method = f.method;
      return out;
    }
    case ThresholdRule::Kind::Moment:
    case ThresholdRule::Kind::MeanInverse:
      break;
  }
  if (!m.graph)
    throw std::invalid_argument("threshold rule '" + rule.name() +
                                "' needs a concrete graph; use value:<x> or distribution with edge_count");
  const auto degrees = degree_sequence(*m.graph);
  if (rule.kind == ThresholdRule::Kind::Moment) {
    out.report = bond_threshold(Empirical::from_degrees(degrees));
    out.method = "moments";
  } else {
    const double mean = 2.0 * static_cast<double>(m.graph->edge_count()) / static_cast<double>(degrees.size());
    if (!(mean > 0.0)) throw NoGiantComponentError("graph has no edges: mean degree is 0");
    out.report.p_c = 1.0 / mean;
    out.report.meaningful = out.report.p_c > 0.0 && out.report.p_c < 1.0;
    out.method = "mean_inverse";
  }
  return out;
}

/// Edge reliability profile for the model: explicit spec first, then rates
/// carried by the edge list.
inline EdgeReliabilityProfile make_profile(const ProfileSpec& spec, const RealizedModel& m) {
  if (spec.shared_rate) return EdgeReliabilityProfile::shared_exponential(m.N, *spec.shared_rate);
  const std::vector<double>* rates = spec.rates ? &*spec.rates : (m.file_rates ? &*m.file_rates : nullptr);
  if (!rates) throw std::invalid_argument("no edge reliability profile: give a shared rate or per-edge rates");
  if (rates->size() != m.N)
    throw std::invalid_argument("got " + std::to_string(rates->size()) + " rates for " + std::to_string(m.N) +
                                " edges");
  return EdgeReliabilityProfile::exponential(*rates);
}

/// Assessment configuration; a threshold above 1 admits no percolating phase.
inline AssessmentConfig make_config(const ThresholdReport& r, std::size_t N) {
  if (r.p_c > 1.0)
    throw NoGiantComponentError("threshold p_c = " + format_number(r.p_c) +
                                " exceeds 1: no giant component for any edge probability");
  return make_assessment_config(N, r.p_c);
}

}  // namespace netrel
