#pragma once

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "netrel/degree_models.hpp"
#include "netrel/percolation.hpp"

namespace netrel {

using Json = nlohmann::json;

/// Version of the JSON output and scenario schemas.
inline constexpr const char* kSchemaVersion = "1.0";

namespace detail {

inline const Json& require_field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw std::invalid_argument(where + ": expected a JSON object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw std::invalid_argument(where + "." + key + ": required field is missing");
  return *it;
}

inline double number_field(const Json& obj, const std::string& key, const std::string& where) {
  const Json& v = require_field(obj, key, where);
  if (!v.is_number()) throw std::invalid_argument(where + "." + key + ": expected a number");
  return v.get<double>();
}

inline int integer_field(const Json& obj, const std::string& key, const std::string& where) {
  const Json& v = require_field(obj, key, where);
  if (!v.is_number_integer()) throw std::invalid_argument(where + "." + key + ": expected an integer");
  return v.get<int>();
}

template <typename T>
std::vector<T> number_array(const Json& v, const std::string& where) {
  if (!v.is_array()) throw std::invalid_argument(where + ": expected an array of numbers");
  std::vector<T> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.is_number()) throw std::invalid_argument(where + ": expected an array of numbers");
    if constexpr (std::is_integral_v<T>) {
      if (!x.is_number_integer()) throw std::invalid_argument(where + ": expected integers");
    }
    out.push_back(x.get<T>());
  }
  return out;
}

}  // namespace detail

/// Parses {"kind": ..., parameters}. Kinds: poisson{lambda},
/// power_cutoff{gamma, kappa (number, "inf" or absent for no cutoff)},
/// zeta{gamma}, truncated_power{gamma, k_min, k_max},
/// empirical{degrees} or empirical{pmf}.
inline DegreeDistribution distribution_from_json(const Json& j, const std::string& where = "distribution") {
  const Json& kind_value = detail::require_field(j, "kind", where);
  if (!kind_value.is_string()) throw std::invalid_argument(where + ".kind: expected a string");
  const auto kind = kind_value.get<std::string>();
  DegreeDistribution d = Poisson{1.0};
  if (kind == "poisson") {
    d = Poisson{detail::number_field(j, "lambda", where)};
  } else if (kind == "power_cutoff") {
    double kappa = std::numeric_limits<double>::infinity();
    if (const auto it = j.find("kappa"); it != j.end() && !it->is_null()) {
      if (it->is_string() && (it->get<std::string>() == "inf" || it->get<std::string>() == "infinity")) {
        kappa = std::numeric_limits<double>::infinity();
      } else if (it->is_number()) {
        kappa = it->get<double>();
      } else {
        throw std::invalid_argument(where + ".kappa: expected a number or \"inf\"");
      }
    }
    d = PowerLawCutoff{detail::number_field(j, "gamma", where), kappa};
  } else if (kind == "zeta") {
    d = Zeta{detail::number_field(j, "gamma", where)};
  } else if (kind == "truncated_power") {
    d = TruncatedPowerLaw{detail::number_field(j, "gamma", where), detail::integer_field(j, "k_min", where),
                          detail::integer_field(j, "k_max", where)};
  } else if (kind == "empirical") {
    const bool has_degrees = j.contains("degrees");
    const bool has_pmf = j.contains("pmf");
    if (has_degrees == has_pmf)
      throw std::invalid_argument(where + ": empirical needs exactly one of 'degrees' or 'pmf'");
    if (has_degrees) d = Empirical::from_degrees(detail::number_array<int>(j["degrees"], where + ".degrees"));
    else d = Empirical{detail::number_array<double>(j["pmf"], where + ".pmf")};
  } else {
    throw std::invalid_argument(where + ".kind: unknown distribution '" + kind +
                                "' (expected poisson, power_cutoff, zeta, truncated_power or empirical)");
  }
  validate(d);
  return d;
}

inline DegreeDistribution distribution_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(std::string("distribution is not valid JSON: ") + e.what());
  }
  return distribution_from_json(j);
}

inline Json to_json(const DegreeDistribution& d) {
  return std::visit(
      [](const auto& v) -> Json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Empirical>) {
          return {{"kind", "empirical"}, {"pmf", v.pmf}};
        } else if constexpr (std::is_same_v<T, Poisson>) {
          return {{"kind", "poisson"}, {"lambda", v.lambda}};
        } else if constexpr (std::is_same_v<T, PowerLawCutoff>) {
          Json kappa = std::isinf(v.kappa) ? Json("inf") : Json(v.kappa);
          return {{"kind", "power_cutoff"}, {"gamma", v.gamma}, {"kappa", kappa}};
        } else if constexpr (std::is_same_v<T, Zeta>) {
          return {{"kind", "zeta"}, {"gamma", v.gamma}};
        } else {
          return {{"kind", "truncated_power"}, {"gamma", v.gamma}, {"k_min", v.k_min}, {"k_max", v.k_max}};
        }
      },
      d);
}

inline Json to_json(const ThresholdReport& r) {
  return {{"p_c", r.p_c},
          {"g_c", r.g_c()},
          {"vanishing", r.vanishing},
          {"molloy_reed_satisfied", r.molloy_reed_satisfied},
          {"second_moment_divergent", r.second_moment_divergent},
          {"meaningful", r.meaningful}};
}

/// Shortest decimal text that reads back to the same double.
inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc{}) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

}  // namespace netrel
