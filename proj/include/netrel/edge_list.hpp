#pragma once

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "netrel/graph.hpp"

namespace netrel {

// Parsed edge-list text. Lines are "u v" or "u v rate"; '#' starts a comment.
// When every label is a nonnegative integer the labels are used as node ids
// directly (n = max label + 1). Otherwise labels are remapped to 0..n-1 in
// first-seen order and `labels[i]` names node i.
struct EdgeListData {
  Graph graph;
  std::optional<std::vector<double>> rates;
  std::vector<std::string> labels;
  bool remapped = false;
};

namespace detail {

inline std::optional<long long> parse_nonnegative_int(const std::string& token) {
  long long value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || value < 0) return std::nullopt;
  return value;
}

inline double parse_double(const std::string& token, const std::string& context) {
  try {
    std::size_t used = 0;
    const double value = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return value;
  } catch (const std::exception&) {
    throw std::invalid_argument(context + ": cannot parse number '" + token + "'");
  }
}

inline std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

}  // namespace detail

inline EdgeListData parse_edge_list(std::istream& in) {
  struct RawEdge {
    std::string u, v;
    std::optional<double> rate;
    std::size_t line;
  };
  std::vector<RawEdge> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(detail::strip_comment(line));
    std::vector<std::string> tokens;
    for (std::string tok; fields >> tok;) tokens.push_back(tok);
    if (tokens.empty()) continue;
    const std::string where = "edge list line " + std::to_string(line_no);
    if (tokens.size() != 2 && tokens.size() != 3)
      throw std::invalid_argument(where + ": expected 'u v' or 'u v rate'");
    RawEdge e{tokens[0], tokens[1], std::nullopt, line_no};
    if (tokens.size() == 3) {
      e.rate = detail::parse_double(tokens[2], where);
      if (!(*e.rate >= 0.0)) throw std::invalid_argument(where + ": decay rate must be >= 0");
    }
    raw.push_back(std::move(e));
  }

  const bool with_rates = !raw.empty() && raw.front().rate.has_value();
  for (const auto& e : raw) {
    if (e.rate.has_value() != with_rates)
      throw std::invalid_argument("edge list line " + std::to_string(e.line) +
                                  ": either every edge carries a rate or none does");
  }

  bool numeric = true;
  for (const auto& e : raw)
    numeric = numeric && detail::parse_nonnegative_int(e.u) && detail::parse_nonnegative_int(e.v);

  EdgeListData out;
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  if (numeric) {
    long long max_label = -1;
    for (const auto& e : raw) {
      const long long u = *detail::parse_nonnegative_int(e.u);
      const long long v = *detail::parse_nonnegative_int(e.v);
      if (std::max(u, v) > 100'000'000)
        throw std::invalid_argument("edge list line " + std::to_string(e.line) +
                                    ": node label too large for dense ids");
      max_label = std::max({max_label, u, v});
      edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }
    const std::size_t n = static_cast<std::size_t>(max_label + 1);
    out.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.labels.push_back(std::to_string(i));
    out.graph = Graph(n, std::move(edges));
  } else {
    std::unordered_map<std::string, NodeId> ids;
    auto id_of = [&](const std::string& label) {
      auto [it, inserted] = ids.emplace(label, static_cast<NodeId>(out.labels.size()));
      if (inserted) out.labels.push_back(label);
      return it->second;
    };
    for (const auto& e : raw) {
      const NodeId u = id_of(e.u);
      const NodeId v = id_of(e.v);
      edges.push_back({u, v});
    }
    out.remapped = true;
    out.graph = Graph(out.labels.size(), std::move(edges));
  }
  if (with_rates) {
    std::vector<double> rates;
    rates.reserve(raw.size());
    for (const auto& e : raw) rates.push_back(*e.rate);
    out.rates = std::move(rates);
  }
  return out;
}

inline EdgeListData read_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open edge list '" + path + "'");
  return parse_edge_list(in);
}

/// Whitespace-separated numbers with '#' comments, in edge order.
inline std::vector<double> parse_number_list(std::istream& in, const std::string& what) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(detail::strip_comment(line));
    for (std::string tok; fields >> tok;)
      values.push_back(detail::parse_double(tok, what + " line " + std::to_string(line_no)));
  }
  return values;
}

inline std::vector<double> read_number_list(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + what + " '" + path + "'");
  return parse_number_list(in, what);
}

inline void write_edge_list(std::ostream& out, const Graph& g,
                            const std::vector<double>* rates = nullptr) {
  if (rates && rates->size() != g.edge_count())
    throw std::invalid_argument("rate count does not match edge count");
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& e = g.edge(i);
    out << e.u << ' ' << e.v;
    if (rates) out << ' ' << std::setprecision(17) << (*rates)[i];
    out << '\n';
  }
}

}  // namespace netrel
