#include "restart_rank/io.hpp"

#include <charconv>
#include <fstream>
#include <unordered_map>

#include "restart_rank/error.hpp"

namespace restart_rank {

namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  size_t pos = 0;
  while (pos < line.size()) {
    const auto start = line.find_first_not_of(" \t\r", pos);
    if (start == std::string_view::npos) break;
    auto end = line.find_first_of(" \t\r", start);
    if (end == std::string_view::npos) end = line.size();
    tokens.push_back(line.substr(start, end - start));
    pos = end;
  }
  return tokens;
}

Index require_node(const Graph& g, const std::string& label) {
  if (const auto id = g.find_label(label)) return *id;
  throw Error(ErrorCode::ParseError, "unknown node '" + label + "'");
}

// Reads a per-node numeric table: an array in node order or a label map.
// Label maps may omit nodes (read as 0) only when `partial` is set.
std::vector<double> per_node_values(const json& value, const Graph& g, const char* what,
                                    bool partial = false) {
  const Index n = g.num_nodes();
  if (value.is_array()) {
    if (static_cast<Index>(value.size()) != n)
      throw Error(ErrorCode::ParseError, std::string(what) + " array has " +
                                             std::to_string(value.size()) + " entries, graph has " +
                                             std::to_string(n) + " nodes");
    std::vector<double> out;
    for (const auto& x : value) {
      if (!x.is_number()) throw Error(ErrorCode::ParseError, std::string(what) + " must be numeric");
      out.push_back(x.get<double>());
    }
    return out;
  }
  if (value.is_object()) {
    std::vector<double> out(static_cast<size_t>(n), 0.0);
    std::vector<bool> seen(static_cast<size_t>(n), false);
    for (const auto& [label, x] : value.items()) {
      if (!x.is_number()) throw Error(ErrorCode::ParseError, std::string(what) + " must be numeric");
      const Index id = require_node(g, label);
      out[static_cast<size_t>(id)] = x.get<double>();
      seen[static_cast<size_t>(id)] = true;
    }
    for (Index i = 0; i < n && !partial; ++i)
      if (!seen[static_cast<size_t>(i)])
        throw Error(ErrorCode::ParseError,
                    std::string(what) + " has no entry for node " + g.label(i));
    return out;
  }
  throw Error(ErrorCode::ParseError, std::string(what) + " must be an array or an object");
}

std::vector<double> read_alpha_file(const std::filesystem::path& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open alpha file " + path.string());
  std::vector<double> alpha(static_cast<size_t>(g.num_nodes()), 0.0);
  std::vector<bool> seen(alpha.size(), false);
  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto tokens = split_ws(body);
    if (tokens.size() != 2)
      throw Error(ErrorCode::ParseError,
                  path.string() + ":" + std::to_string(line_no) + ": expected `node alpha`");
    const Index id = require_node(g, std::string(tokens[0]));
    alpha[static_cast<size_t>(id)] = parse_real(tokens[1]);
    seen[static_cast<size_t>(id)] = true;
  }
  for (size_t i = 0; i < seen.size(); ++i)
    if (!seen[i])
      throw Error(ErrorCode::ParseError,
                  "alpha file " + path.string() + " has no entry for node " +
                      g.label(static_cast<Index>(i)));
  return alpha;
}

Vector normalized(const std::vector<double>& weights) {
  Vector v = Eigen::Map<const Vector>(weights.data(), static_cast<Index>(weights.size()));
  for (Index i = 0; i < v.size(); ++i)
    if (!(v[i] >= 0.0)) throw Error(ErrorCode::BadDistribution, "restart weights must be >= 0");
  const double total = v.sum();
  if (!(total > 0.0)) throw Error(ErrorCode::BadDistribution, "restart weights sum to zero");
  return v / total;
}

Vector parse_restart_distribution(const json& config, const Graph& g) {
  const Index n = g.num_nodes();
  if (!config.contains("v")) return uniform_distribution(n);
  const json& v = config.at("v");
  if (v.is_string()) {
    const auto text = v.get<std::string>();
    if (text == "uniform") return uniform_distribution(n);
    if (text.rfind("node:", 0) == 0) return point_distribution(n, require_node(g, text.substr(5)));
    throw Error(ErrorCode::ParseError, "unknown restart distribution '" + text + "'");
  }
  return normalized(per_node_values(v, g, "v", /*partial=*/true));
}

double number_field(const json& config, const char* key) {
  if (!config.contains(key) || !config.at(key).is_number())
    throw Error(ErrorCode::ParseError, std::string("config field '") + key + "' must be a number");
  return config.at(key).get<double>();
}

}  // namespace

Graph read_edge_list(std::istream& in, bool undirected) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, Index> index;
  std::vector<Edge> edges;
  auto id_of = [&](std::string_view token) {
    auto [it, inserted] = index.emplace(std::string(token), static_cast<Index>(labels.size()));
    if (inserted) labels.emplace_back(token);
    return it->second;
  };

  std::string line;
  for (int line_no = 1; std::getline(in, line); ++line_no) {
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto tokens = split_ws(body);
    if (tokens.size() < 2 || tokens.size() > 3)
      throw Error(ErrorCode::ParseError,
                  "line " + std::to_string(line_no) + ": expected `src dst [weight]`");
    Edge e;
    e.src = id_of(tokens[0]);
    e.dst = id_of(tokens[1]);
    if (tokens.size() == 3) {
      try {
        e.weight = parse_real(tokens[2]);
      } catch (const Error& err) {
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": " + err.what());
      }
    }
    edges.push_back(e);
  }
  if (edges.empty()) throw Error(ErrorCode::EmptyGraph, "edge list has no edges");
  return build_graph(edges, !undirected, std::move(labels));
}

Graph load_edge_list(const std::filesystem::path& path, bool undirected) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open graph file " + path.string());
  return read_edge_list(in, undirected);
}

RestartModel parse_restart_config(const json& config, const Graph& g,
                                  const std::filesystem::path& base_dir) {
  if (!config.is_object() || !config.contains("kind") || !config.at("kind").is_string())
    throw Error(ErrorCode::ParseError, "restart config needs a string field 'kind'");
  const auto kind = config.at("kind").get<std::string>();

  if (kind == "constant")
    return constant_model(g, number_field(config, "alpha"), parse_restart_distribution(config, g));

  if (kind == "degree_power")
    return degree_power_model(g, number_field(config, "a"), number_field(config, "sigma"),
                              parse_restart_distribution(config, g));

  if (kind == "rwj") {
    if (config.contains("v"))
      throw Error(ErrorCode::ParseError,
                  "the jump model derives v from the jump weights; drop the 'v' field");
    if (!config.contains("a")) throw Error(ErrorCode::ParseError, "rwj config needs 'a'");
    const json& a = config.at("a");
    if (a.is_number()) return rwj_model(g, a.get<double>());
    return rwj_model(g, per_node_values(a, g, "a"));
  }

  if (kind == "custom") {
    if (!config.contains("alpha")) throw Error(ErrorCode::ParseError, "custom config needs 'alpha'");
    const json& alpha = config.at("alpha");
    std::vector<double> values;
    if (alpha.is_string()) {
      std::filesystem::path file = alpha.get<std::string>();
      if (file.is_relative()) file = base_dir / file;
      values = read_alpha_file(file, g);
    } else {
      values = per_node_values(alpha, g, "alpha");
    }
    Vector alpha_vec = Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
    return custom_model(g, std::move(alpha_vec), parse_restart_distribution(config, g));
  }

  throw Error(ErrorCode::ParseError, "unknown restart kind '" + kind + "'");
}

RestartModel load_restart_config(const std::filesystem::path& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open restart config " + path.string());
  json config;
  try {
    in >> config;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path.string() + ": " + e.what());
  }
  return parse_restart_config(config, g, path.parent_path());
}

std::string format_real(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

double parse_real(std::string_view token) {
  double value = 0.0;
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc{} || ptr != end)
    throw Error(ErrorCode::ParseError, "'" + std::string(token) + "' is not a number");
  return value;
}

}  // namespace restart_rank
