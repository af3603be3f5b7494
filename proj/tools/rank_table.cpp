#include "rank_table.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <optional>
#include <sstream>

#include "restart_rank/error.hpp"
#include "restart_rank/io.hpp"

namespace restart_rank::cli {

namespace {

std::optional<long long> as_integer(std::string_view s) {
  long long value = 0;
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? line.npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

bool label_less(std::string_view a, std::string_view b) {
  const auto ia = as_integer(a);
  const auto ib = as_integer(b);
  if (ia && ib && *ia != *ib) return *ia < *ib;
  return a < b;
}

RankTable make_rank_table(const Graph& g, const ScoreVector& pi, const ScoreVector& rho,
                          RankBy by) {
  const Index n = g.num_nodes();
  std::vector<Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  const Vector& key = by == RankBy::Pi ? pi.values : rho.values;
  std::vector<std::string> labels;
  labels.reserve(order.size());
  for (Index i = 0; i < n; ++i) labels.push_back(g.label(i));
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (key[a] != key[b]) return key[a] > key[b];
    return label_less(labels[static_cast<size_t>(a)], labels[static_cast<size_t>(b)]);
  });

  RankTable table;
  table.rows.reserve(order.size());
  for (size_t r = 0; r < order.size(); ++r) {
    const Index i = order[r];
    table.rows.push_back({static_cast<std::int64_t>(r + 1), labels[static_cast<size_t>(i)],
                          pi.values[i], rho.values[i]});
  }
  table.metadata["sorted_by"] = by == RankBy::Pi ? "pi" : "rho";
  table.metadata["pi_method"] = std::string(to_string(pi.method));
  table.metadata["rho_method"] = std::string(to_string(rho.method));
  table.metadata["pi_residual"] = pi.residual;
  table.metadata["rho_residual"] = rho.residual;
  return table;
}

std::string to_csv(const RankTable& table) {
  std::string out = "rank,node,pi,rho\n";
  for (const auto& row : table.rows) {
    out += std::to_string(row.rank);
    out += ',';
    out += row.node;
    out += ',';
    out += format_real(row.pi);
    out += ',';
    out += format_real(row.rho);
    out += '\n';
  }
  return out;
}

nlohmann::json to_json(const RankTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows)
    rows.push_back({{"rank", row.rank}, {"node", row.node}, {"pi", row.pi}, {"rho", row.rho}});
  return {{"metadata", table.metadata}, {"rows", rows}};
}

RankTable parse_rank_csv(std::string_view text) {
  RankTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "rank,node,pi,rho")
    throw Error(ErrorCode::ParseError, "missing rank table header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 4) throw Error(ErrorCode::ParseError, "bad rank table row: " + line);
    const auto rank = as_integer(fields[0]);
    if (!rank) throw Error(ErrorCode::ParseError, "bad rank: " + std::string(fields[0]));
    table.rows.push_back(
        {*rank, std::string(fields[1]), parse_real(fields[2]), parse_real(fields[3])});
  }
  return table;
}

}  // namespace restart_rank::cli
