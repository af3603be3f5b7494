#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "restart_rank/graph.hpp"
#include "restart_rank/solvers.hpp"

namespace restart_rank::cli {

struct RankRow {
  std::int64_t rank = 0;  // 1-based
  std::string node;
  double pi = 0.0;
  double rho = 0.0;
};

enum class RankBy { Pi, Rho };

struct RankTable {
  std::vector<RankRow> rows;
  nlohmann::json metadata = nlohmann::json::object();
};

// Rows sorted by the selected score, descending; ties go to the smaller
// label (numeric order when both labels are integers).
RankTable make_rank_table(const Graph& g, const ScoreVector& pi, const ScoreVector& rho,
                          RankBy by);

bool label_less(std::string_view a, std::string_view b);

// `rank,node,pi,rho` with 17 significant digits.
std::string to_csv(const RankTable& table);
nlohmann::json to_json(const RankTable& table);
RankTable parse_rank_csv(std::string_view text);

}  // namespace restart_rank::cli
