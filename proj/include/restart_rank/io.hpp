#pragma once

#include <filesystem>
#include <istream>
#include <string>

#include <nlohmann/json.hpp>

#include "restart_rank/graph.hpp"
#include "restart_rank/restart_model.hpp"

namespace restart_rank {

// Edge list: one `src dst [weight]` per line, whitespace separated, weight
// defaulting to 1. Lines whose first non-blank character is '#' and blank
// lines are skipped. Node names are arbitrary tokens, indexed in order of
// first appearance. Throws ParseError with the offending line number.
Graph read_edge_list(std::istream& in, bool undirected);
Graph load_edge_list(const std::filesystem::path& path, bool undirected);

// Restart configuration:
//   {"kind": "constant", "alpha": 0.85, "v": ...}
//   {"kind": "degree_power", "a": 0.1, "sigma": 1, "v": ...}
//   {"kind": "rwj", "a": 1.0 | [a_0, ...] | {"label": a, ...}}
//   {"kind": "custom", "alpha": [..] | {"label": alpha} | "path/to/file", "v": ...}
// where v is "uniform" (default), "node:<label>", an array of nonnegative
// weights in node order, or an object of label -> weight; weights are
// normalized. An alpha file holds `label alpha` lines and is resolved
// relative to `base_dir`.
RestartModel parse_restart_config(const nlohmann::json& config, const Graph& g,
                                  const std::filesystem::path& base_dir = {});
RestartModel load_restart_config(const std::filesystem::path& path, const Graph& g);

// 17 significant digits, '.' decimal separator, independent of locale.
std::string format_real(double x);
// Locale-independent parse of a full token; throws ParseError.
double parse_real(std::string_view token);

}  // namespace restart_rank
