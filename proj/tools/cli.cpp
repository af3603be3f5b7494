#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rank_table.hpp"
#include "restart_rank/error.hpp"
#include "restart_rank/identities.hpp"
#include "restart_rank/io.hpp"
#include "restart_rank/montecarlo.hpp"
#include "restart_rank/solvers.hpp"

namespace restart_rank::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

struct CommonOptions {
  std::string graph;
  std::string config;
  bool undirected = false;
  std::string format = "csv";
  std::optional<double> tol;
  std::string mode = "auto";
  std::string output;
};

struct RankOptions {
  std::string sort = "pi";
};

struct VerifyOptions {
  double fault_injection = 0.0;
};

struct SimulateOptions {
  std::int64_t steps = 1'000'000;
  std::uint64_t seed = 1;
  int walkers = 1;
};

struct AsymptoticsOptions {
  double sigma = 0.0;
  std::string a_grid = "1e-2,5e-3,2.5e-3,1.25e-3";
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::SolverPreconditionAlphaOne:
    case ErrorCode::NoConvergence:
    case ErrorCode::DenseOnly:
    case ErrorCode::NormalizationFailure:
    case ErrorCode::NonUniqueStationary:
    case ErrorCode::NoRestartsObserved:
    case ErrorCode::OracleSizeExceeded:
    case ErrorCode::AlphaBoundary:
      return kSolverError;
    default:
      return kInputError;
  }
}

void add_common(CLI::App* cmd, CommonOptions& o, bool needs_config, const char* default_format) {
  o.format = default_format;
  cmd->add_option("--graph", o.graph, "Edge-list file (`src dst [weight]` per line)")->required();
  if (needs_config)
    cmd->add_option("--config", o.config, "Restart configuration (JSON)")->required();
  cmd->add_flag("--undirected", o.undirected, "Read every edge in both directions");
  cmd->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--tol", o.tol, "Tolerance");
  cmd->add_option("--mode", o.mode, "Solver mode")
      ->check(CLI::IsMember({"auto", "dense", "iterative"}))
      ->capture_default_str();
  cmd->add_option("--output,-o", o.output, "Write results to this file instead of stdout");
}

SolverConfig solver_config(const CommonOptions& o, bool tol_is_solver_tol) {
  SolverConfig cfg;
  if (o.mode == "dense") cfg.mode = SolveMode::Dense;
  if (o.mode == "iterative") cfg.mode = SolveMode::Iterative;
  if (tol_is_solver_tol && o.tol) cfg.tolerance = *o.tol;
  cfg.validate();
  return cfg;
}

Graph load_graph(const CommonOptions& o, std::ostream& err) {
  Graph g = load_edge_list(o.graph, o.undirected);
  if (!g.repaired_nodes().empty())
    err << "note: " << g.repaired_nodes().size()
        << " dangling node(s) given uniform out-arcs to all other nodes\n";
  if (!check_weak_connectivity(g)) err << "warning: graph is not weakly connected\n";
  return g;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string run_rank(const CommonOptions& o, const RankOptions& r, std::ostream& err) {
  const Graph g = load_graph(o, err);
  const RestartModel m = load_restart_config(o.config, g);
  const SolverConfig cfg = solver_config(o, true);

  const auto start = Clock::now();
  const Resolvent resolvent(g, m, cfg);
  const ResolventRow row = resolvent.row(m.restart_distribution());
  const ScoreVector pi = occupation_from_row(row);
  const ScoreVector rho = location_from_row(row, m.alpha(), cfg);
  const double solve_seconds = seconds_since(start);

  RankTable table = make_rank_table(g, pi, rho, r.sort == "rho" ? RankBy::Rho : RankBy::Pi);
  table.metadata["model_kind"] = kind_name(m.kind());
  table.metadata["nodes"] = g.num_nodes();
  table.metadata["arcs"] = g.num_arcs();
  table.metadata["solve_seconds"] = solve_seconds;
  table.metadata["expected_restart_time"] = row.x.sum();
  if (o.format == "json") return to_json(table).dump(2) + "\n";
  return to_csv(table);
}

struct CheckResult {
  std::string name;
  std::string status;  // PASS, FAIL, SKIPPED
  double deviation = 0.0;
  std::optional<SymmetryReport> report;
  std::string reason;
};

std::string run_verify(const CommonOptions& o, const VerifyOptions& v, std::ostream& err,
                       bool& failed) {
  const Graph g = load_graph(o, err);
  const RestartModel m = load_restart_config(o.config, g);
  SolverConfig cfg = solver_config(o, false);
  cfg.fault_injection = v.fault_injection;
  const double tol = o.tol.value_or(1e-9);

  std::vector<CheckResult> checks;
  auto grade = [&](CheckResult c) {
    c.status = c.deviation <= tol ? "PASS" : "FAIL";
    checks.push_back(std::move(c));
  };

  grade({"rho_pi_relation", "", rho_pi_relation_check(g, m, cfg), std::nullopt, ""});

  std::string skip_reason;
  if (!g.is_symmetric()) {
    skip_reason = "graph is not undirected";
  } else if (!(m.min_alpha() > 0.0 && m.max_alpha() < 1.0)) {
    skip_reason = "some alpha outside (0, 1)";
  }
  if (skip_reason.empty()) {
    const auto occ = check_occupation_symmetry(g, m, cfg);
    grade({"occupation_symmetry", "", occ.max_abs_deviation, occ, ""});
    const auto loc = check_location_symmetry(g, m, cfg);
    grade({"location_symmetry", "", loc.max_abs_deviation, loc, ""});
  } else {
    checks.push_back({"occupation_symmetry", "SKIPPED", 0.0, std::nullopt, skip_reason});
    checks.push_back({"location_symmetry", "SKIPPED", 0.0, std::nullopt, skip_reason});
  }

  failed = std::any_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.status == "FAIL"; });

  if (o.format == "json") {
    json doc{{"tolerance", tol}, {"passed", !failed}, {"checks", json::array()}};
    for (const auto& c : checks) {
      json entry{{"name", c.name}, {"status", c.status}};
      if (c.status != "SKIPPED") entry["max_abs_deviation"] = c.deviation;
      if (c.report) entry["report"] = *c.report;
      if (!c.reason.empty()) entry["reason"] = c.reason;
      doc["checks"].push_back(entry);
    }
    return doc.dump(2) + "\n";
  }
  std::string out = "check,max_abs_deviation,tolerance,status\n";
  for (const auto& c : checks) {
    out += c.name + ",";
    out += c.status == "SKIPPED" ? std::string() : format_real(c.deviation);
    out += "," + format_real(tol) + "," + c.status + "\n";
  }
  return out;
}

std::string run_simulate(const CommonOptions& o, const SimulateOptions& s, std::ostream& err) {
  if (s.steps < 1) throw Error(ErrorCode::InvalidArgument, "--steps must be at least 1");
  if (s.walkers < 1) throw Error(ErrorCode::InvalidArgument, "--walkers must be at least 1");
  const Graph g = load_graph(o, err);
  const RestartModel m = load_restart_config(o.config, g);
  const SolverConfig cfg = solver_config(o, true);

  // Exact values first so a solver failure leaves no partial output.
  const Resolvent resolvent(g, m, cfg);
  const ResolventRow row = resolvent.row(m.restart_distribution());
  const ScoreVector pi = occupation_from_row(row);
  const ScoreVector rho = location_from_row(row, m.alpha(), cfg);
  const double exact_fraction = pi.values.dot(Vector::Ones(m.size()) - m.alpha());

  const WalkStats stats = s.walkers == 1
                              ? simulate(g, m, s.steps, s.seed)
                              : simulate_parallel(g, m, s.steps, s.seed, s.walkers);
  const ScoreVector emp_pi = empirical_pi(stats);
  const bool has_rho = stats.restarts > 0;
  const ScoreVector emp_rho = has_rho ? empirical_rho(stats) : ScoreVector{};
  const double emp_fraction = restart_fraction(stats);

  const Index n = g.num_nodes();
  double max_pi_dev = 0.0;
  double max_rho_dev = 0.0;
  json rows = json::array();
  std::string csv = "node,pi_empirical,pi_exact,pi_abs_dev,rho_empirical,rho_exact,rho_abs_dev\n";
  for (Index i = 0; i < n; ++i) {
    const double pi_dev = std::abs(emp_pi.values[i] - pi.values[i]);
    max_pi_dev = std::max(max_pi_dev, pi_dev);
    json entry{{"node", g.label(i)},
               {"pi_empirical", emp_pi.values[i]},
               {"pi_exact", pi.values[i]},
               {"pi_abs_dev", pi_dev}};
    csv += g.label(i) + "," + format_real(emp_pi.values[i]) + "," + format_real(pi.values[i]) +
           "," + format_real(pi_dev) + ",";
    if (has_rho) {
      const double rho_dev = std::abs(emp_rho.values[i] - rho.values[i]);
      max_rho_dev = std::max(max_rho_dev, rho_dev);
      entry["rho_empirical"] = emp_rho.values[i];
      entry["rho_abs_dev"] = rho_dev;
      csv += format_real(emp_rho.values[i]) + "," + format_real(rho.values[i]) + "," +
             format_real(rho_dev) + "\n";
    } else {
      csv += "," + format_real(rho.values[i]) + ",\n";
    }
    entry["rho_exact"] = rho.values[i];
    rows.push_back(entry);
  }

  if (o.format == "csv") {
    csv += "restart_fraction," + format_real(emp_fraction) + "," + format_real(exact_fraction) +
           "," + format_real(std::abs(emp_fraction - exact_fraction)) + ",,,\n";
    return csv;
  }
  json doc{{"stats", stats},
           {"comparison", rows},
           {"restart_fraction",
            {{"empirical", emp_fraction},
             {"exact", exact_fraction},
             {"abs_dev", std::abs(emp_fraction - exact_fraction)}}},
           {"max_abs_dev", {{"pi", max_pi_dev}, {"rho", has_rho ? json(max_rho_dev) : json()}}}};
  return doc.dump(2) + "\n";
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    const double a = parse_real(token);
    if (!(a > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid values must be positive");
    grid.push_back(a);
  }
  if (grid.empty()) throw Error(ErrorCode::InvalidArgument, "--a-grid is empty");
  return grid;
}

std::string run_asymptotics(const CommonOptions& o, const AsymptoticsOptions& a,
                            std::ostream& err) {
  const Graph g = load_graph(o, err);
  const std::vector<double> grid = parse_grid(a.a_grid);
  const SolverConfig cfg = solver_config(o, true);
  const DegreePowerLimits limits = degree_power_asymptotics(g, a.sigma);
  const Index n = g.num_nodes();
  const Vector v = uniform_distribution(n);
  std::optional<LaurentTerms> terms;
  if (n <= kDenseLimit) terms = laurent_terms(g, a.sigma, cfg);

  json rows = json::array();
  std::string csv =
      "a,status,pi_error,rho_error,pi_ratio,rho_ratio,a_times_restart_time,restart_time_coeff,"
      "laurent_remainder\n";
  std::optional<std::pair<double, double>> previous;
  for (const double step : grid) {
    json entry{{"a", step}};
    std::string line = format_real(step) + ",";
    std::optional<RestartModel> model;
    try {
      model.emplace(degree_power_model(g, step, a.sigma, v));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::StabilityViolation) throw;
    }
    if (!model) {
      entry["status"] = "REJECTED";
      rows.push_back(entry);
      csv += line + "REJECTED,,,,,,,\n";
      continue;
    }
    const Resolvent resolvent(g, *model, cfg);
    const ResolventRow row = resolvent.row(v);
    const ScoreVector pi = occupation_from_row(row);
    const ScoreVector rho = location_from_row(row, model->alpha(), cfg);
    const double pi_err = (pi.values - limits.pi_limit).lpNorm<Eigen::Infinity>();
    const double rho_err = (rho.values - limits.rho_limit).lpNorm<Eigen::Infinity>();
    const double scaled_time = step * row.x.sum();
    entry["status"] = "OK";
    entry["pi_error"] = pi_err;
    entry["rho_error"] = rho_err;
    entry["a_times_restart_time"] = scaled_time;
    entry["restart_time_coeff"] = limits.restart_time_coeff;
    line += "OK," + format_real(pi_err) + "," + format_real(rho_err) + ",";
    if (previous) {
      const double pi_ratio = pi_err / previous->first;
      const double rho_ratio = rho_err / previous->second;
      entry["pi_ratio"] = pi_ratio;
      entry["rho_ratio"] = rho_ratio;
      line += format_real(pi_ratio) + "," + format_real(rho_ratio) + ",";
    } else {
      line += ",,";
    }
    line += format_real(scaled_time) + "," + format_real(limits.restart_time_coeff) + ",";
    if (terms) {
      const double remainder = laurent_remainder(*terms, step);
      entry["laurent_remainder"] = remainder;
      line += format_real(remainder);
    }
    previous = {pi_err, rho_err};
    rows.push_back(entry);
    csv += line + "\n";
  }
  if (o.format == "json")
    return json{{"sigma", a.sigma}, {"rows", rows}}.dump(2) + "\n";
  return csv;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Personalized PageRank with node-dependent restart", "restart-rank"};
  app.require_subcommand(1);

  CommonOptions rank_common;
  CommonOptions verify_common;
  CommonOptions sim_common;
  CommonOptions asym_common;
  RankOptions rank_opts;
  VerifyOptions verify_opts;
  SimulateOptions sim_opts;
  AsymptoticsOptions asym_opts;

  auto* rank = app.add_subcommand("rank", "Compute occupation-time and location-of-restart scores");
  add_common(rank, rank_common, true, "csv");
  rank->add_option("--sort", rank_opts.sort, "Score to rank by")
      ->check(CLI::IsMember({"pi", "rho"}))
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "Check the rho/pi relation and symmetry identities");
  add_common(verify, verify_common, true, "csv");
  verify->add_option("--fault-injection", verify_opts.fault_injection,
                     "Testing hook: perturb the location solver by this much mass")
      ->group("");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo run compared against exact scores");
  add_common(sim, sim_common, true, "json");
  sim->add_option("--steps", sim_opts.steps, "Transitions per walker")->capture_default_str();
  sim->add_option("--seed", sim_opts.seed, "Base RNG seed")->capture_default_str();
  sim->add_option("--walkers", sim_opts.walkers, "Independent walkers")->capture_default_str();

  auto* asym = app.add_subcommand("asymptotics", "Small-a behaviour of the degree-power model");
  add_common(asym, asym_common, false, "csv");
  asym->add_option("--sigma", asym_opts.sigma, "Degree exponent")->required();
  asym->add_option("--a-grid", asym_opts.a_grid, "Comma-separated values of a")
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInputError;
  }

  const CommonOptions& common = rank->parsed()     ? rank_common
                                : verify->parsed() ? verify_common
                                : sim->parsed()    ? sim_common
                                                   : asym_common;
  std::string result;
  int status = kSuccess;
  try {
    if (rank->parsed()) {
      result = run_rank(common, rank_opts, err);
    } else if (verify->parsed()) {
      bool failed = false;
      result = run_verify(common, verify_opts, err, failed);
      if (failed) status = kVerificationFailed;
    } else if (sim->parsed()) {
      result = run_simulate(common, sim_opts, err);
    } else if (asym->parsed()) {
      result = run_asymptotics(common, asym_opts, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  if (common.output.empty()) {
    out << result;
  } else {
    std::ofstream file(common.output);
    if (!file) {
      err << "error: cannot write " << common.output << "\n";
      return kInputError;
    }
    file << result;
  }
  return status;
}

}  // namespace restart_rank::cli
