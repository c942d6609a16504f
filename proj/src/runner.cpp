#include "coexfair/runner.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "coexfair/config.hpp"
#include "coexfair/contention.hpp"
#include "coexfair/errors.hpp"
#include "coexfair/sim.hpp"
#include "coexfair/table.hpp"
#include "coexfair/throughput.hpp"

namespace coexfair {

namespace {

using Row = std::vector<Cell>;

void emit(const RunSpec& spec, const OutputTable& table, const std::string& path) {
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!path.empty()) {
    file.open(path, std::ios::binary);
    if (!file) throw ConfigError("cannot open output file '" + path + "'");
    out = &file;
  }
  if (spec.format == RunSpec::Format::Json)
    write_json(*out, table);
  else
    write_csv(*out, table);
}

// Output columns are ordered: sweep variable first (when present), then
// everything else alphabetically.
struct RowBuilder {
  std::vector<std::string> columns;
  Row row;

  void add(const std::string& name, Cell value) {
    columns.push_back(name);
    row.push_back(std::move(value));
  }
};

void append_solution(RowBuilder& b, const ContentionSolution& sol) {
  b.add("big_m", static_cast<long long>(sol.big_m));
  b.add("c0", sol.c0);
  b.add("delta_a", static_cast<long long>(sol.delta_a));
  b.add("iterations", static_cast<long long>(sol.iterations));
  b.add("p_a1", sol.p_a1);
  b.add("p_a2", sol.p_a2);
  b.add("p_cl", sol.p_cl);
  b.add("p_cw", sol.p_cw);
  b.add("p_cw1", sol.p_cw1);
  b.add("p_cw2", sol.p_cw2);
  b.add("p_i1", sol.p_i1);
  b.add("p_i2", sol.p_i2);
  b.add("residual", sol.residual);
  b.add("tau_l", sol.tau_l);
  b.add("tau_w", sol.tau_w);
}

void append_report(RowBuilder& b, const ThroughputReport& r) {
  b.add("p_sl", r.p_sl);
  b.add("p_sw", r.p_sw);
  b.add("p_trl", r.p_trl);
  b.add("p_trw", r.p_trw);
  b.add("per_user_l", r.per_user_l);
  b.add("per_user_w", r.per_user_w);
  b.add("per_user_wifi_only", r.per_user_wifi_only);
  b.add("t_e", r.t_e);
  b.add("t_e1", r.t_e1);
  b.add("t_e2", r.t_e2);
  b.add("tput_l", r.tput_l);
  b.add("tput_w", r.tput_w);
  b.add("tput_wifi_only", r.tput_wifi_only);
}

void append_fairness(RowBuilder& b, const FairnessResult& f) {
  b.add("boundary_hit", f.boundary_hit);
  b.add("degenerate", f.degenerate);
  b.add("objective_at_opt", f.objective_at_opt);
  b.add("optimized_m_laa", static_cast<long long>(f.optimized_m_laa));
  b.add("optimized_txop_us", f.optimized_txop_us);
  append_report(b, f.report);
}

void append_sim(RowBuilder& b, const SimStats& s) {
  b.add("cross_collisions", s.events.cross_collision);
  b.add("elapsed_model_time_us", s.elapsed_model_time_us);
  b.add("idle_slots", s.events.idle_slots);
  b.add("laa_collisions", s.events.laa_collision);
  b.add("laa_successes", s.events.laa_success);
  b.add("p_cl_hat", s.p_cl_hat);
  b.add("p_cw_hat", s.p_cw_hat);
  b.add("slots", s.slots);
  b.add("slots_contended", s.slots_contended);
  b.add("stderr_p_cl", s.stderr_p_cl);
  b.add("stderr_p_cw", s.stderr_p_cw);
  b.add("stderr_tau_l", s.stderr_tau_l);
  b.add("stderr_tau_w", s.stderr_tau_w);
  b.add("stderr_tput_l", s.stderr_tput_l);
  b.add("stderr_tput_w", s.stderr_tput_w);
  b.add("tau_hat_l", s.tau_hat_l);
  b.add("tau_hat_w", s.tau_hat_w);
  b.add("tput_hat_l", s.tput_hat_l);
  b.add("tput_hat_w", s.tput_hat_w);
  b.add("wifi_collisions", s.events.wifi_collision);
  b.add("wifi_successes", s.events.wifi_success);
}

FairnessResult run_fairness(const Scenario& sc, FairnessMode mode) {
  switch (mode) {
    case FairnessMode::ThreeGpp:
      return fairness_3gpp(sc);
    case FairnessMode::Access:
      return fairness_access(sc);
    case FairnessMode::Proportional:
      return fairness_proportional(sc);
  }
  throw DomainError("unknown fairness mode");
}

const char* mode_name(FairnessMode mode) {
  switch (mode) {
    case FairnessMode::ThreeGpp:
      return "3gpp";
    case FairnessMode::Access:
      return "access";
    case FairnessMode::Proportional:
      return "proportional";
  }
  return "?";
}

int cmd_solve(const RunSpec& spec) {
  const Scenario sc = load_scenario(spec.config_path, spec.raw_table_td);
  RowBuilder b;
  append_solution(b, solve_coexistence(sc));
  OutputTable table{scenario_echo(sc), b.columns, {b.row}};
  emit(spec, table, spec.out_path);
  return 0;
}

int cmd_throughput(const RunSpec& spec) {
  const Scenario sc = load_scenario(spec.config_path, spec.raw_table_td);
  RowBuilder b;
  append_report(b, coexistence_throughput(sc, solve_coexistence(sc)));
  OutputTable table{scenario_echo(sc), b.columns, {b.row}};
  emit(spec, table, spec.out_path);
  return 0;
}

int cmd_fairness(const RunSpec& spec) {
  Scenario sc = load_scenario(spec.config_path, spec.raw_table_td);
  if (spec.snap_txop_grid) sc.solver.snap_txop_grid = true;
  RowBuilder b;
  append_fairness(b, run_fairness(sc, spec.fairness_mode));
  OutputTable table{scenario_echo(sc), b.columns, {b.row}};
  table.meta.emplace_back("fairness.mode", mode_name(spec.fairness_mode));
  emit(spec, table, spec.out_path);
  return 0;
}

int cmd_simulate(const RunSpec& spec) {
  if (spec.sim_slots > 0 && spec.sim_events > 0)
    throw ConfigError("--slots and --events are mutually exclusive");
  SimConfig cfg;
  cfg.scenario = load_scenario(spec.config_path, spec.raw_table_td);
  cfg.seed = spec.seed;
  cfg.warmup_events = spec.warmup_events;
  cfg.horizon_slots = spec.sim_slots;
  cfg.horizon_events = spec.sim_events;
  if (cfg.horizon_slots == 0 && cfg.horizon_events == 0) cfg.horizon_slots = 1000000;

  SimStats stats;
  if (!spec.event_log_path.empty()) {
    std::ofstream log(spec.event_log_path, std::ios::binary);
    if (!log) throw ConfigError("cannot open event log file '" + spec.event_log_path + "'");
    stats = simulate(cfg, &log);
  } else {
    stats = simulate(cfg);
  }

  RowBuilder b;
  append_sim(b, stats);
  OutputTable table{scenario_echo(cfg.scenario), b.columns, {b.row}};
  table.meta.emplace_back("sim.seed", std::to_string(cfg.seed));
  table.meta.emplace_back("sim.horizon_slots", std::to_string(cfg.horizon_slots));
  table.meta.emplace_back("sim.horizon_events", std::to_string(cfg.horizon_events));
  table.meta.emplace_back("sim.warmup_events", std::to_string(cfg.warmup_events));
  emit(spec, table, spec.out_path);
  return 0;
}

Scenario apply_axis(const Scenario& base, const std::string& axis, double value) {
  Scenario sc = base;
  if (axis == "n_pairs") {
    const int n = static_cast<int>(value);
    sc.n_wifi = n;
    sc.n_laa = n;
    sc.baseline_n = 0;  // track 2n
  } else if (axis == "txop_us") {
    sc.laa.txop_us = value;
  } else if (axis == "m_laa") {
    sc.laa.max_retx_stage = static_cast<int>(value);
  } else if (axis == "priority_class") {
    LaaParams fresh = laa_class(static_cast<int>(value), base.laa.direction);
    fresh.retry_limit = base.laa.retry_limit;
    fresh.data_rate_mbps = base.laa.data_rate_mbps;
    fresh.data_fraction = base.laa.data_fraction;
    fresh.lte_slot_us = base.laa.lte_slot_us;
    sc.laa = fresh;
  } else if (axis == "rate_w") {
    sc.wifi.data_rate_mbps = value;
  } else if (axis == "rate_l") {
    sc.laa.data_rate_mbps = value;
  } else {
    throw ConfigError("unknown sweep axis '" + axis + "'", axis);
  }
  return sc;
}

int cmd_sweep(const RunSpec& spec) {
  if (spec.sweep_step <= 0) throw ConfigError("sweep step must be positive");
  if (spec.sweep_axis.empty()) throw ConfigError("sweep axis is required");
  const Scenario base = load_scenario(spec.config_path, spec.raw_table_td);

  std::vector<double> values;
  for (double v = spec.sweep_start; v <= spec.sweep_stop + spec.sweep_step * 1e-9;
       v += spec.sweep_step)
    values.push_back(v);
  if (values.empty()) throw ConfigError("sweep range is empty");

  OutputTable table;
  table.meta = scenario_echo(base);
  table.meta.emplace_back("sweep.axis", spec.sweep_axis);
  for (double v : values) {
    const Scenario sc = apply_axis(base, spec.sweep_axis, v);
    RowBuilder b;
    b.add(spec.sweep_axis, v);
    append_report(b, coexistence_throughput(sc, solve_coexistence(sc)));
    if (table.columns.empty()) table.columns = b.columns;
    table.rows.push_back(b.row);
  }
  emit(spec, table, spec.out_path);
  return 0;
}

// ---- figure reproduction ------------------------------------------------

struct FigureJob {
  std::string file_tag;
  std::function<OutputTable()> build;
};

Scenario figure_scenario(int n_pairs, int priority_class, double rate_w, double rate_l,
                         const WiFiParams& wifi_base) {
  Scenario sc;
  sc.n_wifi = n_pairs;
  sc.n_laa = n_pairs;
  sc.wifi = wifi_base;
  sc.wifi.data_rate_mbps = rate_w;
  sc.laa = laa_class(priority_class);
  sc.laa.data_rate_mbps = rate_l;
  return sc;
}

constexpr int kFigureNodesMax = 10;

OutputTable fairness_curve(int priority_class, double rate_w, double rate_l, FairnessMode mode,
                           const WiFiParams& wifi_base) {
  OutputTable table;
  table.columns = {"n_pairs",   "boundary_hit",      "degenerate",
                   "objective", "optimized_m_laa",   "optimized_txop_us",
                   "per_user_l", "per_user_w",       "per_user_wifi_only",
                   "tput_l",    "tput_w",            "tput_wifi_only"};
  for (int n = 1; n <= kFigureNodesMax; ++n) {
    const Scenario sc = figure_scenario(n, priority_class, rate_w, rate_l, wifi_base);
    const FairnessResult f = run_fairness(sc, mode);
    table.rows.push_back(Row{static_cast<long long>(n), f.boundary_hit, f.degenerate,
                             f.objective_at_opt, static_cast<long long>(f.optimized_m_laa),
                             f.optimized_txop_us, f.report.per_user_l, f.report.per_user_w,
                             f.report.per_user_wifi_only, f.report.tput_l, f.report.tput_w,
                             f.report.tput_wifi_only});
    if (n == 1) {
      auto echo = scenario_echo(sc);
      table.meta.insert(table.meta.end(), echo.begin(), echo.end());
    }
  }
  table.meta.emplace_back("figure.mode", mode_name(mode));
  table.meta.emplace_back("figure.node_range", "1..10 stations per network (assumed)");
  return table;
}

std::vector<FigureJob> figure_jobs(int figure) {
  std::vector<FigureJob> jobs;
  const WiFiParams basic = table_ii_wifi();
  auto curve_per_class = [&](FairnessMode mode, double rw, double rl, const WiFiParams& wifi) {
    for (int cls = 1; cls <= 4; ++cls) {
      jobs.push_back({"class" + std::to_string(cls),
                      [=] { return fairness_curve(cls, rw, rl, mode, wifi); }});
    }
  };
  switch (figure) {
    case 6:  // optimized TXOP for 3GPP throughput fairness, 9 / 7.8 Mbps
      curve_per_class(FairnessMode::ThreeGpp, 9.0, 7.8, basic);
      break;
    case 7:  // per-user Wi-Fi throughput at the 3GPP-fair optimum
    case 8:  // per-user LAA throughput at the 3GPP-fair optimum
      curve_per_class(FairnessMode::ThreeGpp, 9.0, 7.8, basic);
      break;
    case 9:  // optimized m' for access fairness
      curve_per_class(FairnessMode::Access, 9.0, 7.8, basic);
      break;
    case 10:  // optimized TXOP for proportional fairness, 9 / 7.8 Mbps
    case 11:  // per-user throughputs at the proportional optimum
      curve_per_class(FairnessMode::Proportional, 9.0, 7.8, basic);
      break;
    case 12:  // optimized TXOP for 3GPP fairness, 54 / 70.2 Mbps
    case 13:  // per-user throughputs at that optimum
      curve_per_class(FairnessMode::ThreeGpp, 54.0, 70.2, basic);
      break;
    case 14:  // VHT, 3GPP fairness, 78 / 70.2 Mbps, N_MPDU = 2 and 4
    case 15:
      for (int n_mpdu : {2, 4}) {
        const WiFiParams vht = vht_wifi(n_mpdu);
        for (int cls = 1; cls <= 4; ++cls) {
          jobs.push_back({"nmpdu" + std::to_string(n_mpdu) + "_class" + std::to_string(cls),
                          [=] { return fairness_curve(cls, 78.0, 70.2, FairnessMode::ThreeGpp,
                                                      vht); }});
        }
      }
      break;
    case 16:  // VHT, proportional fairness
      for (int n_mpdu : {2, 4}) {
        const WiFiParams vht = vht_wifi(n_mpdu);
        for (int cls = 1; cls <= 4; ++cls) {
          jobs.push_back({"nmpdu" + std::to_string(n_mpdu) + "_class" + std::to_string(cls),
                          [=] {
                            return fairness_curve(cls, 78.0, 70.2, FairnessMode::Proportional,
                                                  vht);
                          }});
        }
      }
      break;
    default:
      throw ConfigError("reproduce-figure supports figures 6..16, got " +
                        std::to_string(figure));
  }
  return jobs;
}

int cmd_reproduce_figure(const RunSpec& spec) {
  const std::string dir = spec.out_path.empty() ? "." : spec.out_path;
  std::filesystem::create_directories(dir);
  const std::string ext = spec.format == RunSpec::Format::Json ? ".json" : ".csv";
  for (const FigureJob& job : figure_jobs(spec.figure)) {
    OutputTable table = job.build();
    table.meta.emplace_back("figure.number", std::to_string(spec.figure));
    const std::string path =
        dir + "/figure" + std::to_string(spec.figure) + "_" + job.file_tag + ext;
    emit(spec, table, path);
  }
  return 0;
}

std::string scenario_summary(const RunSpec& spec) {
  try {
    const Scenario sc = load_scenario(spec.config_path, spec.raw_table_td);
    std::ostringstream os;
    for (const auto& [k, v] : scenario_echo(sc)) os << k << "=" << v << " ";
    return os.str();
  } catch (...) {
    return "(scenario unavailable)";
  }
}

}  // namespace

int run(const RunSpec& spec) {
  try {
    switch (spec.command) {
      case RunSpec::Command::Solve:
        return cmd_solve(spec);
      case RunSpec::Command::Throughput:
        return cmd_throughput(spec);
      case RunSpec::Command::Fairness:
        return cmd_fairness(spec);
      case RunSpec::Command::Simulate:
        return cmd_simulate(spec);
      case RunSpec::Command::Sweep:
        return cmd_sweep(spec);
      case RunSpec::Command::ReproduceFigure:
        return cmd_reproduce_figure(spec);
    }
    std::cerr << "config error: unknown command\n";
    return 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const NoConvergence& e) {
    std::cerr << "numerical failure: " << e.what() << "\n  scenario: " << scenario_summary(spec)
              << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace coexfair
