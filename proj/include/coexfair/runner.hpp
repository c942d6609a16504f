#pragma once

#include <cstdint>
#include <string>

#include "coexfair/fairness.hpp"
#include "coexfair/params.hpp"

namespace coexfair {

/// A fully resolved batch run: which command, where the scenario comes from,
/// where output goes. The CLI front end only translates flags into this.
struct RunSpec {
  enum class Command { Solve, Throughput, Fairness, Simulate, Sweep, ReproduceFigure };
  enum class Format { Csv, Json };

  Command command = Command::Solve;
  std::string config_path;
  std::string out_path;  // empty = stdout; a directory for ReproduceFigure
  Format format = Format::Csv;

  FairnessMode fairness_mode = FairnessMode::ThreeGpp;
  bool snap_txop_grid = false;
  bool raw_table_td = false;

  // sweep axis: one of n_pairs, txop_us, m_laa, priority_class, rate_w, rate_l
  std::string sweep_axis;
  double sweep_start = 0.0;
  double sweep_stop = 0.0;
  double sweep_step = 0.0;

  int figure = 0;  // reproduce-figure target, 6..16

  std::uint64_t seed = 1;
  long long sim_slots = 0;
  long long sim_events = 0;
  int warmup_events = 100;
  std::string event_log_path;
};

/// Execute the run. Returns the process exit status: 0 success, 1 config
/// error, 2 numerical failure. Errors are reported on stderr.
int run(const RunSpec& spec);

}  // namespace coexfair
