#include <string>

#include <CLI11.hpp>

#include "coexfair/runner.hpp"

namespace {

void add_common(CLI::App* cmd, coexfair::RunSpec& spec, bool needs_config = true) {
  auto* opt = cmd->add_option("--config", spec.config_path, "scenario config file");
  if (needs_config) opt->required();
  cmd->add_option("--out", spec.out_path, "output file (default: stdout)");
  std::map<std::string, coexfair::RunSpec::Format> formats{
      {"csv", coexfair::RunSpec::Format::Csv}, {"json", coexfair::RunSpec::Format::Json}};
  cmd->add_option("--format", spec.format, "output format")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  cmd->add_flag("--raw-table-td", spec.raw_table_td,
                "use the raw 3GPP table defer periods for classes 1-2");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wi-Fi / LTE-LAA coexistence throughput and fairness toolkit"};
  app.require_subcommand(1);

  coexfair::RunSpec spec;

  auto* solve = app.add_subcommand("solve", "solve the coupled contention system");
  add_common(solve, spec);
  solve->callback([&] { spec.command = coexfair::RunSpec::Command::Solve; });

  auto* tput = app.add_subcommand("throughput", "network and per-user throughput");
  add_common(tput, spec);
  tput->callback([&] { spec.command = coexfair::RunSpec::Command::Throughput; });

  auto* fair = app.add_subcommand("fairness", "optimize an LAA parameter for fairness");
  add_common(fair, spec);
  std::map<std::string, coexfair::FairnessMode> modes{
      {"3gpp", coexfair::FairnessMode::ThreeGpp},
      {"access", coexfair::FairnessMode::Access},
      {"proportional", coexfair::FairnessMode::Proportional}};
  fair->add_option("--mode", spec.fairness_mode, "fairness criterion")
      ->required()
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  fair->add_flag("--snap-txop-grid", spec.snap_txop_grid,
                 "restrict the TXOP search to 0.5 ms boundaries");
  fair->callback([&] { spec.command = coexfair::RunSpec::Command::Fairness; });

  auto* sim = app.add_subcommand("simulate", "slot-level Monte Carlo run");
  add_common(sim, spec);
  sim->add_option("--seed", spec.seed, "random seed");
  sim->add_option("--slots", spec.sim_slots, "horizon in contention slots (default 1e6)");
  sim->add_option("--events", spec.sim_events, "horizon in transmission events");
  sim->add_option("--warmup", spec.warmup_events, "transmissions discarded before accounting");
  sim->add_option("--event-log", spec.event_log_path, "write one line per transmission event");
  sim->callback([&] { spec.command = coexfair::RunSpec::Command::Simulate; });

  auto* sweep = app.add_subcommand("sweep", "throughput over a parameter range");
  add_common(sweep, spec);
  sweep->add_option("--axis", spec.sweep_axis,
                    "one of n_pairs, txop_us, m_laa, priority_class, rate_w, rate_l")
      ->required();
  sweep->add_option("--start", spec.sweep_start)->required();
  sweep->add_option("--stop", spec.sweep_stop)->required();
  sweep->add_option("--step", spec.sweep_step)->required();
  sweep->callback([&] { spec.command = coexfair::RunSpec::Command::Sweep; });

  auto* fig = app.add_subcommand("reproduce-figure", "emit the data set behind a numbered result figure");
  fig->add_option("figure", spec.figure, "figure number (6..16)")->required();
  add_common(fig, spec, /*needs_config=*/false);
  fig->callback([&] { spec.command = coexfair::RunSpec::Command::ReproduceFigure; });

  CLI11_PARSE(app, argc, argv);
  return coexfair::run(spec);
}
