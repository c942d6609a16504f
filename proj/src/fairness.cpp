#include "coexfair/fairness.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "coexfair/contention.hpp"
#include "coexfair/errors.hpp"

namespace coexfair {

namespace {

constexpr double kTxopMaxUs = 6000.0;
constexpr double kLteSlotGridUs = 500.0;

// Literal model at a given TXOP, reusing the cached contention solution (the
// coupled system does not depend on the TXOP). At TXOP zero the LAA nodes
// still contend and burn their slot-alignment overhead; they just carry no
// data.
ThroughputReport report_at_txop(const Scenario& sc,
                                const std::optional<ContentionSolution>& coex_sol,
                                double txop_us) {
  Scenario probe = sc;
  probe.laa.txop_us = txop_us;
  return coexistence_throughput(probe, coex_sol ? *coex_sol : solve_coexistence(probe));
}

// Operating point behind a zero-TXOP optimum: an LAA network with nothing to
// send stops contending, so the Wi-Fi side behaves as a Wi-Fi-only network
// of n_wifi stations.
ThroughputReport silent_laa_report(const Scenario& sc) {
  Scenario probe = sc;
  probe.n_laa = 0;
  probe.laa.txop_us = 0.0;
  probe.baseline_n = sc.effective_baseline();
  return coexistence_throughput(probe, solve_coexistence(probe));
}

std::vector<double> txop_grid(double lo, double hi, double step) {
  std::vector<double> points;
  for (double v = lo; v < hi - step * 0.5; v += step) points.push_back(v);
  points.push_back(hi);
  return points;
}

struct TxopSearch {
  double best_value = 0.0;
  double best_objective = 0.0;
  std::vector<GridPoint> trace;
};

// Coarse pass over the whole interval, then a fine pass one coarse step wide
// around the best point. Minimizes; ties go to the smaller TXOP.
TxopSearch search_txop(const Scenario& sc, double domain_lo,
                       const std::function<double(double)>& objective) {
  const SolverControls& ctl = sc.solver;
  TxopSearch out;
  out.best_objective = std::numeric_limits<double>::infinity();

  auto probe = [&](double v) {
    const double obj = objective(v);
    out.trace.push_back({v, obj});
    if (obj < out.best_objective ||
        (obj == out.best_objective && v < out.best_value)) {
      out.best_objective = obj;
      out.best_value = v;
    }
  };

  if (ctl.snap_txop_grid) {
    for (double v = domain_lo > 0.0 ? kLteSlotGridUs : 0.0; v <= kTxopMaxUs;
         v += kLteSlotGridUs)
      probe(v);
    return out;
  }

  for (double v : txop_grid(domain_lo, kTxopMaxUs, ctl.grid_coarse_us)) probe(v);
  const double coarse_best = out.best_value;
  const double lo = std::max(domain_lo, coarse_best - ctl.grid_coarse_us);
  const double hi = std::min(kTxopMaxUs, coarse_best + ctl.grid_coarse_us);
  for (double v : txop_grid(lo, hi, ctl.grid_fine_us)) probe(v);
  return out;
}

}  // namespace

double per_user_residual(const Scenario& sc, double txop_us) {
  validate(sc);
  if (txop_us < 0.0 || txop_us > kTxopMaxUs)
    throw DomainError("txop_us must be in [0, 6000]");
  const ThroughputReport r = report_at_txop(sc, std::nullopt, txop_us);
  return std::abs(r.per_user_wifi_only - r.per_user_w);
}

FairnessResult fairness_3gpp(const Scenario& sc) {
  validate(sc);
  FairnessResult result;
  result.mode = FairnessMode::ThreeGpp;

  if (sc.n_laa == 0) {
    result.degenerate = true;
    result.optimized_txop_us = 0.0;
    result.report = report_at_txop(sc, std::nullopt, 0.0);
    result.objective_at_opt =
        std::abs(result.report.per_user_wifi_only - result.report.per_user_w);
    result.grid_trace.push_back({0.0, result.objective_at_opt});
    return result;
  }

  const ContentionSolution sol = solve_coexistence(sc);
  auto objective = [&](double txop) {
    const ThroughputReport r = report_at_txop(sc, sol, txop);
    return std::abs(r.per_user_wifi_only - r.per_user_w);
  };

  const TxopSearch search = search_txop(sc, 0.0, objective);
  result.optimized_txop_us = search.best_value;
  result.objective_at_opt = search.best_objective;
  result.boundary_hit =
      search.best_value == 0.0 || search.best_value == kTxopMaxUs;
  result.grid_trace = search.trace;
  result.report = result.optimized_txop_us <= 0.0
                      ? silent_laa_report(sc)
                      : report_at_txop(sc, sol, result.optimized_txop_us);
  return result;
}

FairnessResult fairness_access(const Scenario& sc) {
  validate(sc);
  FairnessResult result;
  result.mode = FairnessMode::Access;

  const double target_tau =
      solve_wifi_only(sc.effective_baseline(), sc.wifi.cw_min, sc.wifi.max_backoff_stage,
                      sc.solver)
          .tau;

  if (sc.n_laa == 0) {
    const ContentionSolution sol = solve_coexistence(sc);
    result.degenerate = true;
    result.optimized_m_laa = 0;
    result.objective_at_opt = std::abs(target_tau - sol.tau_w);
    result.grid_trace.push_back({0.0, result.objective_at_opt});
    result.report = coexistence_throughput(sc, sol);
    return result;
  }

  const int cap = sc.solver.m_laa_search_cap;
  double best_obj = std::numeric_limits<double>::infinity();
  int best_m = 0;
  std::optional<ContentionSolution> best_sol;
  for (int m = 0; m <= cap; ++m) {
    Scenario probe = sc;
    probe.laa.max_retx_stage = m;
    const ContentionSolution sol = solve_coexistence(probe);
    const double obj = std::abs(target_tau - sol.tau_w);
    result.grid_trace.push_back({static_cast<double>(m), obj});
    if (obj < best_obj) {
      best_obj = obj;
      best_m = m;
      best_sol = sol;
    }
  }

  result.optimized_m_laa = best_m;
  result.objective_at_opt = best_obj;
  result.boundary_hit = best_m == cap;
  Scenario at_opt = sc;
  at_opt.laa.max_retx_stage = best_m;
  result.report = coexistence_throughput(at_opt, *best_sol);
  return result;
}

FairnessResult fairness_proportional(const Scenario& sc) {
  validate(sc);
  if (sc.n_laa < 1) throw DomainError("proportional fairness needs n_laa >= 1");
  FairnessResult result;
  result.mode = FairnessMode::Proportional;

  const ContentionSolution sol = solve_coexistence(sc);
  // Maximize the log-utility sum by minimizing its negation; TXOPs that
  // leave either network at zero throughput are excluded (-inf utility).
  auto objective = [&](double txop) {
    const ThroughputReport r = report_at_txop(sc, sol, txop);
    if (r.tput_w <= 0.0 || r.tput_l <= 0.0) return std::numeric_limits<double>::infinity();
    return -(std::log(r.tput_w) + std::log(r.tput_l));
  };

  const TxopSearch search = search_txop(sc, sc.solver.grid_fine_us, objective);
  if (!std::isfinite(search.best_objective))
    throw ObjectiveUndefined("a network throughput is zero across the entire TXOP domain");

  result.optimized_txop_us = search.best_value;
  result.objective_at_opt = -search.best_objective;  // report the utility itself
  result.boundary_hit = search.best_value == kTxopMaxUs;
  result.grid_trace = search.trace;
  for (GridPoint& gp : result.grid_trace) gp.objective = -gp.objective;
  result.report = report_at_txop(sc, sol, result.optimized_txop_us);
  return result;
}

}  // namespace coexfair
