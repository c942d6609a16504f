#pragma once

#include <vector>

#include "coexfair/params.hpp"
#include "coexfair/throughput.hpp"

namespace coexfair {

enum class FairnessMode { ThreeGpp, Access, Proportional };

struct GridPoint {
  double value = 0.0;      // probed decision-variable value (TXOP us, or m')
  double objective = 0.0;  // objective there; -inf marks excluded points
};

struct FairnessResult {
  FairnessMode mode = FairnessMode::ThreeGpp;
  double optimized_txop_us = 0.0;  // ThreeGpp / Proportional modes
  int optimized_m_laa = 0;         // Access mode
  double objective_at_opt = 0.0;
  bool boundary_hit = false;  // optimum sits on the search-domain edge
  bool degenerate = false;    // objective did not depend on the variable (n_laa == 0)
  ThroughputReport report;    // full report at the optimum
  std::vector<GridPoint> grid_trace;
};

/// |per-user Wi-Fi-only throughput - per-user coexistence Wi-Fi throughput|
/// at the given TXOP. A TXOP of zero means LAA transmits nothing, which
/// removes it from contention entirely.
double per_user_residual(const Scenario& scenario, double txop_us);

/// Tune the LAA TXOP on [0, 6000] us so the coexisting Wi-Fi matches the
/// per-user throughput of the baseline Wi-Fi-only network.
FairnessResult fairness_3gpp(const Scenario& scenario);

/// Tune the LAA maximum retransmission stage m' so the Wi-Fi per-slot access
/// probability matches the baseline network's. Re-solves the coupled system
/// for every candidate m' in [0, m_laa_search_cap].
FairnessResult fairness_access(const Scenario& scenario);

/// Maximize log(tput_w) + log(tput_l) over TXOP in (0, 6000] us.
FairnessResult fairness_proportional(const Scenario& scenario);

}  // namespace coexfair
