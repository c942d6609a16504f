#pragma once

#include <utility>

#include "coexfair/contention.hpp"
#include "coexfair/params.hpp"

namespace coexfair {

/// Durations of the channel-occupancy events, microseconds.
struct EventDurations {
  double t_sw = 0.0;  // Wi-Fi success
  double t_cw = 0.0;  // Wi-Fi/Wi-Fi collision
  double t_sl = 0.0;  // LAA success (TXOP + slot-alignment overhead)
  double t_cl = 0.0;  // LAA/LAA collision
  double t_cc = 0.0;  // cross-technology collision, max(t_cw, t_cl)
};

struct TxProbs {
  double p_trw = 0.0;  // any Wi-Fi station transmits in a slot
  double p_trl = 0.0;  // any LAA station transmits in a contended slot
  double p_sw = 0.0;   // exactly one Wi-Fi transmitter, given any
  double p_sl = 0.0;   // exactly one LAA transmitter, given any (0 if n_laa == 0)
};

struct ThroughputReport {
  double tput_w = 0.0;          // Wi-Fi network throughput in coexistence, Mbps
  double tput_l = 0.0;          // LAA network throughput, Mbps
  double tput_wifi_only = 0.0;  // Wi-Fi-only baseline network throughput, Mbps
  double per_user_w = 0.0;
  double per_user_l = 0.0;
  double per_user_wifi_only = 0.0;
  double p_trw = 0.0, p_trl = 0.0, p_sw = 0.0, p_sl = 0.0;
  double t_e1 = 0.0;  // expected slot duration, region 1, us
  double t_e2 = 0.0;  // expected slot duration, region 2, us
  double t_e = 0.0;   // region-weighted expected slot duration, us
};

/// (t_sw, t_cw). Basic mode: success carries SIFS + ACK on top of the data
/// frame, both end with DIFS. VHT mode: BAR/BA exchange, and the collision
/// duration equals the success duration.
std::pair<double, double> wifi_event_durations(const WiFiParams& wifi);

/// (t_sl, t_cl): both are TXOP + one LTE slot of alignment overhead.
std::pair<double, double> laa_event_durations(const LaaParams& laa);

EventDurations event_durations(const WiFiParams& wifi, const LaaParams& laa);

TxProbs tx_and_success_probs(const ContentionSolution& sol, int n_wifi, int n_laa);

/// Throughput of both networks plus the Wi-Fi-only baseline, from a
/// converged contention solution.
ThroughputReport coexistence_throughput(const Scenario& scenario, const ContentionSolution& sol);

/// Saturation throughput of an n-station Wi-Fi-only network, Mbps.
double wifi_only_throughput(int n, const WiFiParams& wifi, const SolverControls& controls = {});

}  // namespace coexfair
