#include "coexfair/throughput.hpp"

#include <algorithm>
#include <cmath>

#include "coexfair/errors.hpp"

namespace coexfair {

std::pair<double, double> wifi_event_durations(const WiFiParams& wifi) {
  const double psize = frame_airtime_us(wifi.payload_bytes, wifi.data_rate_mbps);
  const double mach = frame_airtime_us(wifi.mac_header_bytes, wifi.data_rate_mbps);
  const double frame = wifi.phy_header_us + mach + psize;
  double t_sw, t_cw;
  if (wifi.mode == WifiMode::Vht) {
    const double bar = wifi.ack_fixed_us + frame_airtime_us(wifi.bar_bytes, wifi.basic_rate_mbps);
    const double ba = wifi.ack_fixed_us + frame_airtime_us(wifi.ba_bytes, wifi.basic_rate_mbps);
    t_sw = frame + wifi.sifs_us + bar + wifi.sifs_us + ba + wifi.difs_us;
    t_cw = t_sw;  // a synchronized collision wastes the whole A-MPDU exchange
  } else {
    const double ack = wifi.ack_fixed_us + frame_airtime_us(wifi.ack_bytes, wifi.basic_rate_mbps);
    t_sw = frame + wifi.sifs_us + ack + wifi.difs_us;
    t_cw = frame + wifi.difs_us;
  }
  if (wifi.include_prop_delay) {
    t_sw += wifi.prop_delay_us;
    t_cw += wifi.prop_delay_us;
  }
  return {t_sw, t_cw};
}

std::pair<double, double> laa_event_durations(const LaaParams& laa) {
  if (laa.txop_us < 0) throw DomainError("txop_us must be nonnegative");
  const double t = laa.txop_us + laa.lte_slot_us;
  return {t, t};
}

EventDurations event_durations(const WiFiParams& wifi, const LaaParams& laa) {
  EventDurations d;
  std::tie(d.t_sw, d.t_cw) = wifi_event_durations(wifi);
  std::tie(d.t_sl, d.t_cl) = laa_event_durations(laa);
  d.t_cc = std::max(d.t_cw, d.t_cl);
  return d;
}

TxProbs tx_and_success_probs(const ContentionSolution& sol, int n_wifi, int n_laa) {
  TxProbs p;
  p.p_trw = 1.0 - std::pow(1.0 - sol.tau_w, n_wifi);
  p.p_trl = n_laa > 0 ? 1.0 - std::pow(1.0 - sol.tau_l, n_laa) : 0.0;
  p.p_sw = p.p_trw > 0.0
               ? n_wifi * sol.tau_w * std::pow(1.0 - sol.tau_w, n_wifi - 1) / p.p_trw
               : 0.0;
  p.p_sl = p.p_trl > 0.0
               ? n_laa * sol.tau_l * std::pow(1.0 - sol.tau_l, n_laa - 1) / p.p_trl
               : 0.0;
  return p;
}

ThroughputReport coexistence_throughput(const Scenario& sc, const ContentionSolution& sol) {
  const EventDurations d = event_durations(sc.wifi, sc.laa);
  const TxProbs p = tx_and_success_probs(sol, sc.n_wifi, sc.n_laa);
  const double sigma = sc.wifi.slot_us;

  const double t_e1 = (1.0 - p.p_trw) * sigma + p.p_trw * p.p_sw * d.t_sw +
                      p.p_trw * (1.0 - p.p_sw) * d.t_cw;

  // Expected region-2 slot duration, term by term: idle, lone Wi-Fi success,
  // lone LAA success, Wi-Fi-only collision, LAA-only collision, and the four
  // joint events in which both technologies transmit (all cross collisions).
  const double t_e2 = (1.0 - p.p_trw) * (1.0 - p.p_trl) * sigma +
                      p.p_trw * p.p_sw * (1.0 - p.p_trl) * d.t_sw +
                      p.p_trl * p.p_sl * (1.0 - p.p_trw) * d.t_sl +
                      p.p_trw * (1.0 - p.p_sw) * (1.0 - p.p_trl) * d.t_cw +
                      p.p_trl * (1.0 - p.p_sl) * (1.0 - p.p_trw) * d.t_cl +
                      (p.p_trw * p.p_sw * p.p_trl * p.p_sl +
                       p.p_trw * p.p_sw * p.p_trl * (1.0 - p.p_sl) +
                       p.p_trw * (1.0 - p.p_sw) * p.p_trl * p.p_sl +
                       p.p_trw * (1.0 - p.p_sw) * p.p_trl * (1.0 - p.p_sl)) *
                          d.t_cc;

  const double t_e = sol.p_a1 * t_e1 + sol.p_a2 * t_e2;

  // Payload airtime times data rate is just the payload size in bits, so we
  // work in bits directly (bits / us == Mbps).
  const double wifi_bits = 8.0 * static_cast<double>(sc.wifi.payload_bytes);
  const double wifi_success =
      sol.p_a1 * p.p_trw * p.p_sw + sol.p_a2 * p.p_trw * p.p_sw * (1.0 - p.p_trl);
  const double laa_bits = sc.laa.data_fraction * sc.laa.txop_us * sc.laa.data_rate_mbps;
  const double laa_success = sol.p_a2 * p.p_trl * p.p_sl * (1.0 - p.p_trw);

  ThroughputReport r;
  r.p_trw = p.p_trw;
  r.p_trl = p.p_trl;
  r.p_sw = p.p_sw;
  r.p_sl = p.p_sl;
  r.t_e1 = t_e1;
  r.t_e2 = t_e2;
  r.t_e = t_e;
  r.tput_w = wifi_success * wifi_bits / t_e;
  r.tput_l = laa_success * laa_bits / t_e;
  const int baseline = sc.effective_baseline();
  r.tput_wifi_only = wifi_only_throughput(baseline, sc.wifi, sc.solver);
  r.per_user_w = r.tput_w / sc.n_wifi;
  r.per_user_l = sc.n_laa > 0 ? r.tput_l / sc.n_laa : 0.0;
  r.per_user_wifi_only = r.tput_wifi_only / baseline;
  return r;
}

double wifi_only_throughput(int n, const WiFiParams& wifi, const SolverControls& controls) {
  const WifiOnlySolution s = solve_wifi_only(n, wifi.cw_min, wifi.max_backoff_stage, controls);
  const auto [t_sw, t_cw] = wifi_event_durations(wifi);
  const double p_tr = 1.0 - std::pow(1.0 - s.tau, n);
  const double p_s = n * s.tau * std::pow(1.0 - s.tau, n - 1) / p_tr;
  const double bits = 8.0 * static_cast<double>(wifi.payload_bytes);
  const double denom =
      (1.0 - p_tr) * wifi.slot_us + p_tr * (1.0 - p_s) * t_cw + p_tr * p_s * t_sw;
  return p_tr * p_s * bits / denom;
}

}  // namespace coexfair
