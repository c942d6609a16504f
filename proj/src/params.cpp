#include "coexfair/params.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "coexfair/errors.hpp"

namespace coexfair {

WiFiParams table_ii_wifi(double data_rate_mbps, double basic_rate_mbps) {
  WiFiParams wifi;
  wifi.data_rate_mbps = data_rate_mbps;
  wifi.basic_rate_mbps = basic_rate_mbps;
  return wifi;
}

WiFiParams vht_wifi(int n_mpdu, double data_rate_mbps) {
  WiFiParams wifi;
  wifi.mode = WifiMode::Vht;
  wifi.phy_header_us = 40.0;
  wifi.mac_header_bytes = 38;
  wifi.basic_rate_mbps = 26.0;
  wifi.data_rate_mbps = data_rate_mbps;
  wifi.n_mpdu = n_mpdu;
  wifi.payload_bytes = static_cast<long long>(n_mpdu) * wifi.mpdu_bytes;
  return wifi;
}

LaaParams laa_class(int priority_class, Direction direction, bool raw_table_td) {
  LaaParams laa;
  laa.priority_class = priority_class;
  laa.direction = direction;
  const bool dl = direction == Direction::Downlink;
  switch (priority_class) {
    case 1:
      laa.defer_us = raw_table_td ? (dl ? 25.0 : 34.0) : 34.0;
      laa.cw_min = 4;
      laa.max_retx_stage = 1;
      laa.txop_us = 2000.0;
      break;
    case 2:
      laa.defer_us = raw_table_td ? (dl ? 25.0 : 34.0) : 34.0;
      laa.cw_min = 8;
      laa.max_retx_stage = 1;
      laa.txop_us = 3000.0;
      break;
    case 3:
      laa.defer_us = 43.0;
      laa.cw_min = 16;
      laa.max_retx_stage = 2;
      laa.txop_us = dl ? 8000.0 : 6000.0;
      break;
    case 4:
      laa.defer_us = 79.0;
      laa.cw_min = 16;
      laa.max_retx_stage = 6;
      laa.txop_us = dl ? 8000.0 : 6000.0;
      break;
    default:
      throw DomainError("priority class must be 1..4, got " + std::to_string(priority_class));
  }
  return laa;
}

void validate(const WiFiParams& wifi) {
  if (wifi.cw_min < 1) throw DomainError("wifi cw_min must be >= 1");
  if (wifi.max_backoff_stage < 0 || wifi.max_backoff_stage > 30)
    throw DomainError("wifi max_backoff_stage must be in 0..30");
  if (wifi.difs_us <= 0 || wifi.sifs_us <= 0 || wifi.slot_us <= 0 || wifi.phy_header_us <= 0)
    throw DomainError("wifi durations must be positive");
  if (wifi.ack_fixed_us <= 0) throw DomainError("wifi ack_fixed_us must be positive");
  if (wifi.mac_header_bytes < 0 || wifi.ack_bytes < 0 || wifi.payload_bytes < 0)
    throw DomainError("wifi byte counts must be nonnegative");
  if (wifi.data_rate_mbps <= 0 || wifi.basic_rate_mbps <= 0)
    throw DomainError("wifi rates must be positive");
  if (wifi.prop_delay_us < 0) throw DomainError("wifi prop_delay_us must be nonnegative");
  if (wifi.mode == WifiMode::Vht) {
    if (wifi.n_mpdu < 1 || wifi.n_mpdu > 64) throw DomainError("wifi n_mpdu must be in 1..64");
    if (wifi.mpdu_bytes <= 0 || wifi.bar_bytes < 0 || wifi.ba_bytes < 0)
      throw DomainError("wifi VHT byte counts invalid");
    if (wifi.payload_bytes != static_cast<long long>(wifi.n_mpdu) * wifi.mpdu_bytes)
      throw DomainError("wifi VHT payload_bytes must equal n_mpdu * mpdu_bytes");
  }
}

void validate(const LaaParams& laa) {
  if (laa.priority_class < 1 || laa.priority_class > 4)
    throw DomainError("laa priority_class must be 1..4");
  if (laa.defer_us <= 0 || laa.lte_slot_us <= 0) throw DomainError("laa durations must be positive");
  if (laa.cw_min < 1) throw DomainError("laa cw_min must be >= 1");
  if (laa.max_retx_stage < 0 || laa.max_retx_stage > 64)
    throw DomainError("laa max_retx_stage must be in 0..64");
  if (laa.retry_limit < 1 || laa.retry_limit > 8) throw DomainError("laa retry_limit must be in 1..8");
  if (laa.txop_us < 0) throw DomainError("laa txop_us must be nonnegative");
  if (laa.data_rate_mbps <= 0) throw DomainError("laa data_rate_mbps must be positive");
  if (laa.data_fraction <= 0 || laa.data_fraction > 1)
    throw DomainError("laa data_fraction must be in (0, 1]");
}

void validate(const Scenario& scenario) {
  validate(scenario.wifi);
  validate(scenario.laa);
  if (scenario.n_wifi < 1) throw DomainError("scenario n_wifi must be >= 1");
  if (scenario.n_laa < 0) throw DomainError("scenario n_laa must be >= 0");
  if (scenario.baseline_n < 0) throw DomainError("scenario baseline_n must be >= 0");
  const SolverControls& s = scenario.solver;
  if (s.damping <= 0 || s.damping > 1) throw DomainError("solver damping must be in (0, 1]");
  if (s.tol <= 0) throw DomainError("solver tol must be positive");
  if (s.max_iter < 1) throw DomainError("solver max_iter must be >= 1");
  if (s.grid_coarse_us <= 0 || s.grid_fine_us <= 0)
    throw DomainError("solver grid steps must be positive");
  if (s.grid_fine_us > s.grid_coarse_us)
    throw DomainError("solver grid_fine_us must not exceed grid_coarse_us");
  if (s.m_laa_search_cap < 0 || s.m_laa_search_cap > 64)
    throw DomainError("solver m_laa_search_cap must be in 0..64");
  // The two-region model needs the LAA defer period to start at or after DIFS.
  delta_slots(scenario.laa.defer_us, scenario.wifi.difs_us, scenario.wifi.slot_us);
}

int delta_slots(double defer_us, double difs_us, double slot_us) {
  if (slot_us <= 0) throw DomainError("slot duration must be positive");
  if (defer_us < difs_us)
    throw NegativeRegion("defer period " + std::to_string(defer_us) +
                         " us is shorter than DIFS " + std::to_string(difs_us) + " us");
  const double q = (defer_us - difs_us) / slot_us;
  const double rounded = std::round(q);
  if (std::abs(q - rounded) > 1e-9)
    throw NonIntegerRegion("defer period minus DIFS (" + std::to_string(defer_us - difs_us) +
                           " us) is not a whole number of " + std::to_string(slot_us) +
                           " us slots");
  return static_cast<int>(rounded);
}

long long max_backoff_slots(const WiFiParams& wifi, const LaaParams& laa, int delta_a) {
  const long long wifi_max = (1LL << wifi.max_backoff_stage) * wifi.cw_min - 1;
  long long laa_max;
  if (laa.max_retx_stage >= 40) {
    laa_max = std::numeric_limits<long long>::max() / 2;  // saturate, Wi-Fi side binds
  } else {
    laa_max = (1LL << laa.max_retx_stage) * laa.cw_min - 1 + delta_a;
  }
  return std::min(wifi_max, laa_max);
}

double frame_airtime_us(long long payload_bytes, double rate_mbps) {
  if (rate_mbps <= 0) throw DomainError("rate must be positive");
  if (payload_bytes < 0) throw DomainError("payload must be nonnegative");
  return 8.0 * static_cast<double>(payload_bytes) / rate_mbps;
}

}  // namespace coexfair
