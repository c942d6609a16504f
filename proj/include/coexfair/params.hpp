#pragma once

#include <cstdint>

namespace coexfair {

enum class WifiMode { Basic, Vht };
enum class Direction { Downlink, Uplink };

/// Wi-Fi DCF contention and frame-timing parameters. Defaults are the
/// 802.11 OFDM values used throughout (see table_ii_wifi / vht_wifi).
/// All durations are microseconds, all rates Mbps.
struct WiFiParams {
  int cw_min = 16;            // W0, minimum contention window (slots)
  int max_backoff_stage = 6;  // m; retry limit at max window is 1, then drop
  double difs_us = 34.0;
  double sifs_us = 16.0;
  double slot_us = 9.0;  // sigma, backoff slot
  double phy_header_us = 20.0;
  int mac_header_bytes = 34;  // sent at the data rate
  double ack_fixed_us = 20.0; // control-frame preamble, shared by ACK/BAR/BA
  int ack_bytes = 14;         // ACK MAC header, sent at the basic rate
  long long payload_bytes = 2048;  // N_B
  double data_rate_mbps = 9.0;
  double basic_rate_mbps = 24.0;
  double prop_delay_us = 0.1;
  bool include_prop_delay = false;  // add prop delay to event durations

  WifiMode mode = WifiMode::Basic;
  // VHT (A-MPDU) fields; ignored in Basic mode.
  int n_mpdu = 1;
  int mpdu_bytes = 11416;
  int bar_bytes = 24;
  int ba_bytes = 32;

  bool operator==(const WiFiParams&) const = default;
};

/// LTE-LAA LBT parameters for one priority class.
struct LaaParams {
  int priority_class = 3;
  Direction direction = Direction::Downlink;
  double defer_us = 43.0;   // T_d, initial sensing before backoff
  int cw_min = 16;          // W'_0
  int max_retx_stage = 2;   // m'
  int retry_limit = 1;      // e_l, extra tries at max window, in 1..8
  double txop_us = 8000.0;  // T_D
  double lte_slot_us = 500.0;  // D_LTE, slot-alignment overhead per access
  double data_rate_mbps = 7.8;
  double data_fraction = 13.0 / 14.0;  // data share of the TXOP (1 PDCCH symbol)

  bool operator==(const LaaParams&) const = default;
};

/// Controls for the fixed-point solver and the fairness searches.
struct SolverControls {
  double damping = 0.5;  // fraction of the full update applied per step
  double tol = 1e-10;    // max-abs update threshold
  int max_iter = 10000;
  double grid_coarse_us = 50.0;  // TXOP search, first pass
  double grid_fine_us = 1.0;     // TXOP search, refinement step
  int m_laa_search_cap = 64;
  bool snap_txop_grid = false;  // restrict the TXOP search to 0.5 ms boundaries

  bool operator==(const SolverControls&) const = default;
};

struct Scenario {
  int n_wifi = 1;
  int n_laa = 0;
  int baseline_n = 0;  // Wi-Fi-only comparison network size; 0 = n_wifi + n_laa
  WiFiParams wifi;
  LaaParams laa;
  SolverControls solver;

  int effective_baseline() const { return baseline_n > 0 ? baseline_n : n_wifi + n_laa; }

  bool operator==(const Scenario&) const = default;
};

/// Standard Wi-Fi DCF parameter set (W0 = 16, m = 6, 2048-byte frames).
WiFiParams table_ii_wifi(double data_rate_mbps = 9.0, double basic_rate_mbps = 24.0);

/// VHT A-MPDU parameter set; payload is n_mpdu aggregated 11416-byte MPDUs
/// acknowledged via BAR/BA.
WiFiParams vht_wifi(int n_mpdu = 2, double data_rate_mbps = 78.0);

/// LBT parameters for priority classes 1..4. By default classes 1 and 2 use
/// a 34 us defer period (equal to DIFS); raw_table_td restores the raw
/// 25 us downlink values, which the two-region model cannot represent.
LaaParams laa_class(int priority_class, Direction direction = Direction::Downlink,
                    bool raw_table_td = false);

void validate(const WiFiParams& wifi);
void validate(const LaaParams& laa);
void validate(const Scenario& scenario);

/// Number of backoff slots in which only Wi-Fi contends:
/// (defer - difs) / slot. Errors if negative or not a whole slot count.
int delta_slots(double defer_us, double difs_us, double slot_us);

/// Last reachable backoff slot index M = min(Wm - 1, W'm' - 1 + deltaA),
/// saturated if the LAA window overflows.
long long max_backoff_slots(const WiFiParams& wifi, const LaaParams& laa, int delta_a);

/// Airtime of a payload at a given rate: 8 * bytes / Mbps, in microseconds.
double frame_airtime_us(long long payload_bytes, double rate_mbps);

}  // namespace coexfair
