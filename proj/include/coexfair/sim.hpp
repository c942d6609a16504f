#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "coexfair/params.hpp"

namespace coexfair {

/// One Monte Carlo run over the slotted contention abstraction. Exactly one
/// of horizon_slots / horizon_events must be positive; both count accounted
/// quantities after warmup. Estimates are meaningful from ~1e4 slots up.
struct SimConfig {
  Scenario scenario;
  long long horizon_slots = 0;   // contention slots (idle or busy)
  long long horizon_events = 0;  // transmission events
  std::uint64_t seed = 1;
  int warmup_events = 100;  // transmissions discarded before accounting

  bool operator==(const SimConfig&) const = default;
};

struct SimEventCounts {
  long long wifi_success = 0;
  long long laa_success = 0;
  long long wifi_collision = 0;   // two or more Wi-Fi, no LAA
  long long laa_collision = 0;    // two or more LAA, no Wi-Fi
  long long cross_collision = 0;  // both technologies in the same slot
  long long idle_slots = 0;

  bool operator==(const SimEventCounts&) const = default;
};

struct SimStats {
  double tau_hat_w = 0.0;  // Wi-Fi attempts per station-slot
  double tau_hat_l = 0.0;  // LAA attempts per station-slot, contended slots only
  double p_cw_hat = 0.0;   // collided fraction of Wi-Fi attempts
  double p_cl_hat = 0.0;   // collided fraction of LAA attempts
  double tput_hat_w = 0.0;  // Mbps
  double tput_hat_l = 0.0;  // Mbps
  SimEventCounts events;
  long long slots = 0;           // accounted contention slots
  long long slots_contended = 0; // accounted slots in which LAA contends
  double elapsed_model_time_us = 0.0;
  double stderr_tau_w = 0.0, stderr_tau_l = 0.0;
  double stderr_p_cw = 0.0, stderr_p_cl = 0.0;
  double stderr_tput_w = 0.0, stderr_tput_l = 0.0;

  bool operator==(const SimStats&) const = default;
};

/// Run the simulation. Deterministic for a fixed config: every station gets
/// an independent random stream derived from the seed, so changing one
/// network's size does not perturb the other's draws.
SimStats simulate(const SimConfig& config);

/// Same, with one line per transmission event written to event_log:
/// `model_time_us kind station duration_us` (station is -1 for collisions).
SimStats simulate(const SimConfig& config, std::ostream* event_log);

/// Independent runs; element i depends only on configs[i].
std::vector<SimStats> simulate_batch(const std::vector<SimConfig>& configs);

}  // namespace coexfair
