#pragma once

#include "coexfair/params.hpp"

namespace coexfair {

/// Joint solution of the coupled access/collision probability system for a
/// coexistence scenario. Region 1 is the slot range where only Wi-Fi
/// contends (the LAA defer period exceeds DIFS by delta_a slots); region 2
/// is where both networks contend.
struct ContentionSolution {
  double tau_w = 0.0;  // per-node Wi-Fi access probability per slot
  double tau_l = 0.0;  // per-node LAA access probability per contended slot
  double p_cw = 0.0;   // total Wi-Fi collision probability (region-weighted)
  double p_cl = 0.0;   // LAA collision probability
  double p_cw1 = 0.0;  // Wi-Fi collision probability in region 1
  double p_cw2 = 0.0;  // Wi-Fi collision probability in region 2
  double p_i1 = 0.0;   // idle probability in region 1
  double p_i2 = 0.0;   // idle probability in region 2
  double c0 = 0.0;     // stationary mass of slot index 0
  double p_a1 = 0.0;   // probability a random slot falls in region 1
  double p_a2 = 0.0;   // probability a random slot falls in region 2
  int delta_a = 0;
  long long big_m = 0;
  int iterations = 0;
  double residual = 0.0;  // max-abs defect of the returned point
};

struct CollisionProbs {
  double p_cw1 = 0.0;
  double p_cw2 = 0.0;
  double p_cl = 0.0;
};

struct RegionWeights {
  double c0 = 0.0;
  double p_a1 = 0.0;
  double p_a2 = 0.0;
};

struct WifiOnlySolution {
  double tau = 0.0;
  double p = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

/// Wi-Fi per-slot access probability for a given collision probability.
/// Evaluated through the finite-series form of the backoff-chain
/// normalization, which stays exact at 2 * p_cw == 1.
double tau_wifi(double p_cw, int cw_min, int max_backoff_stage);

/// LAA access probability; the LBT chain has max_retx_stage + retry_limit + 1
/// attempt stages, the last retry_limit of them at the maximum window.
double tau_laa(double p_cl, int cw_min, int max_retx_stage, int retry_limit);

/// Conditional collision probabilities per region. With n_laa == 0 the LAA
/// value is the collision probability a hypothetical joining node would see.
CollisionProbs collision_probs(double tau_w, double tau_l, int n_wifi, int n_laa);

/// Stationary weights of the two contention regions from the slot-position
/// chain: state k advances on an idle slot and resets on any transmission.
RegionWeights region_weights(double p_i1, double p_i2, long long delta_a, long long big_m);

/// Damped fixed-point solve of the coupled system (access probabilities,
/// collision probabilities, region weights). Deterministic for fixed inputs.
ContentionSolution solve_coexistence(const Scenario& scenario);

/// Single-class Wi-Fi network: solve tau = tau_wifi(1 - (1 - tau)^(n - 1)).
WifiOnlySolution solve_wifi_only(int n, int cw_min, int max_backoff_stage,
                                 const SolverControls& controls = {});

}  // namespace coexfair
