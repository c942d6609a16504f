#include "coexfair/contention.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "coexfair/errors.hpp"

namespace coexfair {

namespace {

void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p < 1.0))
    throw DomainError(std::string(name) + " must be in [0, 1), got " + std::to_string(p));
}

// sum_{k=0}^{n-1} p^k, with the ratio-1 limit handled exactly.
double geometric_sum(double p, long long n) {
  if (n <= 0) return 0.0;
  if (p == 1.0) return static_cast<double>(n);
  return (1.0 - std::pow(p, static_cast<double>(n))) / (1.0 - p);
}

}  // namespace

double tau_wifi(double p_cw, int cw_min, int max_backoff_stage) {
  require_probability(p_cw, "p_cw");
  const int m = max_backoff_stage;
  // sum_{k=0}^{m} (2p)^k as a literal sum; no singularity at 2p == 1
  double series = 0.0, two_p_pow = 1.0;
  for (int k = 0; k <= m; ++k) {
    series += two_p_pow;
    two_p_pow *= 2.0 * p_cw;
  }
  const double p_m1 = std::pow(p_cw, m + 1);
  const double window_term =
      cw_min * (1.0 - p_cw) * (series + std::ldexp(p_m1, m)) / (1.0 - p_cw * p_m1);
  return 2.0 / (window_term + 1.0);
}

double tau_laa(double p_cl, int cw_min, int max_retx_stage, int retry_limit) {
  require_probability(p_cl, "p_cl");
  if (retry_limit < 1 || retry_limit > 8)
    throw DomainError("retry_limit must be in 1..8, got " + std::to_string(retry_limit));
  const int m = max_retx_stage;
  double series = 0.0, two_p_pow = 1.0;
  for (int k = 0; k <= m; ++k) {
    series += two_p_pow;
    two_p_pow *= 2.0 * p_cl;
  }
  const double p_m1 = std::pow(p_cl, m + 1);
  const double p_me = std::pow(p_cl, m + retry_limit + 1);
  const double window_term =
      cw_min * ((1.0 - p_cl) * series + std::ldexp(p_m1 - p_me, m)) / (1.0 - p_me);
  return 2.0 / (window_term + 1.0);
}

CollisionProbs collision_probs(double tau_w, double tau_l, int n_wifi, int n_laa) {
  if (n_wifi < 1) throw DomainError("n_wifi must be >= 1");
  if (n_laa < 0) throw DomainError("n_laa must be >= 0");
  CollisionProbs out;
  const double idle_w_others = std::pow(1.0 - tau_w, n_wifi - 1);
  const double idle_l_all = std::pow(1.0 - tau_l, n_laa);
  const double idle_l_others = std::pow(1.0 - tau_l, std::max(n_laa - 1, 0));
  out.p_cw1 = 1.0 - idle_w_others;
  out.p_cw2 = 1.0 - idle_w_others * idle_l_all;
  out.p_cl = 1.0 - idle_l_others * std::pow(1.0 - tau_w, n_wifi);
  return out;
}

RegionWeights region_weights(double p_i1, double p_i2, long long delta_a, long long big_m) {
  require_probability(p_i1, "p_i1");
  require_probability(p_i2, "p_i2");
  if (delta_a < 0) throw DomainError("delta_a must be >= 0");
  if (delta_a > big_m)
    throw DomainError("delta_a (" + std::to_string(delta_a) + ") exceeds slot range M (" +
                      std::to_string(big_m) + ")");
  RegionWeights out;
  // mass = sum_{k=0}^{deltaA} p_i1^k + p_i1^deltaA * sum_{k=deltaA+1}^{M} p_i2^(k-deltaA)
  const double head = geometric_sum(p_i1, delta_a + 1);
  const double tail =
      std::pow(p_i1, static_cast<double>(delta_a)) * p_i2 * geometric_sum(p_i2, big_m - delta_a);
  out.c0 = 1.0 / (head + tail);
  out.p_a1 = out.c0 * geometric_sum(p_i1, delta_a);
  out.p_a2 = 1.0 - out.p_a1;
  return out;
}

namespace {

struct CoexistenceState {
  CollisionProbs coll;
  double p_i1 = 0.0;
  double p_i2 = 0.0;
  RegionWeights weights;
  double p_cw = 0.0;
  double next_tau_w = 0.0;
  double next_tau_l = 0.0;
};

CoexistenceState evaluate_map(const Scenario& sc, int delta_a, long long big_m, double tau_w,
                              double tau_l) {
  CoexistenceState st;
  st.coll = collision_probs(tau_w, tau_l, sc.n_wifi, sc.n_laa);
  st.p_i1 = std::pow(1.0 - tau_w, sc.n_wifi);
  st.p_i2 = st.p_i1 * std::pow(1.0 - tau_l, sc.n_laa);
  st.weights = region_weights(st.p_i1, st.p_i2, delta_a, big_m);
  st.p_cw = st.weights.p_a1 * st.coll.p_cw1 + st.weights.p_a2 * st.coll.p_cw2;
  st.next_tau_w = tau_wifi(st.p_cw, sc.wifi.cw_min, sc.wifi.max_backoff_stage);
  st.next_tau_l = tau_laa(st.coll.p_cl, sc.laa.cw_min, sc.laa.max_retx_stage, sc.laa.retry_limit);
  return st;
}

}  // namespace

ContentionSolution solve_coexistence(const Scenario& sc) {
  validate(sc);
  const int delta_a = delta_slots(sc.laa.defer_us, sc.wifi.difs_us, sc.wifi.slot_us);
  const long long big_m = max_backoff_slots(sc.wifi, sc.laa, delta_a);
  const SolverControls& ctl = sc.solver;

  // Damped iteration from the zero-collision start. Small LAA windows can
  // make the map cycle at the configured damping, so on a failed pass the
  // whole solve retries with the damping halved.
  int total_iterations = 0;
  double last_residual = 0.0;
  for (int attempt = 0; attempt <= 6; ++attempt) {
    const double damping = ctl.damping / static_cast<double>(1 << attempt);
    double tau_w = 2.0 / (sc.wifi.cw_min + 1);
    double tau_l = 2.0 / (sc.laa.cw_min + 1);
    for (int iter = 1; iter <= ctl.max_iter; ++iter) {
      ++total_iterations;
      const CoexistenceState st = evaluate_map(sc, delta_a, big_m, tau_w, tau_l);
      const double residual =
          std::max(std::abs(st.next_tau_w - tau_w), std::abs(st.next_tau_l - tau_l));
      if (residual <= ctl.tol) {
        ContentionSolution sol;
        sol.tau_w = tau_w;
        sol.tau_l = tau_l;
        sol.p_cw = st.p_cw;
        sol.p_cl = st.coll.p_cl;
        sol.p_cw1 = st.coll.p_cw1;
        sol.p_cw2 = st.coll.p_cw2;
        sol.p_i1 = st.p_i1;
        sol.p_i2 = st.p_i2;
        sol.c0 = st.weights.c0;
        sol.p_a1 = st.weights.p_a1;
        sol.p_a2 = st.weights.p_a2;
        sol.delta_a = delta_a;
        sol.big_m = big_m;
        sol.iterations = total_iterations;
        sol.residual = residual;
        return sol;
      }
      tau_w += damping * (st.next_tau_w - tau_w);
      tau_l += damping * (st.next_tau_l - tau_l);
      last_residual = residual;
    }
  }
  throw NoConvergence(total_iterations, last_residual);
}

WifiOnlySolution solve_wifi_only(int n, int cw_min, int max_backoff_stage,
                                 const SolverControls& controls) {
  if (n < 1) throw DomainError("station count must be >= 1");
  int total_iterations = 0;
  double last_residual = 0.0;
  for (int attempt = 0; attempt <= 6; ++attempt) {
    const double damping = controls.damping / static_cast<double>(1 << attempt);
    double tau = 2.0 / (cw_min + 1);
    for (int iter = 1; iter <= controls.max_iter; ++iter) {
      ++total_iterations;
      const double p = 1.0 - std::pow(1.0 - tau, n - 1);
      const double next_tau = tau_wifi(p, cw_min, max_backoff_stage);
      const double residual = std::abs(next_tau - tau);
      if (residual <= controls.tol) {
        return WifiOnlySolution{tau, p, total_iterations, residual};
      }
      tau += damping * (next_tau - tau);
      last_residual = residual;
    }
  }
  throw NoConvergence(total_iterations, last_residual);
}

}  // namespace coexfair
