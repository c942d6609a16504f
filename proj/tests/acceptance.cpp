// Acceptance suite: one test case per criterion, each printing a single
// [PASS]/[FAIL] line with the measured numbers behind it.

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "coexfair/contention.hpp"
#include "coexfair/fairness.hpp"
#include "coexfair/params.hpp"
#include "coexfair/sim.hpp"
#include "coexfair/throughput.hpp"

using namespace coexfair;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

void report(int number, const char* name, bool ok, const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", number, name,
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  const std::string message =
      "criterion " + std::to_string(number) + " (" + name + ") " + detail;
  CHECK_MESSAGE(ok, message);
}

Scenario pair_scenario(int n, int cls, double rate_w = 9.0, double rate_l = 7.8) {
  Scenario sc;
  sc.n_wifi = n;
  sc.n_laa = n;
  sc.wifi = table_ii_wifi(rate_w);
  sc.laa = laa_class(cls);
  sc.laa.data_rate_mbps = rate_l;
  return sc;
}

double rel(double measured, double truth) { return std::abs(measured / truth - 1.0); }

}  // namespace

TEST_CASE("criterion 1: closed-form collapse") {
  const auto t0 = std::chrono::steady_clock::now();
  const WifiOnlySolution s = solve_wifi_only(1, 16, 6);
  const double elapsed = ms_since(t0);

  bool ok = std::abs(s.tau - 2.0 / 17.0) <= 1e-12 && std::abs(s.p) <= 1e-12;
  for (int w0 : {4, 8, 16})
    for (int m : {1, 6}) ok &= std::abs(tau_wifi(0.0, w0, m) - 2.0 / (w0 + 1)) <= 1e-15;
  ok &= elapsed < 1.0;

  char buf[160];
  std::snprintf(buf, sizeof buf, "tau=%.15f P=%.3e solve=%.4fms", s.tau, s.p, elapsed);
  report(1, "closed-form collapse", ok, buf);
}

TEST_CASE("criterion 2: degenerate equivalence") {
  bool ok = true;
  std::string detail;
  for (int n : {1, 5, 10}) {
    Scenario sc = pair_scenario(n, 3);
    sc.n_laa = 0;
    sc.baseline_n = n;
    const auto t0 = std::chrono::steady_clock::now();
    const ContentionSolution sol = solve_coexistence(sc);
    const ThroughputReport rep = coexistence_throughput(sc, sol);
    const double elapsed = ms_since(t0);
    const WifiOnlySolution wo = solve_wifi_only(n, 16, 6);
    const double tput_wo = wifi_only_throughput(n, sc.wifi);
    const double dtau = std::abs(sol.tau_w - wo.tau);
    const double dtput = std::abs(rep.tput_w - tput_wo);
    ok &= dtau <= 1e-9 && dtput <= 1e-9 && elapsed < 10.0;
    char buf[120];
    std::snprintf(buf, sizeof buf, "n=%d dtau=%.2e dtput=%.2e %.2fms; ", n, dtau, dtput, elapsed);
    detail += buf;
  }
  // a defer period equal to DIFS leaves no Wi-Fi-only region
  const Scenario flat = pair_scenario(5, 1);
  ok &= solve_coexistence(flat).p_a1 == 0.0;
  detail += "deltaA=0 -> p_a1=0";
  report(2, "degenerate equivalence", ok, detail);
}

TEST_CASE("criterion 3: analytic-simulator agreement") {
  bool ok = true;
  std::string detail;
  for (int cls : {3, 4}) {
    for (int n : {1, 5, 10}) {
      const Scenario sc = pair_scenario(n, cls);
      const ContentionSolution sol = solve_coexistence(sc);
      const ThroughputReport rep = coexistence_throughput(sc, sol);

      SimConfig cfg;
      cfg.scenario = sc;
      cfg.seed = 1;
      cfg.horizon_slots = 1000000;
      const SimStats s6 = simulate(cfg);
      cfg.horizon_slots = 10000000;
      const SimStats s7 = simulate(cfg);

      const double e_tau_w = rel(s6.tau_hat_w, sol.tau_w);
      const double e_tau_l = rel(s6.tau_hat_l, sol.tau_l);
      const double e_p_cw = rel(s6.p_cw_hat, sol.p_cw);
      const double e_p_cl = rel(s6.p_cl_hat, sol.p_cl);
      const double e_tp_w = rel(s7.tput_hat_w, rep.tput_w);
      const double e_tp_l = rel(s7.tput_hat_l, rep.tput_l);
      const bool cell_ok = e_tau_w <= 0.02 && e_tau_l <= 0.02 && e_p_cw <= 0.03 &&
                           e_p_cl <= 0.03 && e_tp_w <= 0.03 && e_tp_l <= 0.03;
      ok &= cell_ok;
      char buf[200];
      std::snprintf(buf, sizeof buf,
                    "\n    class %d n=%-2d %s tau_w %5.2f%% tau_l %5.2f%% p_cw %5.2f%% "
                    "p_cl %5.2f%% tput_w %5.2f%% tput_l %5.2f%%",
                    cls, n, cell_ok ? "ok  " : "FAIL", 100 * e_tau_w, 100 * e_tau_l,
                    100 * e_p_cw, 100 * e_p_cl, 100 * e_tp_w, 100 * e_tp_l);
      detail += buf;
    }
  }
  report(3, "analytic-simulator agreement", ok, detail);
}

TEST_CASE("criterion 4: 3GPP fairness pins aggressive classes at zero TXOP") {
  bool ok = true;
  std::string detail;
  for (int cls : {1, 2}) {
    for (int n = 2; n <= 10; ++n) {
      const FairnessResult r = fairness_3gpp(pair_scenario(n, cls));
      if (r.optimized_txop_us != 0.0) {
        ok = false;
        char buf[80];
        std::snprintf(buf, sizeof buf, "class %d n=%d -> %g us; ", cls, n, r.optimized_txop_us);
        detail += buf;
      }
    }
  }
  if (ok) detail = "classes 1-2, n=2..10 all exactly zero";
  report(4, "3GPP fairness zero-TXOP boundary", ok, detail);
}

TEST_CASE("criterion 5: class 4 saturates the 6 ms TXOP cap") {
  int capped = 0;
  for (int n = 1; n <= 10; ++n) {
    const FairnessResult r = fairness_3gpp(pair_scenario(n, 4));
    if (r.boundary_hit && r.optimized_txop_us == 6000.0) ++capped;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%d of 10 node counts capped at 6 ms", capped);
  report(5, "3GPP fairness TXOP cap for class 4", capped > 0, buf);
}

TEST_CASE("criterion 6: zero-TXOP optima leave Wi-Fi better off than the baseline") {
  bool ok = true;
  int zero_optima = 0;
  std::string detail;
  for (int cls : {1, 2}) {
    for (int n = 2; n <= 10; ++n) {
      const FairnessResult r = fairness_3gpp(pair_scenario(n, cls));
      if (r.optimized_txop_us != 0.0) continue;
      ++zero_optima;
      if (!(r.report.per_user_w > r.report.per_user_wifi_only)) {
        ok = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, "class %d n=%d per-user %.4f !> baseline %.4f; ", cls, n,
                      r.report.per_user_w, r.report.per_user_wifi_only);
        detail += buf;
      }
    }
  }
  ok &= zero_optima > 0;
  if (ok) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "all %d zero-TXOP optima give Wi-Fi a per-user gain",
                  zero_optima);
    detail = buf;
  }
  report(6, "per-user gain at zero-TXOP optima", ok, detail);
}

TEST_CASE("criterion 7: access fairness boundary structure") {
  bool ok = true;
  std::string detail;
  for (int n : {3, 4}) {
    for (int cls = 1; cls <= 4; ++cls) {
      const FairnessResult r = fairness_access(pair_scenario(n, cls));
      const bool want_cap = cls <= 2;
      const bool cell_ok = want_cap ? (r.boundary_hit && r.optimized_m_laa == 64)
                                    : (r.optimized_m_laa == 0);
      ok &= cell_ok;
      char buf[64];
      std::snprintf(buf, sizeof buf, "class%d/n%d -> m'=%d%s; ", cls, n, r.optimized_m_laa,
                    r.boundary_hit ? " (cap)" : "");
      detail += buf;
    }
  }
  report(7, "access fairness boundary structure", ok, detail);
}

TEST_CASE("criterion 8: proportional fairness is monotone in the priority class") {
  bool ok = true;
  double prev = -1.0;
  std::string detail;
  for (int cls = 1; cls <= 4; ++cls) {
    const FairnessResult r = fairness_proportional(pair_scenario(5, cls));
    ok &= r.optimized_txop_us >= prev;
    ok &= r.report.tput_w > 0.0 && r.report.tput_l > 0.0;
    prev = r.optimized_txop_us;
    char buf[80];
    std::snprintf(buf, sizeof buf, "class%d -> %.0fus (w=%.3f, l=%.3f); ", cls,
                  r.optimized_txop_us, r.report.tput_w, r.report.tput_l);
    detail += buf;
  }
  report(8, "proportional fairness monotone TXOP", ok, detail);
}

TEST_CASE("criterion 9: optimizer soundness against exhaustive grids") {
  std::mt19937 gen(777);
  auto random_scenario = [&](bool need_laa) {
    Scenario sc;
    sc.n_wifi = 1 + static_cast<int>(gen() % 8);
    sc.n_laa = (need_laa ? 1 : 0) + static_cast<int>(gen() % 8);
    const int w0s[] = {8, 16, 32};
    sc.wifi = table_ii_wifi();
    sc.wifi.cw_min = w0s[gen() % 3];
    sc.wifi.max_backoff_stage = 4 + static_cast<int>(gen() % 3);
    const double rws[] = {6.0, 9.0, 12.0, 24.0, 54.0};
    sc.wifi.data_rate_mbps = rws[gen() % 5];
    sc.wifi.payload_bytes = (gen() % 2) ? 1024 : 2048;
    sc.laa = laa_class(1 + static_cast<int>(gen() % 4));
    const double rls[] = {7.8, 20.0, 70.2};
    sc.laa.data_rate_mbps = rls[gen() % 3];
    sc.laa.retry_limit = 1 + static_cast<int>(gen() % 3);
    return sc;
  };

  bool ok = true;
  std::string detail;
  int checked = 0;

  for (int trial = 0; trial < 20; ++trial) {
    // 3GPP mode
    {
      const Scenario sc = random_scenario(true);
      const FairnessResult r = fairness_3gpp(sc);
      const ContentionSolution sol = solve_coexistence(sc);
      double best = 1e300, best_t = 0.0;
      for (int t = 0; t <= 6000; ++t) {
        Scenario probe = sc;
        probe.laa.txop_us = t;
        const ThroughputReport rep = coexistence_throughput(probe, sol);
        const double obj = std::abs(rep.per_user_wifi_only - rep.per_user_w);
        if (obj < best) {
          best = obj;
          best_t = t;
        }
      }
      if (std::abs(r.optimized_txop_us - best_t) > 1.0) {
        ok = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, "3gpp trial %d: got %g, grid %g; ", trial,
                      r.optimized_txop_us, best_t);
        detail += buf;
      }
      ++checked;
    }
    // proportional mode
    {
      const Scenario sc = random_scenario(true);
      const FairnessResult r = fairness_proportional(sc);
      const ContentionSolution sol = solve_coexistence(sc);
      double best = -1e300, best_t = 1.0;
      for (int t = 1; t <= 6000; ++t) {
        Scenario probe = sc;
        probe.laa.txop_us = t;
        const ThroughputReport rep = coexistence_throughput(probe, sol);
        if (rep.tput_w <= 0.0 || rep.tput_l <= 0.0) continue;
        const double obj = std::log(rep.tput_w) + std::log(rep.tput_l);
        if (obj > best) {
          best = obj;
          best_t = t;
        }
      }
      if (std::abs(r.optimized_txop_us - best_t) > 1.0) {
        ok = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, "prop trial %d: got %g, grid %g; ", trial,
                      r.optimized_txop_us, best_t);
        detail += buf;
      }
      ++checked;
    }
    // access mode
    {
      const Scenario sc = random_scenario(true);
      const FairnessResult r = fairness_access(sc);
      const double target =
          solve_wifi_only(sc.effective_baseline(), sc.wifi.cw_min, sc.wifi.max_backoff_stage,
                          sc.solver)
              .tau;
      double best = 1e300;
      int best_m = 0;
      for (int m = 0; m <= sc.solver.m_laa_search_cap; ++m) {
        Scenario probe = sc;
        probe.laa.max_retx_stage = m;
        const double obj = std::abs(target - solve_coexistence(probe).tau_w);
        if (obj < best) {
          best = obj;
          best_m = m;
        }
      }
      if (std::abs(r.optimized_m_laa - best_m) > 1) {
        ok = false;
        char buf[96];
        std::snprintf(buf, sizeof buf, "access trial %d: got %d, grid %d; ", trial,
                      r.optimized_m_laa, best_m);
        detail += buf;
      }
      ++checked;
    }
  }
  if (ok) detail = std::to_string(checked) + " randomized searches match their exhaustive grids";
  report(9, "optimizer soundness", ok, detail);
}

TEST_CASE("criterion 10: normalization suite over randomized solutions") {
  std::mt19937 gen(4242);
  bool ok = true;
  std::string detail;
  int degenerate_free = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Scenario sc;
    sc.n_wifi = 1 + static_cast<int>(gen() % 10);
    sc.n_laa = static_cast<int>(gen() % 11);
    const int w0s[] = {8, 16, 32};
    sc.wifi.cw_min = w0s[gen() % 3];
    sc.wifi.max_backoff_stage = 3 + static_cast<int>(gen() % 4);
    sc.laa = laa_class(1 + static_cast<int>(gen() % 4));
    sc.laa.retry_limit = 1 + static_cast<int>(gen() % 8);
    sc.laa.max_retx_stage = static_cast<int>(gen() % 8);

    const ContentionSolution sol = solve_coexistence(sc);

    bool cell = true;
    for (double p : {sol.tau_w, sol.tau_l, sol.p_cw, sol.p_cl, sol.p_cw1, sol.p_cw2, sol.p_i1,
                     sol.p_i2, sol.c0, sol.p_a1, sol.p_a2})
      cell &= p >= 0.0 && p <= 1.0;
    cell &= sol.p_a1 + sol.p_a2 == 1.0;

    double mass = 0.0;
    for (long long k = 0; k <= sol.big_m; ++k) {
      mass += k <= sol.delta_a
                  ? sol.c0 * std::pow(sol.p_i1, static_cast<double>(k))
                  : sol.c0 * std::pow(sol.p_i1, static_cast<double>(sol.delta_a)) *
                        std::pow(sol.p_i2, static_cast<double>(k - sol.delta_a));
    }
    cell &= std::abs(mass - 1.0) <= 1e-9;

    // re-evaluate the fixed point from scratch
    const CollisionProbs cp = collision_probs(sol.tau_w, sol.tau_l, sc.n_wifi, sc.n_laa);
    const double p_i1 = std::pow(1.0 - sol.tau_w, sc.n_wifi);
    const double p_i2 = p_i1 * std::pow(1.0 - sol.tau_l, sc.n_laa);
    const RegionWeights rw = region_weights(p_i1, p_i2, sol.delta_a, sol.big_m);
    const double p_cw = rw.p_a1 * cp.p_cw1 + rw.p_a2 * cp.p_cw2;
    const double res_w =
        std::abs(tau_wifi(p_cw, sc.wifi.cw_min, sc.wifi.max_backoff_stage) - sol.tau_w);
    const double res_l = std::abs(
        tau_laa(cp.p_cl, sc.laa.cw_min, sc.laa.max_retx_stage, sc.laa.retry_limit) - sol.tau_l);
    cell &= std::max(res_w, res_l) <= sc.solver.tol;

    if (cell) ++degenerate_free;
    if (!cell && detail.size() < 400) {
      char buf[96];
      std::snprintf(buf, sizeof buf, "trial %d failed (n=%d/%d cls=%d); ", trial, sc.n_wifi,
                    sc.n_laa, sc.laa.priority_class);
      detail += buf;
    }
    ok &= cell;
  }
  if (ok) detail = "200 randomized solutions: probabilities, mass, and residual all within bounds";
  report(10, "normalization suite", ok, detail);
}

TEST_CASE("criterion 11: VHT timing and pipelines") {
  bool ok = true;
  std::string detail;

  const WiFiParams vht = vht_wifi(2, 78.0);
  const auto [t_sw, t_cw] = wifi_event_durations(vht);
  ok &= t_cw == t_sw;

  const double frame = vht.phy_header_us +
                       frame_airtime_us(vht.mac_header_bytes, vht.data_rate_mbps) +
                       frame_airtime_us(vht.payload_bytes, vht.data_rate_mbps);
  const double gap = std::abs(frame - 2390.0);
  ok &= gap <= 50.0;

  // 3GPP pipeline in VHT mode: class 2 keeps a nonzero TXOP for few nodes
  Scenario few = pair_scenario(1, 2, 78.0, 70.2);
  few.wifi = vht;
  const FairnessResult r3 = fairness_3gpp(few);
  ok &= r3.optimized_txop_us > 0.0;

  // proportional pipeline runs end to end in VHT mode
  Scenario prop = pair_scenario(5, 3, 78.0, 70.2);
  prop.wifi = vht;
  const FairnessResult rp = fairness_proportional(prop);
  ok &= rp.report.tput_w > 0.0 && rp.report.tput_l > 0.0;

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "t_cw==t_sw %s; frame airtime %.1fus (gap %.1fus); class2 n=1 TXOP %.0fus; "
                "prop VHT w=%.2f l=%.2f",
                t_cw == t_sw ? "yes" : "no", frame, gap, r3.optimized_txop_us, rp.report.tput_w,
                rp.report.tput_l);
  report(11, "VHT timing and pipelines", ok, buf);
}
