#include "coexfair/sim.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "coexfair/errors.hpp"
#include "coexfair/throughput.hpp"

namespace coexfair {

namespace {

// splitmix64; also used to spawn per-station streams from the master seed
std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

struct Rng {
  std::uint64_t state;

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // unbiased draw in [0, n) (Lemire multiply-shift with rejection)
  std::uint64_t below(std::uint64_t n) {
    __uint128_t m = static_cast<__uint128_t>(next()) * n;
    std::uint64_t low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<__uint128_t>(next()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }
};

struct Station {
  Rng rng;
  int stage = 0;
  long long counter = 0;
};

double binom_stderr(double p, double trials) {
  return trials > 0 ? std::sqrt(std::max(p * (1.0 - p), 0.0) / trials) : 0.0;
}

}  // namespace

SimStats simulate(const SimConfig& cfg) { return simulate(cfg, nullptr); }

SimStats simulate(const SimConfig& cfg, std::ostream* event_log) {
  validate(cfg.scenario);
  const bool by_slots = cfg.horizon_slots > 0;
  const bool by_events = cfg.horizon_events > 0;
  if (by_slots == by_events)
    throw InvalidHorizon("exactly one of horizon_slots / horizon_events must be positive");
  if (cfg.warmup_events < 0) throw InvalidHorizon("warmup_events must be nonnegative");
  const long long horizon = by_slots ? cfg.horizon_slots : cfg.horizon_events;

  const Scenario& sc = cfg.scenario;
  const WiFiParams& wifi = sc.wifi;
  const LaaParams& laa = sc.laa;
  const int n_w = sc.n_wifi;
  const int n_l = sc.n_laa;
  const int n = n_w + n_l;
  const int delta_a = delta_slots(laa.defer_us, wifi.difs_us, wifi.slot_us);
  const EventDurations dur = event_durations(wifi, laa);
  const double wifi_bits = 8.0 * static_cast<double>(wifi.payload_bytes);
  const double laa_bits = laa.data_fraction * laa.txop_us * laa.data_rate_mbps;

  const int wifi_stages = wifi.max_backoff_stage + 2;  // one retry at max window, then drop
  const int laa_stages = laa.max_retx_stage + laa.retry_limit + 1;

  std::vector<Station> st(n);
  auto window = [&](int i, int stage) -> std::uint64_t {
    int s = i < n_w ? std::min(stage, wifi.max_backoff_stage) : std::min(stage, laa.max_retx_stage);
    if (s > 40) s = 40;  // cap the shift; such windows never drain in practice
    return static_cast<std::uint64_t>(i < n_w ? wifi.cw_min : laa.cw_min) << s;
  };
  for (int i = 0; i < n; ++i) {
    // one stream per station, keyed by network and in-network index, so
    // resizing one network leaves the other's draws untouched
    const bool is_laa = i >= n_w;
    const std::uint64_t key =
        (is_laa ? 0x4C4141ULL : 0x574946ULL) << 32 | static_cast<std::uint64_t>(is_laa ? i - n_w : i);
    st[i].rng.state = mix64(cfg.seed) ^ mix64(key);
    st[i].stage = 0;
    st[i].counter = static_cast<long long>(st[i].rng.below(window(i, 0)));
  }

  // accounting (post-warmup)
  SimEventCounts ev;
  long long slots = 0, slots_r2 = 0;
  long long wifi_attempts = 0, laa_attempts = 0;
  long long wifi_coll_attempts = 0, laa_coll_attempts = 0;

  double log_time = 0.0;  // running model time for the event log only
  long long events_total = 0;
  bool warm = cfg.warmup_events == 0;

  int tx_ids[2] = {-1, -1};
  long long slot_index = 0;  // k: slots since the last busy period's defer completed

  char log_line[160];

  while (true) {
    if (warm && (by_slots ? slots >= horizon : events_total >= horizon)) break;

    const bool laa_active = slot_index >= delta_a;
    const int eligible = laa_active ? n : n_w;
    int n_tx = 0, n_tx_w = 0, n_tx_l = 0;
    for (int i = 0; i < eligible; ++i) {
      if (st[i].counter == 0) {
        if (n_tx < 2) tx_ids[n_tx] = i;
        ++n_tx;
        if (i < n_w)
          ++n_tx_w;
        else
          ++n_tx_l;
      }
    }

    if (n_tx == 0) {
      if (warm) {
        ++slots;
        if (laa_active) ++slots_r2;
        ++ev.idle_slots;
      }
      for (int i = 0; i < eligible; ++i) --st[i].counter;
      log_time += wifi.slot_us;
      ++slot_index;
      continue;
    }

    // transmission slot: classify, account, advance transmitters
    double duration;
    const char* kind;
    int log_station = -1;
    if (n_tx_w > 0 && n_tx_l > 0) {
      duration = dur.t_cc;
      kind = "cross_collision";
      if (warm) ++ev.cross_collision;
    } else if (n_tx_w > 1) {
      duration = dur.t_cw;
      kind = "wifi_collision";
      if (warm) ++ev.wifi_collision;
    } else if (n_tx_w == 1) {
      duration = dur.t_sw;
      kind = "wifi_success";
      log_station = tx_ids[0];
      if (warm) ++ev.wifi_success;
    } else if (n_tx_l > 1) {
      duration = dur.t_cl;
      kind = "laa_collision";
      if (warm) ++ev.laa_collision;
    } else {
      duration = dur.t_sl;
      kind = "laa_success";
      log_station = tx_ids[0];
      if (warm) ++ev.laa_success;
    }

    if (warm) {
      ++slots;
      if (laa_active) ++slots_r2;
      wifi_attempts += n_tx_w;
      laa_attempts += n_tx_l;
      if (n_tx > 1) {
        wifi_coll_attempts += n_tx_w;
        laa_coll_attempts += n_tx_l;
      }
    }

    if (event_log) {
      std::snprintf(log_line, sizeof log_line, "%.9g %s %d %.9g\n", log_time, kind, log_station,
                    duration);
      *event_log << log_line;
    }

    // Transmitters advance their backoff chain and redraw; every other
    // eligible station burns this slot too (the chain steps once per system
    // slot, busy or idle, matching the analytic abstraction).
    for (int i = 0; i < eligible; ++i) {
      if (st[i].counter != 0) {
        --st[i].counter;
        continue;
      }
      const bool success = n_tx == 1;
      const int max_stage = (i < n_w ? wifi_stages : laa_stages) - 1;
      st[i].stage = (success || st[i].stage >= max_stage) ? 0 : st[i].stage + 1;
      st[i].counter = static_cast<long long>(st[i].rng.below(window(i, st[i].stage)));
    }

    log_time += duration;
    slot_index = 0;
    ++events_total;
    if (!warm && events_total >= cfg.warmup_events) {
      warm = true;
      events_total = 0;
    }
  }

  SimStats out;
  out.events = ev;
  out.slots = slots;
  out.slots_contended = slots_r2;
  const double wifi_trials = static_cast<double>(n_w) * static_cast<double>(slots);
  const double laa_trials = static_cast<double>(n_l) * static_cast<double>(slots_r2);
  out.tau_hat_w = wifi_trials > 0 ? wifi_attempts / wifi_trials : 0.0;
  out.tau_hat_l = laa_trials > 0 ? laa_attempts / laa_trials : 0.0;
  out.p_cw_hat = wifi_attempts > 0 ? static_cast<double>(wifi_coll_attempts) / wifi_attempts : 0.0;
  out.p_cl_hat = laa_attempts > 0 ? static_cast<double>(laa_coll_attempts) / laa_attempts : 0.0;
  out.elapsed_model_time_us = ev.idle_slots * wifi.slot_us + ev.wifi_success * dur.t_sw +
                              ev.wifi_collision * dur.t_cw + ev.laa_success * dur.t_sl +
                              ev.laa_collision * dur.t_cl + ev.cross_collision * dur.t_cc;
  if (out.elapsed_model_time_us > 0) {
    out.tput_hat_w = ev.wifi_success * wifi_bits / out.elapsed_model_time_us;
    out.tput_hat_l = ev.laa_success * laa_bits / out.elapsed_model_time_us;
  }
  out.stderr_tau_w = binom_stderr(out.tau_hat_w, wifi_trials);
  out.stderr_tau_l = binom_stderr(out.tau_hat_l, laa_trials);
  out.stderr_p_cw = binom_stderr(out.p_cw_hat, static_cast<double>(wifi_attempts));
  out.stderr_p_cl = binom_stderr(out.p_cl_hat, static_cast<double>(laa_attempts));
  out.stderr_tput_w =
      ev.wifi_success > 0 ? out.tput_hat_w / std::sqrt(static_cast<double>(ev.wifi_success)) : 0.0;
  out.stderr_tput_l =
      ev.laa_success > 0 ? out.tput_hat_l / std::sqrt(static_cast<double>(ev.laa_success)) : 0.0;
  return out;
}

std::vector<SimStats> simulate_batch(const std::vector<SimConfig>& configs) {
  if (configs.empty()) throw DomainError("simulate_batch: empty config list");
  std::vector<SimStats> out;
  out.reserve(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    try {
      out.push_back(simulate(configs[i]));
    } catch (const std::exception& e) {
      throw std::runtime_error("simulate_batch: config " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace coexfair
