#include "coexfair/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "coexfair/errors.hpp"

namespace coexfair {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// section -> ordered key/value list (duplicates rejected at insert)
using Section = std::vector<std::pair<std::string, std::string>>;

struct RawConfig {
  std::map<std::string, Section> sections;
};

RawConfig read_raw(std::istream& in) {
  RawConfig raw;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      if (section != "wifi" && section != "laa" && section != "scenario" && section != "solver")
        throw ConfigError("unknown section [" + section + "]", section);
      raw.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    if (section.empty())
      throw ConfigError("line " + std::to_string(lineno) + ": key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    for (const auto& [k, v] : raw.sections[section])
      if (k == key) throw ConfigError("duplicate key '" + key + "' in [" + section + "]", key);
    raw.sections[section].emplace_back(key, value);
  }
  return raw;
}

// Typed view over one section that tracks which keys were consumed so the
// leftovers can be reported as unknown.
class SectionReader {
 public:
  SectionReader(const RawConfig& raw, std::string name) : name_(std::move(name)) {
    const auto it = raw.sections.find(name_);
    if (it != raw.sections.end()) entries_ = it->second;
    used_.assign(entries_.size(), false);
  }

  const std::string* find(const std::string& key) {
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      if (entries_[i].first == key) {
        used_[i] = true;
        return &entries_[i].second;
      }
    }
    return nullptr;
  }

  template <typename T, typename Parse>
  void get(const std::string& key, T& out, Parse parse) {
    if (const std::string* v = find(key)) out = parse(key, *v);
  }

  double number(const std::string& key, const std::string& value) const {
    std::size_t pos = 0;
    double out = 0;
    try {
      out = std::stod(value, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != value.size())
      throw ConfigError("key '" + key + "' in [" + name_ + "]: not a number: '" + value + "'",
                        key);
    return out;
  }

  int integer(const std::string& key, const std::string& value) const {
    const double d = number(key, value);
    const long long i = static_cast<long long>(d);
    if (static_cast<double>(i) != d)
      throw ConfigError("key '" + key + "' in [" + name_ + "]: not an integer: '" + value + "'",
                        key);
    return static_cast<int>(i);
  }

  bool boolean(const std::string& key, const std::string& value) const {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("key '" + key + "' in [" + name_ + "]: not a boolean: '" + value + "'", key);
  }

  void number_key(const std::string& key, double& out) {
    get(key, out, [this](const std::string& k, const std::string& v) { return number(k, v); });
  }
  void integer_key(const std::string& key, int& out) {
    get(key, out, [this](const std::string& k, const std::string& v) { return integer(k, v); });
  }
  void boolean_key(const std::string& key, bool& out) {
    get(key, out, [this](const std::string& k, const std::string& v) { return boolean(k, v); });
  }

  bool find_peek(const std::string& key) const {
    for (const auto& [k, v] : entries_)
      if (k == key) return true;
    return false;
  }

  void finish() const {
    for (std::size_t i = 0; i < entries_.size(); ++i)
      if (!used_[i])
        throw ConfigError("unknown key '" + entries_[i].first + "' in [" + name_ + "]",
                          entries_[i].first);
  }

 private:
  std::string name_;
  Section entries_;
  std::vector<bool> used_;
};

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

Scenario parse_scenario(std::istream& in, bool force_raw_table_td) {
  const RawConfig raw = read_raw(in);
  Scenario sc;

  {
    SectionReader laa(raw, "laa");
    int priority_class = 3;
    laa.integer_key("priority_class", priority_class);
    Direction direction = Direction::Downlink;
    if (const std::string* v = laa.find("direction")) {
      if (*v == "dl")
        direction = Direction::Downlink;
      else if (*v == "ul")
        direction = Direction::Uplink;
      else
        throw ConfigError("key 'direction' in [laa]: expected dl or ul, got '" + *v + "'",
                          "direction");
    }
    bool raw_td = false;
    laa.boolean_key("raw_table_td", raw_td);
    if (force_raw_table_td) raw_td = true;
    if (priority_class < 1 || priority_class > 4)
      throw ConfigError("key 'priority_class' in [laa]: must be 1..4", "priority_class");
    sc.laa = laa_class(priority_class, direction, raw_td);
    laa.number_key("defer_us", sc.laa.defer_us);
    laa.integer_key("cw_min", sc.laa.cw_min);
    laa.integer_key("max_retx_stage", sc.laa.max_retx_stage);
    laa.integer_key("retry_limit", sc.laa.retry_limit);
    laa.number_key("txop_us", sc.laa.txop_us);
    laa.number_key("lte_slot_us", sc.laa.lte_slot_us);
    laa.number_key("data_rate_mbps", sc.laa.data_rate_mbps);
    laa.number_key("data_fraction", sc.laa.data_fraction);
    laa.finish();
  }

  {
    SectionReader wifi(raw, "wifi");
    WifiMode mode = WifiMode::Basic;
    if (const std::string* v = wifi.find("mode")) {
      if (*v == "basic")
        mode = WifiMode::Basic;
      else if (*v == "vht")
        mode = WifiMode::Vht;
      else
        throw ConfigError("key 'mode' in [wifi]: expected basic or vht, got '" + *v + "'", "mode");
    }
    sc.wifi = mode == WifiMode::Vht ? vht_wifi() : table_ii_wifi();
    wifi.integer_key("cw_min", sc.wifi.cw_min);
    wifi.integer_key("max_backoff_stage", sc.wifi.max_backoff_stage);
    wifi.number_key("difs_us", sc.wifi.difs_us);
    wifi.number_key("sifs_us", sc.wifi.sifs_us);
    wifi.number_key("slot_us", sc.wifi.slot_us);
    wifi.number_key("phy_header_us", sc.wifi.phy_header_us);
    wifi.integer_key("mac_header_bytes", sc.wifi.mac_header_bytes);
    wifi.number_key("ack_fixed_us", sc.wifi.ack_fixed_us);
    wifi.integer_key("ack_bytes", sc.wifi.ack_bytes);
    wifi.number_key("data_rate_mbps", sc.wifi.data_rate_mbps);
    wifi.number_key("basic_rate_mbps", sc.wifi.basic_rate_mbps);
    wifi.number_key("prop_delay_us", sc.wifi.prop_delay_us);
    wifi.boolean_key("include_prop_delay", sc.wifi.include_prop_delay);
    if (mode == WifiMode::Vht) {
      if (wifi.find_peek("payload_bytes"))
        throw ConfigError(
            "key 'payload_bytes' in [wifi]: fixed to n_mpdu * mpdu_bytes in vht mode",
            "payload_bytes");
      wifi.integer_key("n_mpdu", sc.wifi.n_mpdu);
      wifi.integer_key("mpdu_bytes", sc.wifi.mpdu_bytes);
      wifi.integer_key("bar_bytes", sc.wifi.bar_bytes);
      wifi.integer_key("ba_bytes", sc.wifi.ba_bytes);
      sc.wifi.payload_bytes =
          static_cast<long long>(sc.wifi.n_mpdu) * sc.wifi.mpdu_bytes;
    } else {
      long long payload = sc.wifi.payload_bytes;
      int tmp = static_cast<int>(payload);
      wifi.integer_key("payload_bytes", tmp);
      sc.wifi.payload_bytes = tmp;
    }
    wifi.finish();
  }

  {
    SectionReader scen(raw, "scenario");
    scen.integer_key("n_wifi", sc.n_wifi);
    scen.integer_key("n_laa", sc.n_laa);
    scen.integer_key("baseline_n", sc.baseline_n);
    scen.finish();
  }

  {
    SectionReader solver(raw, "solver");
    solver.number_key("damping", sc.solver.damping);
    solver.number_key("tol", sc.solver.tol);
    solver.integer_key("max_iter", sc.solver.max_iter);
    solver.number_key("grid_coarse_us", sc.solver.grid_coarse_us);
    solver.number_key("grid_fine_us", sc.solver.grid_fine_us);
    solver.integer_key("m_laa_search_cap", sc.solver.m_laa_search_cap);
    solver.boolean_key("snap_txop_grid", sc.solver.snap_txop_grid);
    solver.finish();
  }

  try {
    validate(sc);
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid configuration: ") + e.what());
  }
  return sc;
}

Scenario load_scenario(const std::string& path, bool force_raw_table_td) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_scenario(in, force_raw_table_td);
}

std::vector<std::pair<std::string, std::string>> scenario_echo(const Scenario& sc) {
  std::vector<std::pair<std::string, std::string>> out;
  auto add = [&](const std::string& k, const std::string& v) { out.emplace_back(k, v); };
  add("scenario.n_wifi", std::to_string(sc.n_wifi));
  add("scenario.n_laa", std::to_string(sc.n_laa));
  add("scenario.baseline_n", std::to_string(sc.effective_baseline()));
  add("wifi.mode", sc.wifi.mode == WifiMode::Vht ? "vht" : "basic");
  add("wifi.cw_min", std::to_string(sc.wifi.cw_min));
  add("wifi.max_backoff_stage", std::to_string(sc.wifi.max_backoff_stage));
  add("wifi.difs_us", format_value(sc.wifi.difs_us));
  add("wifi.sifs_us", format_value(sc.wifi.sifs_us));
  add("wifi.slot_us", format_value(sc.wifi.slot_us));
  add("wifi.phy_header_us", format_value(sc.wifi.phy_header_us));
  add("wifi.mac_header_bytes", std::to_string(sc.wifi.mac_header_bytes));
  add("wifi.ack_fixed_us", format_value(sc.wifi.ack_fixed_us));
  add("wifi.ack_bytes", std::to_string(sc.wifi.ack_bytes));
  add("wifi.payload_bytes", std::to_string(sc.wifi.payload_bytes));
  add("wifi.data_rate_mbps", format_value(sc.wifi.data_rate_mbps));
  add("wifi.basic_rate_mbps", format_value(sc.wifi.basic_rate_mbps));
  add("wifi.prop_delay_us", format_value(sc.wifi.prop_delay_us));
  add("wifi.include_prop_delay", sc.wifi.include_prop_delay ? "true" : "false");
  if (sc.wifi.mode == WifiMode::Vht) {
    add("wifi.n_mpdu", std::to_string(sc.wifi.n_mpdu));
    add("wifi.mpdu_bytes", std::to_string(sc.wifi.mpdu_bytes));
    add("wifi.bar_bytes", std::to_string(sc.wifi.bar_bytes));
    add("wifi.ba_bytes", std::to_string(sc.wifi.ba_bytes));
  }
  add("laa.priority_class", std::to_string(sc.laa.priority_class));
  add("laa.direction", sc.laa.direction == Direction::Uplink ? "ul" : "dl");
  add("laa.defer_us", format_value(sc.laa.defer_us));
  add("laa.cw_min", std::to_string(sc.laa.cw_min));
  add("laa.max_retx_stage", std::to_string(sc.laa.max_retx_stage));
  add("laa.retry_limit", std::to_string(sc.laa.retry_limit));
  add("laa.txop_us", format_value(sc.laa.txop_us));
  add("laa.lte_slot_us", format_value(sc.laa.lte_slot_us));
  add("laa.data_rate_mbps", format_value(sc.laa.data_rate_mbps));
  add("laa.data_fraction", format_value(sc.laa.data_fraction));
  add("solver.damping", format_value(sc.solver.damping));
  add("solver.tol", format_value(sc.solver.tol));
  add("solver.max_iter", std::to_string(sc.solver.max_iter));
  add("solver.grid_coarse_us", format_value(sc.solver.grid_coarse_us));
  add("solver.grid_fine_us", format_value(sc.solver.grid_fine_us));
  add("solver.m_laa_search_cap", std::to_string(sc.solver.m_laa_search_cap));
  add("solver.snap_txop_grid", sc.solver.snap_txop_grid ? "true" : "false");
  return out;
}

}  // namespace coexfair
