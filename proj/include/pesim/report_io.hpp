#pragma once

#include <iomanip>
#include <sstream>
#include <string>

#include "json.hpp"
#include "pesim/verify.hpp"

// Report serialization. JSON output is fully determined by the report
// contents: ordered keys, no timestamps, no environment echoes, so equal
// campaigns serialize to equal bytes.

namespace pesim {

inline nlohmann::ordered_json scenario_to_json(const Scenario& sc) {
  nlohmann::ordered_json j;
  j["design"] = sc.design;
  j["ip_sequence"] = sc.ip_sequence;
  auto events = nlohmann::ordered_json::array();
  for (const auto& ev : sc.la_schedule)
    events.push_back({{"cycle", ev.cycle}, {"offset", ev.offset}, {"value", ev.value}});
  j["la_schedule"] = std::move(events);
  j["label"] = sc.label;
  return j;
}

inline Scenario scenario_from_json(const nlohmann::json& j) {
  Scenario sc;
  sc.design = j.at("design").get<std::string>();
  sc.ip_sequence = j.at("ip_sequence").get<std::vector<std::uint64_t>>();
  if (j.contains("la_schedule"))
    for (const auto& ev : j.at("la_schedule")) {
      LaEvent e;
      e.cycle = ev.at("cycle").get<int>();
      e.offset = ev.at("offset").get<SimTime>();
      e.value = ev.at("value").get<int>();
      sc.la_schedule.push_back(e);
    }
  if (j.contains("label")) sc.label = j.at("label").get<std::string>();
  return sc;
}

inline nlohmann::ordered_json report_to_json(const Report& rep,
                                             const CampaignConfig& cfg) {
  nlohmann::ordered_json j;
  j["campaign"] = rep.campaign;
  j["design"] = rep.design;
  {
    nlohmann::ordered_json c;
    c["seed"] = rep.seed;
    c["rng"] = rep.rng;
    c["clock_period"] = rep.clock_period;
    c["device_delay"] = cfg.sim.device_delay;
    c["threshold_low"] = cfg.sim.threshold_low;
    c["threshold_high"] = cfg.sim.threshold_high;
    c["max_settle_iterations"] = cfg.sim.max_settle_iterations;
    c["sample_offset"] = cfg.sim.sample_offset;
    j["config"] = std::move(c);
  }
  {
    nlohmann::ordered_json p = nlohmann::ordered_json::object();
    for (const auto& [key, value] : rep.params) p[key] = value;
    j["params"] = std::move(p);
  }
  j["counts"] = {{"total", rep.total_cases},
                 {"passed", rep.passed},
                 {"failed", rep.failed}};
  j["onehot"] = {{"samples", rep.onehot_samples},
                 {"violations", rep.onehot_violations}};
  if (rep.has_activity)
    j["activity"] = {{"weighted", rep.weighted_activity},
                     {"logic_transitions", rep.logic_transitions},
                     {"x_transitions", rep.x_transitions}};
  auto fails = nlohmann::ordered_json::array();
  for (const auto& f : rep.failures) {
    nlohmann::ordered_json c;
    c["scenario"] = scenario_to_json(f.scenario);
    c["expected"] = f.expected;
    c["observed"] = f.observed;
    c["detail"] = f.detail;
    fails.push_back(std::move(c));
  }
  j["failures"] = std::move(fails);
  if (!rep.error.empty()) j["error"] = rep.error;
  j["verdict"] = rep.pass() ? "pass" : "fail";
  return j;
}

inline std::string report_to_json_string(const Report& rep,
                                         const CampaignConfig& cfg) {
  return report_to_json(rep, cfg).dump(2) + "\n";
}

inline std::string report_to_table(const Report& rep) {
  std::ostringstream out;
  const auto row = [&](const std::string& key, const std::string& value) {
    out << std::left << std::setw(22) << key << value << "\n";
  };
  row("campaign", rep.campaign);
  row("design", rep.design);
  row("seed", std::to_string(rep.seed));
  row("clock period", std::to_string(rep.clock_period));
  for (const auto& [key, value] : rep.params) row(key, value);
  row("cases", std::to_string(rep.total_cases) + " total / " +
                   std::to_string(rep.passed) + " passed / " +
                   std::to_string(rep.failed) + " failed");
  row("one-hot", std::to_string(rep.onehot_samples) + " samples / " +
                     std::to_string(rep.onehot_violations) + " violations");
  if (rep.has_activity) {
    std::ostringstream act;
    act << rep.weighted_activity << " weighted / " << rep.logic_transitions
        << " logic / " << rep.x_transitions << " x";
    row("activity", act.str());
  }
  if (!rep.error.empty()) row("error", rep.error);
  row("verdict", rep.pass() ? "PASS" : "FAIL");
  if (!rep.failures.empty()) {
    out << "\nrecorded failures (" << rep.failures.size() << " of "
        << rep.failed << "):\n";
    out << std::left << std::setw(34) << "  label" << std::setw(14) << "expected"
        << std::setw(14) << "observed" << "detail\n";
    for (const auto& f : rep.failures)
      out << "  " << std::left << std::setw(32) << f.scenario.label
          << std::setw(14) << f.expected << std::setw(14) << f.observed
          << f.detail << "\n";
  }
  return out.str();
}

}  // namespace pesim
