#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "pesim/designs.hpp"
#include "pesim/netlist.hpp"
#include "pesim/report_io.hpp"
#include "pesim/sim.hpp"
#include "pesim/verify.hpp"

// Acceptance gate: one line per criterion, every tolerance and budget
// pinned here in code. Exit is nonzero when any criterion fails.

namespace {

using namespace pesim;
using Clock = std::chrono::steady_clock;

constexpr double kEquivalenceBudgetSeconds = 10.0;
constexpr double kPairScanBudgetSeconds = 300.0;
constexpr double kCascadeBudgetSeconds = 600.0;
constexpr double kChargeTolerance = 1e-9;
constexpr int kDeviceBandLow = 60;
constexpr int kDeviceBandHigh = 110;
constexpr int kDeviceTarget = 79;

int failures = 0;

void line(bool ok, const std::string& name, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " - " << name;
  if (!detail.empty()) std::cout << " [" << detail << "]";
  std::cout << "\n";
  if (!ok) ++failures;
}

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt_secs(double s) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1) << s << "s";
  return out.str();
}

CampaignConfig wide_config() {
  CampaignConfig cfg;
  cfg.jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (cfg.jobs < 1) cfg.jobs = 1;
  return cfg;
}

bool stale_high_seen(const Report& rep) {
  for (const auto& f : rep.failures)
    if (f.detail.rfind("stale high", 0) == 0) return true;
  return false;
}

bool charge_disturb_seen(const Report& rep) {
  for (const auto& f : rep.failures)
    if (f.detail.rfind("charge disturb:", 0) == 0 || f.detail.rfind("x on", 0) == 0)
      return true;
  return false;
}

// Random rail-free pass-device trees: resolving must conserve total charge,
// equalize the component, and be a fixpoint on its own result.
bool charge_is_conserved(std::string& detail) {
  std::mt19937_64 gen(0xACCE97);
  std::uniform_real_distribution<double> volt(0.0, 1.0);
  std::uniform_real_distribution<double> caps(0.5, 20.0);
  double worst = 0.0;
  for (int round = 0; round < 10000; ++round) {
    const int n = 2 + static_cast<int>(gen() % 11);
    Netlist net;
    net.add_node("VDD", NodeKind::Vdd);
    net.add_node("GND", NodeKind::Gnd);
    net.add_node("CLK", NodeKind::Clock);
    for (int i = 0; i < n; ++i)
      net.add_node("n" + std::to_string(i), NodeKind::Internal, caps(gen));
    for (int i = 1; i < n; ++i) {
      const int parent = static_cast<int>(gen() % static_cast<std::uint64_t>(i));
      const std::string a = "n" + std::to_string(parent);
      const std::string b = "n" + std::to_string(i);
      if (gen() & 1) net.add_device("t" + std::to_string(i), MosKind::Nmos, "VDD", a, b);
      else net.add_device("t" + std::to_string(i), MosKind::Pmos, "GND", a, b);
    }
    std::vector<NodeState> st(net.nodes.size());
    st[0] = {1.0, Strength::Driven};
    st[1] = {0.0, Strength::Driven};
    st[2] = {0.0, Strength::Driven};
    double before = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(3 + i);
      st[idx] = {volt(gen), Strength::Stored};
      before += net.nodes[idx].capacitance * st[idx].voltage;
    }
    const SimConfig cfg;
    const auto first = resolve(net, st, cfg);
    double after = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto idx = static_cast<std::size_t>(3 + i);
      after += net.nodes[idx].capacitance * first.states[idx].voltage;
      if (first.states[idx].voltage != first.states[3].voltage ||
          first.states[idx].strength != Strength::Stored) {
        detail = "component failed to equalize";
        return false;
      }
    }
    worst = std::max(worst, std::fabs(after - before));
    if (std::fabs(after - before) > kChargeTolerance) {
      detail = "charge drifted by " + std::to_string(after - before);
      return false;
    }
    const auto second = resolve(net, first.states, cfg);
    if (second.states != first.states) {
      detail = "resolve is not a fixpoint on its own result";
      return false;
    }
  }
  std::ostringstream out;
  out << "10000 trees, worst drift " << std::scientific << std::setprecision(2)
      << worst;
  detail = out.str();
  return true;
}

}  // namespace

int main() {
  const CampaignConfig cfg = wide_config();
  const DesignId robust = *DesignId::parse("robust8");
  const DesignId raceprone = *DesignId::parse("raceprone8");
  const DesignId cshare = *DesignId::parse("cshare8");

  // 1: exhaustive static equivalence on the robust design
  auto t = Clock::now();
  const Report eq = exhaustive_equivalence(robust, cfg);
  const double eq_secs = seconds_since(t);
  line(eq.pass() && eq.total_cases == 512 && eq_secs < kEquivalenceBudgetSeconds,
       "all 512 input and look-ahead combinations match the behavioral model",
       std::to_string(eq.failed) + " failures, " + fmt_secs(eq_secs) + " of " +
           fmt_secs(kEquivalenceBudgetSeconds));

  // 3 (run before 2 so its reports feed the one-hot tally)
  t = Clock::now();
  std::vector<SimTime> offsets;
  for (SimTime off = 1; off <= 24; ++off) offsets.push_back(off);
  const Report race_ok = race_sweep(robust, offsets, cfg);
  const Report race_bad = race_sweep(raceprone, offsets, cfg);
  const double race_secs = seconds_since(t);

  // 4
  t = Clock::now();
  PairMode exhaustive;
  const Report scan_ok = charge_share_scan(robust, exhaustive, cfg);
  const Report scan_bad = charge_share_scan(cshare, exhaustive, cfg);
  const double scan_secs = seconds_since(t);

  // 6
  t = Clock::now();
  const Report audit = switching_audit(robust, random_cycle_inputs(1000, cfg.seed), cfg);
  const double audit_secs = seconds_since(t);

  // 2: one-hot invariant across everything above
  {
    const long long samples = eq.onehot_samples + race_ok.onehot_samples +
                              scan_ok.onehot_samples + audit.onehot_samples;
    const long long violations = eq.onehot_violations + race_ok.onehot_violations +
                                 scan_ok.onehot_violations + audit.onehot_violations;
    line(violations == 0 && samples > 90000,
         "at most one output is high at every sample point of the robust design",
         std::to_string(samples) + " samples, " + std::to_string(violations) +
             " violations");
  }

  line(race_ok.pass() && race_bad.failed > 0 && stale_high_seen(race_bad),
       "look-ahead flips 1..24 ticks after the edge never corrupt the robust "
       "design and strand the chain design",
       std::to_string(race_ok.failed) + " robust failures, " +
           std::to_string(race_bad.failed) + " chain failures, " + fmt_secs(race_secs));

  line(scan_ok.pass() && scan_bad.failed > 0 && charge_disturb_seen(scan_bad) &&
           scan_secs < kPairScanBudgetSeconds,
       "all 65536 back-to-back vector pairs keep the robust design intact and "
       "disturb the tall-stack design",
       std::to_string(scan_ok.failed) + " robust failures, " +
           std::to_string(scan_bad.failed) + " stack failures, " + fmt_secs(scan_secs) +
           " of " + fmt_secs(kPairScanBudgetSeconds));

  // 5: structural pulldown redundancy
  {
    const Netlist rnet = build_robust_pe8();
    const int gnd = rnet.find("GND");
    bool two = gnd >= 0;
    for (const int op : rnet.outputs) {
      int count = 0;
      for (const auto& d : rnet.devices)
        if (d.kind == MosKind::Nmos &&
            ((d.source == op && d.drain == gnd) || (d.drain == op && d.source == gnd)))
          ++count;
      two = two && count == 2;
    }
    const bool rule_ok = validate(rnet, true).empty();
    const bool rule_flags = !validate(build_race_prone_pe8(), true).empty();
    line(two && rule_ok && rule_flags,
         "every robust output has exactly two ground pulldowns and the checker "
         "flags designs that lack them",
         "8 outputs at 2 each");
  }

  line(audit.pass() && audit.onehot_violations == 0 && audit.total_cases == 2001,
       "1000 random cycles toggle each sampled winner exactly once and keep "
       "the outputs free of unknowns",
       std::to_string(audit.failed) + " bad phases, " +
           std::to_string(audit.logic_transitions) + " logic transitions, " +
           fmt_secs(audit_secs));

  // 7: cascaded widths
  t = Clock::now();
  const Report cas16 = cascade_check(16, 0, cfg);
  const Report cas32 = cascade_check(32, 1000, cfg);
  const Report cas64 = cascade_check(64, 50, cfg);
  const double cas_secs = seconds_since(t);
  line(cas16.pass() && cas16.total_cases == 131072 && cas32.pass() &&
           cas64.pass() && cas_secs < kCascadeBudgetSeconds,
       "cascaded encoders agree with the flat model at 16, 32 and 64 bits",
       std::to_string(cas16.total_cases) + "+" + std::to_string(cas32.total_cases) +
           "+" + std::to_string(cas64.total_cases) + " cases, " + fmt_secs(cas_secs) +
           " of " + fmt_secs(kCascadeBudgetSeconds));

  // 8: device budget
  {
    const auto count = device_count(build_robust_pe8());
    const auto groups = device_breakdown(build_robust_pe8());
    std::ostringstream detail;
    detail << count.total() << " devices (";
    bool first = true;
    for (const auto& [name, n] : groups) {
      if (!first) detail << ", ";
      first = false;
      detail << name << " " << n.total();
    }
    detail << "), target " << kDeviceTarget << ", delta "
           << std::showpos << count.total() - kDeviceTarget;
    line(count.total() >= kDeviceBandLow && count.total() <= kDeviceBandHigh,
         "the robust device budget stays inside the 60..110 review band",
         detail.str());
  }

  // 9: determinism and charge conservation
  {
    const Report again = exhaustive_equivalence(robust, cfg);
    CampaignConfig serial = cfg;
    serial.jobs = 1;
    const Report serial_rep = exhaustive_equivalence(robust, serial);
    const bool bytes_equal =
        report_to_json_string(eq, cfg) == report_to_json_string(again, cfg) &&
        report_to_json_string(eq, cfg) == report_to_json_string(serial_rep, serial);
    std::string detail;
    const bool conserved = charge_is_conserved(detail);
    line(bytes_equal && conserved,
         "repeat campaigns serialize byte-identically and isolated charge is "
         "conserved within 1e-9",
         detail);
  }

  std::cout << (failures == 0 ? "all criteria hold" : "criteria failing") << "\n";
  return failures == 0 ? 0 : 1;
}
