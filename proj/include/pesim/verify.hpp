#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "pesim/behavioral.hpp"
#include "pesim/designs.hpp"
#include "pesim/sim.hpp"

// Verification campaigns. Every campaign expands to a list of independently
// simulated scenarios, compares sampled outputs against the behavioral
// model, and aggregates into a Report. Case order is fixed by index, so a
// run is reproducible for any worker count and any stored failure can be
// replayed on its own.

namespace pesim {

struct LaEvent {
  int cycle = 0;        // evaluation this event belongs to
  SimTime offset = 0;   // ticks after that cycle's rising clock edge
  int value = 0;

  bool operator==(const LaEvent&) const = default;
};

struct Scenario {
  std::string design;
  std::vector<std::uint64_t> ip_sequence;  // one input vector per cycle, bit i = priority i
  std::vector<LaEvent> la_schedule;
  std::string label;

  bool operator==(const Scenario&) const = default;
};

struct CampaignConfig {
  SimTime clock_period = 100;
  SimConfig sim;
  std::uint64_t seed = 12345;
  int jobs = 1;
  std::size_t max_recorded_failures = 100;
};

struct CaseFailure {
  Scenario scenario;
  std::string expected;  // output logic, index 0 first
  std::string observed;
  std::string detail;
};

struct Report {
  std::string campaign;
  std::string design;
  std::uint64_t seed = 0;
  std::string rng = "mt19937_64";
  SimTime clock_period = 100;
  std::vector<std::pair<std::string, std::string>> params;

  long long total_cases = 0;
  long long passed = 0;
  long long failed = 0;
  long long onehot_samples = 0;
  long long onehot_violations = 0;

  bool has_activity = false;
  double weighted_activity = 0.0;
  long long logic_transitions = 0;
  long long x_transitions = 0;

  std::string error;  // first simulation-level abort, empty when none
  std::vector<CaseFailure> failures;  // capped at max_recorded_failures

  bool pass() const { return failed == 0 && error.empty(); }
};

// --- scenario execution -------------------------------------------------------

// Scenario timing: cycle c covers [cP, (c+1)P) with the low clock phase
// first; input vector c applies at cP, look-ahead events at cP + P/2 + offset.
inline Stimulus scenario_to_stimulus(const Scenario& sc, const Netlist& net,
                                     const CampaignConfig& cfg,
                                     SimTime trailing_ticks = 0) {
  const SimTime period = cfg.clock_period;
  if (period < 2 || period % 2 != 0) throw SimError("clock period must be even and at least 2");
  if (sc.ip_sequence.empty()) throw SimError("scenario has no input vectors");
  Stimulus stim;
  stim.clock_period = period;
  stim.clock_high_first = false;
  stim.duration = static_cast<SimTime>(sc.ip_sequence.size()) * period + trailing_ticks;

  const std::size_t width = net.inputs.size();
  if (width == 0 || width > 64) throw SimError("netlist input width unsupported");
  std::uint64_t prev = 0;
  for (std::size_t c = 0; c < sc.ip_sequence.size(); ++c) {
    const std::uint64_t v = sc.ip_sequence[c];
    if (width < 64 && (v >> width) != 0)
      throw SimError("input vector wider than the netlist");
    for (std::size_t i = 0; i < width; ++i) {
      const int bit = static_cast<int>((v >> i) & 1u);
      const int was = c == 0 ? 0 : static_cast<int>((prev >> i) & 1u);
      if (bit != was)
        stim.add_transition(net.inputs[i], static_cast<SimTime>(c) * period, bit);
    }
    prev = v;
  }

  if (!sc.la_schedule.empty()) {
    if (net.lookahead_in < 0)
      throw SimError("scenario schedules a look-ahead the netlist does not have");
    SimTime prev_time = -1;
    for (const auto& ev : sc.la_schedule) {
      if (ev.cycle < 0 || static_cast<std::size_t>(ev.cycle) >= sc.ip_sequence.size())
        throw SimError("look-ahead event outside the scenario");
      if (ev.offset < 0 || ev.offset >= period / 2)
        throw SimError("look-ahead offset outside the evaluation half");
      if (ev.value != 0 && ev.value != 1) throw SimError("look-ahead value must be 0 or 1");
      const SimTime t = static_cast<SimTime>(ev.cycle) * period + period / 2 + ev.offset;
      if (t <= prev_time) throw SimError("look-ahead events not strictly ascending");
      prev_time = t;
      stim.add_transition(net.lookahead_in, t, ev.value);
    }
  }
  return stim;
}

namespace detail {

struct CaseOutcome {
  bool pass = true;
  long long onehot_samples = 0;
  long long onehot_violations = 0;
  std::unique_ptr<CaseFailure> failure;
  std::string error;
};

template <typename Fn>
inline void run_indexed(long long total, int jobs, Fn&& fn) {
  if (jobs <= 1) {
    for (long long i = 0; i < total; ++i) fn(i);
    return;
  }
  std::atomic<long long> next{0};
  std::vector<std::thread> pool;
  const int workers = std::min<long long>(jobs, total) > 0
                          ? static_cast<int>(std::min<long long>(jobs, total))
                          : 1;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&]() {
      for (;;) {
        const long long i = next.fetch_add(1, std::memory_order_relaxed);
        if (i >= total) return;
        fn(i);
      }
    });
  for (auto& th : pool) th.join();
}

inline PEVector golden_outputs(const DesignId& id, std::uint64_t ip, int la_final) {
  const PEVector ipv = PEVector::from_uint(ip, static_cast<std::size_t>(id.width()));
  if (id.kind == DesignId::Kind::Cascaded) return pe_general(ipv);
  const bool disabled = id.disable_on_high() ? la_final == 1 : la_final == 0;
  return disabled ? PEVector(8) : pe_general(ipv);
}

// Simulates one scenario and compares the last cycle's sampled outputs with
// the behavioral model; every cycle's sample point feeds the one-hot
// monitor. For the robust design the regenerated disable and the next-stage
// disable are checked as well.
inline CaseOutcome evaluate_scenario(const DesignId& id, const Netlist& net,
                                     const Scenario& sc, int la_final,
                                     const CampaignConfig& cfg) {
  CaseOutcome out;
  try {
    const Stimulus stim = scenario_to_stimulus(sc, net, cfg);
    const Waveform wave = simulate(net, stim, cfg.sim);
    const SimTime period = cfg.clock_period;
    const auto cycles = static_cast<SimTime>(sc.ip_sequence.size());

    for (SimTime c = 0; c < cycles; ++c) {
      const SimTime ts = (c + 1) * period - cfg.sim.sample_offset;
      int ones = 0;
      for (const int op : net.outputs)
        if (cfg.sim.logic_of(wave.at(op, ts).voltage) == Logic::One) ++ones;
      ++out.onehot_samples;
      if (ones > 1) ++out.onehot_violations;
    }

    const SimTime ts = cycles * period - cfg.sim.sample_offset;
    const PEVector want = golden_outputs(id, sc.ip_sequence.back(), la_final);
    const std::string expected = want.to_string();
    std::string observed(expected.size(), '?');
    std::string detail;
    for (std::size_t i = 0; i < net.outputs.size(); ++i) {
      const Logic l = cfg.sim.logic_of(wave.at(net.outputs[i], ts).voltage);
      observed[i] = logic_char(l);
      if (observed[i] == expected[i]) continue;
      if (detail.empty()) {
        const std::string& name =
            net.nodes[static_cast<std::size_t>(net.outputs[i])].name;
        if (l == Logic::X) detail = "x on " + name;
        else if (l == Logic::One) detail = "stale high " + name;
        else detail = "dropped high " + name;
      }
    }
    if (id.kind == DesignId::Kind::Robust8 && detail.empty()) {
      const auto r = pe8(PEVector::from_uint(sc.ip_sequence.back(), 8), la_final);
      const Logic li = cfg.sim.logic_of(wave.at(net.find("LAint"), ts).voltage);
      const Logic lo = cfg.sim.logic_of(wave.at(net.lookahead_out, ts).voltage);
      if (li != (r.la_inter ? Logic::One : Logic::Zero))
        detail = "la_inter reads " + std::string(1, logic_char(li)) + " expected " +
                 std::to_string(r.la_inter);
      else if (lo != (r.la_out ? Logic::One : Logic::Zero))
        detail = "la_out reads " + std::string(1, logic_char(lo)) + " expected " +
                 std::to_string(r.la_out);
    }
    if (!detail.empty()) {
      out.pass = false;
      out.failure = std::make_unique<CaseFailure>(
          CaseFailure{sc, expected, observed, detail});
    }
  } catch (const SimError& e) {
    out.pass = false;
    out.error = sc.label + ": " + e.what();
  }
  return out;
}

inline void finalize(Report& rep, std::vector<CaseOutcome>& outcomes,
                     const CampaignConfig& cfg) {
  rep.total_cases = static_cast<long long>(outcomes.size());
  for (auto& o : outcomes) {
    rep.onehot_samples += o.onehot_samples;
    rep.onehot_violations += o.onehot_violations;
    if (o.pass) {
      ++rep.passed;
      continue;
    }
    ++rep.failed;
    if (!o.error.empty() && rep.error.empty()) rep.error = o.error;
    if (o.failure && rep.failures.size() < cfg.max_recorded_failures)
      rep.failures.push_back(std::move(*o.failure));
  }
}

inline Report base_report(const char* campaign, const DesignId& id,
                          const Netlist& net, const CampaignConfig& cfg) {
  Report rep;
  rep.campaign = campaign;
  rep.design = id.name();
  rep.seed = cfg.seed;
  rep.clock_period = cfg.clock_period;
  const auto count = device_count(net);
  rep.params.emplace_back("devices_total", std::to_string(count.total()));
  rep.params.emplace_back("devices_nmos", std::to_string(count.nmos));
  rep.params.emplace_back("devices_pmos", std::to_string(count.pmos));
  return rep;
}

inline std::string ip_label(std::uint64_t v, int width) {
  return PEVector::from_uint(v, static_cast<std::size_t>(width)).to_string();
}

}  // namespace detail

// --- campaigns ------------------------------------------------------------------

// Static functional equivalence against the behavioral model: every input
// vector, and for 8-bit designs every look-ahead value, each simulated from
// a cold start. Designs flagged as needing it get an idle all-zero lead
// cycle before the vector under test.
inline Report exhaustive_equivalence(const DesignId& id, const CampaignConfig& cfg) {
  const Netlist net = id.build();
  Report rep = detail::base_report("exhaustive_equivalence", id, net, cfg);
  const int width = id.width();
  if (width != 8 && width != 16)
    throw std::invalid_argument("exhaustive equivalence covers widths 8 and 16 only");
  rep.params.emplace_back("width", std::to_string(width));

  const bool lead = id.needs_idle_lead_cycle();
  const long long total = width == 8 ? 512 : 65536;
  std::vector<detail::CaseOutcome> outcomes(static_cast<std::size_t>(total));
  detail::run_indexed(total, cfg.jobs, [&](long long idx) {
    Scenario sc;
    sc.design = id.name();
    int la_final;
    if (width == 8) {
      const std::uint64_t ip = static_cast<std::uint64_t>(idx) & 0xFF;
      const int la = static_cast<int>(idx >> 8);
      sc.ip_sequence = lead ? std::vector<std::uint64_t>{0, ip}
                            : std::vector<std::uint64_t>{ip};
      sc.la_schedule = {LaEvent{lead ? 1 : 0, 0, la}};
      sc.label = "eq:ip=" + detail::ip_label(ip, 8) + ":la=" + std::to_string(la);
      la_final = la;
    } else {
      const auto ip = static_cast<std::uint64_t>(idx);
      sc.ip_sequence = {ip};
      sc.label = "eq:ip=" + detail::ip_label(ip, width);
      la_final = 0;
    }
    outcomes[static_cast<std::size_t>(idx)] =
        detail::evaluate_scenario(id, net, sc, la_final, cfg);
  });
  detail::finalize(rep, outcomes, cfg);
  return rep;
}

// Disable/enable timing sweep: for every offset, both look-ahead directions
// and all 256 input vectors, the look-ahead flips that many ticks after the
// evaluation edge and the sampled result must match the final value.
inline Report race_sweep(const DesignId& id, const std::vector<SimTime>& offsets,
                         const CampaignConfig& cfg) {
  const Netlist net = id.build();
  if (net.lookahead_in < 0)
    throw std::invalid_argument("race sweep needs a design with a look-ahead input");
  if (id.width() != 8)
    throw std::invalid_argument("race sweep covers 8-bit designs only");
  if (offsets.empty()) throw std::invalid_argument("race sweep needs offsets");
  for (const SimTime off : offsets)
    if (off < 0 || off >= cfg.clock_period / 2)
      throw std::invalid_argument("race offset outside the evaluation half");

  Report rep = detail::base_report("race_sweep", id, net, cfg);
  {
    std::string list;
    for (const SimTime off : offsets)
      list += (list.empty() ? "" : ",") + std::to_string(off);
    rep.params.emplace_back("offsets", list);
  }
  const bool lead = id.needs_idle_lead_cycle();
  const int evc = lead ? 1 : 0;
  const long long total = static_cast<long long>(offsets.size()) * 2 * 256;
  std::vector<detail::CaseOutcome> outcomes(static_cast<std::size_t>(total));
  detail::run_indexed(total, cfg.jobs, [&](long long idx) {
    const SimTime off = offsets[static_cast<std::size_t>(idx / 512)];
    const int dir = static_cast<int>((idx % 512) / 256);  // 0: 0->1, 1: 1->0
    const std::uint64_t ip = static_cast<std::uint64_t>(idx % 256);
    const int start = dir == 0 ? 0 : 1;
    const int final_la = 1 - start;
    Scenario sc;
    sc.design = id.name();
    sc.ip_sequence = lead ? std::vector<std::uint64_t>{0, ip}
                          : std::vector<std::uint64_t>{ip};
    if (off == 0) {
      sc.la_schedule = {LaEvent{evc, 0, final_la}};
    } else {
      sc.la_schedule = {LaEvent{evc, 0, start}, LaEvent{evc, off, final_la}};
    }
    sc.label = "race:off=" + std::to_string(off) +
               (dir == 0 ? ":dir=rise" : ":dir=fall") +
               ":ip=" + detail::ip_label(ip, 8);
    outcomes[static_cast<std::size_t>(idx)] =
        detail::evaluate_scenario(id, net, sc, final_la, cfg);
  });
  detail::finalize(rep, outcomes, cfg);
  return rep;
}

struct PairMode {
  bool exhaustive = true;
  long long count = 0;  // random pairs when not exhaustive
};

// Back-to-back vector pairs without an idle cycle in between: v1 conditions
// the internal charge, v2 is checked. Exhaustive covers all 65,536 ordered
// 8-bit pairs; random mode draws seeded pairs for any width.
inline Report charge_share_scan(const DesignId& id, const PairMode& mode,
                                const CampaignConfig& cfg) {
  const Netlist net = id.build();
  const int width = id.width();
  if (mode.exhaustive && width != 8)
    throw std::invalid_argument("exhaustive pair scan covers 8-bit designs only");
  if (!mode.exhaustive && mode.count < 1)
    throw std::invalid_argument("random pair scan needs a positive count");

  Report rep = detail::base_report("charge_share_scan", id, net, cfg);
  rep.params.emplace_back("pairs", mode.exhaustive
                                       ? std::string("exhaustive")
                                       : "random:" + std::to_string(mode.count));

  std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs;
  long long total;
  if (mode.exhaustive) {
    total = 65536;
  } else {
    total = mode.count;
    pairs.reserve(static_cast<std::size_t>(total));
    std::mt19937_64 gen(cfg.seed);
    const std::uint64_t mask =
        width == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
    for (long long i = 0; i < total; ++i) {
      const std::uint64_t v1 = gen() & mask;
      const std::uint64_t v2 = gen() & mask;
      pairs.emplace_back(v1, v2);
    }
  }

  const int la_enabled = net.lookahead_in < 0 ? 0 : (id.disable_on_high() ? 0 : 1);
  std::vector<detail::CaseOutcome> outcomes(static_cast<std::size_t>(total));
  detail::run_indexed(total, cfg.jobs, [&](long long idx) {
    const std::uint64_t v1 = mode.exhaustive
                                 ? static_cast<std::uint64_t>(idx) >> 8
                                 : pairs[static_cast<std::size_t>(idx)].first;
    const std::uint64_t v2 = mode.exhaustive
                                 ? static_cast<std::uint64_t>(idx) & 0xFF
                                 : pairs[static_cast<std::size_t>(idx)].second;
    Scenario sc;
    sc.design = id.name();
    sc.ip_sequence = {v1, v2};
    if (net.lookahead_in >= 0) sc.la_schedule = {LaEvent{0, 0, la_enabled}};
    sc.label = "pair:" + detail::ip_label(v1, width) + ">" + detail::ip_label(v2, width);
    auto out = detail::evaluate_scenario(id, net, sc, la_enabled, cfg);
    if (out.failure) {
      // sharpen the classification for this campaign
      auto& d = out.failure->detail;
      if (d.rfind("x on", 0) != 0) d = "charge disturb: " + d;
    }
    outcomes[static_cast<std::size_t>(idx)] = std::move(out);
  });
  detail::finalize(rep, outcomes, cfg);
  return rep;
}

// Transition audit over one long run: during every evaluation exactly the
// winning output may rise, during the following low phase exactly that
// output may fall, and nothing else moves. Complements equivalence by
// catching glitches between sample points.
inline Report switching_audit(const DesignId& id,
                              const std::vector<std::uint64_t>& cycles,
                              const CampaignConfig& cfg) {
  const Netlist net = id.build();
  if (cycles.empty()) throw std::invalid_argument("switching audit needs cycles");
  Report rep = detail::base_report("switching_audit", id, net, cfg);
  rep.params.emplace_back("cycles", std::to_string(cycles.size()));
  const int la_enabled = net.lookahead_in < 0 ? 0 : (id.disable_on_high() ? 0 : 1);

  Scenario sc;
  sc.design = id.name();
  sc.ip_sequence = cycles;
  if (net.lookahead_in >= 0) sc.la_schedule = {LaEvent{0, 0, la_enabled}};
  sc.label = "audit:" + std::to_string(cycles.size()) + "cycles";

  const SimTime period = cfg.clock_period;
  const SimTime half = period / 2;
  const auto n_cycles = static_cast<SimTime>(cycles.size());
  try {
    const Stimulus stim = scenario_to_stimulus(sc, net, cfg, half);
    const Waveform wave = simulate(net, stim, cfg.sim);

    const std::size_t halves = static_cast<std::size_t>(2 * n_cycles + 1);
    std::vector<long long> rises(halves, 0), falls(halves, 0), xs(halves, 0);
    for (const int op : net.outputs) {
      const auto& recs = wave.records[static_cast<std::size_t>(op)];
      for (std::size_t k = 1; k < recs.size(); ++k) {
        const Logic prev = cfg.sim.logic_of(recs[k - 1].state.voltage);
        const Logic cur = cfg.sim.logic_of(recs[k].state.voltage);
        if (prev == cur) continue;
        const auto h = static_cast<std::size_t>(recs[k].time / half);
        if (h >= halves) continue;
        if (prev == Logic::X || cur == Logic::X) ++xs[h];
        else if (cur == Logic::One) ++rises[h];
        else ++falls[h];
      }
    }

    const auto expect = [&](SimTime c, std::size_t h, long long want_rises,
                            long long want_falls, const char* phase) {
      rep.total_cases += 1;
      const bool ok = rises[h] == want_rises && falls[h] == want_falls && xs[h] == 0;
      if (ok) {
        ++rep.passed;
        return;
      }
      ++rep.failed;
      if (rep.failures.size() < cfg.max_recorded_failures) {
        Scenario one;
        one.design = sc.design;
        one.ip_sequence = {c < n_cycles ? cycles[static_cast<std::size_t>(c)] : 0};
        one.la_schedule = sc.la_schedule;
        one.label = "audit:cycle=" + std::to_string(c) + ":" + phase;
        rep.failures.push_back(CaseFailure{
            std::move(one),
            "rises=" + std::to_string(want_rises) + " falls=" + std::to_string(want_falls) + " x=0",
            "rises=" + std::to_string(rises[h]) + " falls=" + std::to_string(falls[h]) +
                " x=" + std::to_string(xs[h]),
            std::string(phase) + " phase transition count"});
      }
    };

    expect(0, 0, 0, 0, "lead precharge");
    for (SimTime c = 0; c < n_cycles; ++c) {
      const bool active = cycles[static_cast<std::size_t>(c)] != 0;
      expect(c, static_cast<std::size_t>(2 * c + 1), active ? 1 : 0, 0, "evaluate");
      expect(c, static_cast<std::size_t>(2 * c + 2), 0, active ? 1 : 0, "predischarge");
    }

    for (SimTime c = 0; c < n_cycles; ++c) {
      const SimTime ts = (c + 1) * period - cfg.sim.sample_offset;
      int ones = 0;
      for (const int op : net.outputs)
        if (cfg.sim.logic_of(wave.at(op, ts).voltage) == Logic::One) ++ones;
      ++rep.onehot_samples;
      if (ones > 1) ++rep.onehot_violations;
    }

    const auto activity = switching_activity(wave, cfg.sim);
    rep.has_activity = true;
    rep.weighted_activity = activity.weighted;
    rep.logic_transitions = activity.logic_transitions;
    rep.x_transitions = activity.x_transitions;
  } catch (const SimError& e) {
    rep.error = sc.label + ": " + e.what();
    rep.failed = std::max<long long>(rep.failed, 1);
  }
  return rep;
}

inline std::vector<std::uint64_t> random_cycle_inputs(long long count,
                                                      std::uint64_t seed,
                                                      int width = 8) {
  std::mt19937_64 gen(seed);
  const std::uint64_t mask =
      width >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << width) - 1);
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long long i = 0; i < count; ++i) out.push_back(gen() & mask);
  return out;
}

// Behavioral-plus-netlist check for the cascaded encoders. The behavioral
// model is compared against the flat priority function (exhaustively up to
// 16 bits, seeded random plus walking ones above); the netlist is compared
// against the behavioral model (exhaustively at 16 bits, seeded random
// above).
inline Report cascade_check(int bits, long long netlist_random_cases,
                            const CampaignConfig& cfg) {
  const DesignId id{DesignId::Kind::Cascaded, bits};
  const Netlist net = id.build();
  Report rep = detail::base_report("cascade_check", id, net, cfg);
  rep.params.emplace_back("bits", std::to_string(bits));

  const std::uint64_t mask =
      bits >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << bits) - 1);

  // behavioral level
  std::vector<std::uint64_t> behavioral_cases;
  if (bits <= 16) {
    behavioral_cases.reserve(std::size_t{1} << bits);
    for (std::uint64_t v = 0; v <= mask; ++v) behavioral_cases.push_back(v);
  } else {
    std::mt19937_64 gen(cfg.seed);
    behavioral_cases.reserve(100000 + static_cast<std::size_t>(bits));
    for (int i = 0; i < 100000; ++i) behavioral_cases.push_back(gen() & mask);
    for (int i = 0; i < bits; ++i) behavioral_cases.push_back(std::uint64_t{1} << i);
  }
  rep.params.emplace_back("behavioral_cases", std::to_string(behavioral_cases.size()));
  for (const std::uint64_t v : behavioral_cases) {
    const PEVector ip = PEVector::from_uint(v, static_cast<std::size_t>(bits));
    const PEVector got = cascade(ip);
    const PEVector want = pe_general(ip);
    ++rep.total_cases;
    if (got == want) {
      ++rep.passed;
      continue;
    }
    ++rep.failed;
    if (rep.failures.size() < cfg.max_recorded_failures) {
      Scenario sc;
      sc.design = id.name();
      sc.ip_sequence = {v};
      sc.label = "behavioral:ip=" + ip.to_string();
      rep.failures.push_back(
          CaseFailure{std::move(sc), want.to_string(), got.to_string(),
                      "behavioral cascade disagrees with the flat model"});
    }
  }

  // netlist level
  std::vector<std::uint64_t> vectors;
  if (bits <= 16) {
    vectors.reserve(std::size_t{1} << bits);
    for (std::uint64_t v = 0; v <= mask; ++v) vectors.push_back(v);
  } else {
    std::mt19937_64 gen(cfg.seed ^ 0x9e3779b97f4a7c15ull);
    vectors.reserve(static_cast<std::size_t>(netlist_random_cases));
    for (long long i = 0; i < netlist_random_cases; ++i) vectors.push_back(gen() & mask);
  }
  rep.params.emplace_back("netlist_cases", std::to_string(vectors.size()));
  const auto total = static_cast<long long>(vectors.size());
  std::vector<detail::CaseOutcome> outcomes(vectors.size());
  detail::run_indexed(total, cfg.jobs, [&](long long idx) {
    const std::uint64_t v = vectors[static_cast<std::size_t>(idx)];
    Scenario sc;
    sc.design = id.name();
    sc.ip_sequence = {v};
    sc.label = "netlist:ip=" + detail::ip_label(v, bits);
    outcomes[static_cast<std::size_t>(idx)] = detail::evaluate_scenario(id, net, sc, 0, cfg);
  });
  const long long behavioral_total = rep.total_cases;
  rep.total_cases = 0;
  detail::finalize(rep, outcomes, cfg);  // adds netlist passed/failed on top
  rep.total_cases += behavioral_total;
  return rep;
}

// Re-runs one stored scenario; the final look-ahead value is recovered from
// the schedule (or the design's enabled level when it has none).
inline Report replay_scenario(const Scenario& sc, const CampaignConfig& cfg) {
  const auto id = DesignId::parse(sc.design);
  if (!id) throw std::invalid_argument("unknown design " + sc.design);
  const Netlist net = id->build();
  Report rep = detail::base_report("replay", *id, net, cfg);
  rep.params.emplace_back("label", sc.label);
  const int la_final = sc.la_schedule.empty()
                           ? (net.lookahead_in < 0 || id->disable_on_high() ? 0 : 1)
                           : sc.la_schedule.back().value;
  std::vector<detail::CaseOutcome> outcomes(1);
  outcomes[0] = detail::evaluate_scenario(*id, net, sc, la_final, cfg);
  detail::finalize(rep, outcomes, cfg);
  return rep;
}

}  // namespace pesim
