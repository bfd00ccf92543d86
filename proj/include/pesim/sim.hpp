#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pesim/netlist.hpp"
#include "pesim/stimulus.hpp"

// Switch-level simulation. Devices are ideal switches controlled by the
// logic value of their gate; conducting channels merge nodes into components
// that are either driven by a rail or share their stored charge.

namespace pesim {

enum class Logic { Zero, One, X };

inline char logic_char(Logic l) {
  switch (l) {
    case Logic::Zero: return '0';
    case Logic::One: return '1';
    case Logic::X: return 'x';
  }
  return '?';
}

enum class Strength { Driven, Stored };

// Driven nodes sit exactly at a rail voltage; stored nodes hold charge at
// any voltage in [0, 1].
struct NodeState {
  double voltage = 0.0;
  Strength strength = Strength::Stored;

  bool operator==(const NodeState&) const = default;
};

struct SimError : std::runtime_error {
  explicit SimError(const std::string& what) : std::runtime_error(what) {}
};

struct OscillationError : SimError {
  std::vector<std::string> nodes;  // nodes still changing when the limit hit

  OscillationError(const std::string& what, std::vector<std::string> offending)
      : SimError(what), nodes(std::move(offending)) {}
};

struct SimConfig {
  SimTime device_delay = 1;
  double threshold_low = 0.4;   // at or below: logic 0
  double threshold_high = 0.6;  // at or above: logic 1
  int max_settle_iterations = 1000;
  SimTime sample_offset = 1;    // ticks before a falling clock edge

  Logic logic_of(double voltage) const {
    if (voltage >= threshold_high) return Logic::One;
    if (voltage <= threshold_low) return Logic::Zero;
    return Logic::X;
  }

  void check() const {
    if (device_delay < 1) throw SimError("device_delay must be at least 1");
    if (!(0.0 < threshold_low && threshold_low < threshold_high && threshold_high < 1.0))
      throw SimError("thresholds must satisfy 0 < low < high < 1");
    if (max_settle_iterations < 1) throw SimError("max_settle_iterations must be positive");
    if (sample_offset < 0) throw SimError("sample_offset must be non-negative");
  }
};

struct ResolveResult {
  std::vector<NodeState> states;
  bool rail_short = false;
  std::vector<int> shorted;  // ascending indices of nodes seeing both rails
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }

  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }

  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(b)] = a;
  }
};

// Solves one conduction hypothesis. Components containing a high and a low
// source are rail shorts: every member reads X. Components with exactly one
// rail polarity are driven there; isolated components share charge weighted
// by capacitance. An all-equal isolated component keeps its voltage bit for
// bit so repeated passes reach a fixpoint.
inline void solve_components(const Netlist& net, const std::vector<NodeState>& in,
                             const std::vector<char>& device_on,
                             std::vector<NodeState>& out,
                             std::vector<char>& shorted, bool& any_short) {
  const std::size_t n = net.nodes.size();
  UnionFind uf(n);
  for (std::size_t d = 0; d < net.devices.size(); ++d)
    if (device_on[d]) uf.unite(net.devices[d].source, net.devices[d].drain);

  struct Component {
    bool high = false, low = false;
    double charge = 0.0, cap = 0.0;
    double min_v = std::numeric_limits<double>::infinity();
    double max_v = -std::numeric_limits<double>::infinity();
  };
  std::vector<Component> comp(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& c = comp[static_cast<std::size_t>(uf.find(static_cast<int>(i)))];
    if (is_source_kind(net.nodes[i].kind)) {
      (in[i].voltage >= 0.5 ? c.high : c.low) = true;
    } else {
      c.charge += net.nodes[i].capacitance * in[i].voltage;
      c.cap += net.nodes[i].capacitance;
      c.min_v = std::min(c.min_v, in[i].voltage);
      c.max_v = std::max(c.max_v, in[i].voltage);
    }
  }

  out = in;
  for (std::size_t i = 0; i < n; ++i) {
    if (is_source_kind(net.nodes[i].kind)) continue;
    const auto& c = comp[static_cast<std::size_t>(uf.find(static_cast<int>(i)))];
    if (c.high && c.low) {
      out[i] = {0.5, Strength::Stored};
      shorted[i] = 1;
      any_short = true;
    } else if (c.high) {
      out[i] = {1.0, Strength::Driven};
    } else if (c.low) {
      out[i] = {0.0, Strength::Driven};
    } else {
      const double v = c.min_v == c.max_v ? c.min_v : c.charge / c.cap;
      out[i] = {v, Strength::Stored};
    }
  }
}

}  // namespace detail

// One settling step: classifies every device from the gate logic in `in`,
// then solves the channel graph. Devices whose gate reads X are resolved
// twice, once open and once closed; a node whose two outcomes agree in logic
// keeps that logic at the weaker voltage, anything else reads X.
inline ResolveResult resolve(const Netlist& net, const std::vector<NodeState>& in,
                             const SimConfig& cfg = {}) {
  const std::size_t n = net.nodes.size();
  if (in.size() != n) throw SimError("state vector size does not match netlist");

  const std::size_t nd = net.devices.size();
  std::vector<char> on_definite(nd, 0), on_optimistic(nd, 0);
  bool any_unknown = false;
  for (std::size_t d = 0; d < nd; ++d) {
    const auto& dev = net.devices[d];
    const Logic g = cfg.logic_of(in[static_cast<std::size_t>(dev.gate)].voltage);
    const bool conducts = dev.kind == MosKind::Nmos ? g == Logic::One : g == Logic::Zero;
    if (g == Logic::X) {
      any_unknown = true;
      on_optimistic[d] = 1;
    } else if (conducts) {
      on_definite[d] = 1;
      on_optimistic[d] = 1;
    }
  }

  ResolveResult result;
  std::vector<char> short_a(n, 0);
  bool any_short_a = false;
  detail::solve_components(net, in, on_definite, result.states, short_a, any_short_a);

  if (!any_unknown) {
    result.rail_short = any_short_a;
    for (std::size_t i = 0; i < n; ++i)
      if (short_a[i]) result.shorted.push_back(static_cast<int>(i));
    return result;
  }

  std::vector<NodeState> closed;
  std::vector<char> short_b(n, 0);
  bool any_short_b = false;
  detail::solve_components(net, in, on_optimistic, closed, short_b, any_short_b);

  for (std::size_t i = 0; i < n; ++i) {
    if (is_source_kind(net.nodes[i].kind)) continue;
    const NodeState a = result.states[i];
    const NodeState b = closed[i];
    if (a == b) continue;
    const Logic la = cfg.logic_of(a.voltage);
    const Logic lb = cfg.logic_of(b.voltage);
    if (la != lb || la == Logic::X) {
      result.states[i] = {0.5, Strength::Stored};
    } else {
      const Strength s = a.strength == Strength::Driven && b.strength == Strength::Driven
                             ? Strength::Driven
                             : Strength::Stored;
      const double v = la == Logic::One ? std::min(a.voltage, b.voltage)
                                        : std::max(a.voltage, b.voltage);
      result.states[i] = {v, s};
    }
  }
  result.rail_short = any_short_a || any_short_b;
  for (std::size_t i = 0; i < n; ++i)
    if (short_a[i] || short_b[i]) result.shorted.push_back(static_cast<int>(i));
  return result;
}

// --- waveforms ----------------------------------------------------------------

struct WaveRecord {
  SimTime time = 0;
  NodeState state;

  bool operator==(const WaveRecord&) const = default;
};

struct Waveform {
  std::vector<std::string> node_names;
  std::vector<NodeKind> node_kinds;
  std::vector<double> node_caps;
  std::vector<std::vector<WaveRecord>> records;  // per node, strictly ascending times
  SimTime duration = 0;
  bool rail_short_seen = false;

  std::size_t node_count() const { return node_names.size(); }

  int find(std::string_view name) const {
    for (std::size_t i = 0; i < node_names.size(); ++i)
      if (node_names[i] == name) return static_cast<int>(i);
    return -1;
  }

  NodeState at(int node, SimTime time) const {
    if (node < 0 || static_cast<std::size_t>(node) >= records.size())
      throw SimError("waveform node index out of range");
    if (time < 0 || time > duration) throw SimError("waveform time out of range");
    const auto& r = records[static_cast<std::size_t>(node)];
    auto it = std::upper_bound(r.begin(), r.end(), time,
                               [](SimTime t, const WaveRecord& rec) { return t < rec.time; });
    return std::prev(it)->state;
  }

  std::vector<NodeState> sample(SimTime time) const {
    std::vector<NodeState> out(records.size());
    for (std::size_t i = 0; i < records.size(); ++i)
      out[i] = at(static_cast<int>(i), time);
    return out;
  }
};

// --- event loop -----------------------------------------------------------------

// Runs the stimulus against the netlist. Changes computed by a resolve pass
// at tick t take effect at t + device_delay; a pass that changes nothing
// ends the settling burst. More than max_settle_iterations consecutive
// changing passes aborts with OscillationError.
inline Waveform simulate(const Netlist& net, const Stimulus& stim,
                         const SimConfig& cfg = {}) {
  cfg.check();
  {
    const auto violations = validate(net);
    if (!violations.empty())
      throw SimError("invalid netlist: " + violations.front().message);
  }
  if (stim.clock_period < 2 || stim.clock_period % 2 != 0)
    throw SimError("clock period must be even and at least 2");
  if (stim.duration < 1) throw SimError("stimulus duration must be positive");
  const std::size_t n = net.nodes.size();
  for (const auto& [node, transitions] : stim.schedule) {
    if (node < 0 || static_cast<std::size_t>(node) >= n)
      throw SimError("stimulus references an unknown node");
    if (net.nodes[static_cast<std::size_t>(node)].kind != NodeKind::Input)
      throw SimError("stimulus drives non-input node " +
                     net.nodes[static_cast<std::size_t>(node)].name);
    SimTime prev = -1;
    for (const auto& tr : transitions) {
      if (tr.time <= prev)
        throw SimError("stimulus transitions not strictly ascending for " +
                       net.nodes[static_cast<std::size_t>(node)].name);
      if (tr.time > stim.duration)
        throw SimError("stimulus transition beyond duration");
      if (tr.value != 0 && tr.value != 1) throw SimError("stimulus value must be 0 or 1");
      prev = tr.time;
    }
  }

  const SimTime half_period = stim.clock_period / 2;
  const auto clock_level = [&](SimTime t) -> double {
    const SimTime phase = (t / half_period) % 2;
    const bool high = stim.clock_high_first ? phase == 0 : phase == 1;
    return high ? 1.0 : 0.0;
  };

  std::vector<NodeState> state(n);
  for (std::size_t i = 0; i < n; ++i) {
    switch (net.nodes[i].kind) {
      case NodeKind::Vdd: state[i] = {1.0, Strength::Driven}; break;
      case NodeKind::Gnd: state[i] = {0.0, Strength::Driven}; break;
      case NodeKind::Clock: state[i] = {clock_level(0), Strength::Driven}; break;
      case NodeKind::Input: state[i] = {0.0, Strength::Driven}; break;
      default: state[i] = {0.0, Strength::Stored}; break;
    }
  }

  // Per-input cursors; time-0 values fold into the initial state.
  struct Cursor {
    int node;
    const std::vector<InputTransition>* transitions;
    std::size_t pos = 0;
  };
  std::vector<Cursor> cursors;
  for (const auto& [node, transitions] : stim.schedule) {
    Cursor c{node, &transitions, 0};
    while (c.pos < transitions.size() && transitions[c.pos].time == 0) {
      state[static_cast<std::size_t>(node)].voltage =
          transitions[c.pos].value ? 1.0 : 0.0;
      ++c.pos;
    }
    if (c.pos < transitions.size()) cursors.push_back(c);
  }

  int clock_index = -1;
  for (std::size_t i = 0; i < n; ++i)
    if (net.nodes[i].kind == NodeKind::Clock) clock_index = static_cast<int>(i);

  Waveform wave;
  wave.duration = stim.duration;
  wave.node_names.reserve(n);
  wave.records.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    wave.node_names.push_back(net.nodes[i].name);
    wave.node_kinds.push_back(net.nodes[i].kind);
    wave.node_caps.push_back(net.nodes[i].capacitance);
    wave.records[i].reserve(8);
    wave.records[i].push_back({0, state[i]});
  }

  std::vector<std::pair<int, NodeState>> pending;
  SimTime pending_time = -1;
  int consecutive_active = 0;
  SimTime t = 0;
  bool need_resolve = true;

  while (true) {
    bool changed = need_resolve;
    need_resolve = false;

    if (pending_time == t) {
      for (const auto& [node, ns] : pending) {
        state[static_cast<std::size_t>(node)] = ns;
        wave.records[static_cast<std::size_t>(node)].push_back({t, ns});
      }
      pending.clear();
      pending_time = -1;
      changed = true;
    }

    for (auto& c : cursors) {
      while (c.pos < c.transitions->size() && (*c.transitions)[c.pos].time == t) {
        const NodeState ns{(*c.transitions)[c.pos].value ? 1.0 : 0.0, Strength::Driven};
        auto& slot = state[static_cast<std::size_t>(c.node)];
        if (!(slot == ns)) {
          slot = ns;
          wave.records[static_cast<std::size_t>(c.node)].push_back({t, ns});
          changed = true;
        }
        ++c.pos;
      }
    }

    if (t > 0 && t % half_period == 0) {
      const NodeState ns{clock_level(t), Strength::Driven};
      auto& slot = state[static_cast<std::size_t>(clock_index)];
      if (!(slot == ns)) {
        slot = ns;
        wave.records[static_cast<std::size_t>(clock_index)].push_back({t, ns});
        changed = true;
      }
    }

    if (changed) {
      ResolveResult r = resolve(net, state, cfg);
      wave.rail_short_seen = wave.rail_short_seen || r.rail_short;
      pending.clear();
      for (std::size_t i = 0; i < n; ++i)
        if (!(r.states[i] == state[i]))
          pending.emplace_back(static_cast<int>(i), r.states[i]);
      if (pending.empty()) {
        consecutive_active = 0;
        pending_time = -1;
      } else {
        if (++consecutive_active > cfg.max_settle_iterations) {
          std::vector<std::string> offenders;
          offenders.reserve(pending.size());
          for (const auto& [node, ns] : pending)
            offenders.push_back(net.nodes[static_cast<std::size_t>(node)].name);
          throw OscillationError("settling did not converge after " +
                                     std::to_string(cfg.max_settle_iterations) +
                                     " iterations",
                                 std::move(offenders));
        }
        pending_time = t + cfg.device_delay;
      }
    }

    SimTime next = std::numeric_limits<SimTime>::max();
    if (pending_time > t) next = std::min(next, pending_time);
    for (const auto& c : cursors)
      if (c.pos < c.transitions->size())
        next = std::min(next, (*c.transitions)[c.pos].time);
    const SimTime next_edge = (t / half_period + 1) * half_period;
    next = std::min(next, next_edge);
    if (next > stim.duration || next <= t) break;
    t = next;
  }
  return wave;
}

// --- switching activity ------------------------------------------------------------

struct NodeActivity {
  long long rises = 0;
  long long falls = 0;
  long long x_events = 0;  // transitions entering or leaving X
};

struct ActivityReport {
  double weighted = 0.0;  // capacitance-weighted count of 0-1 and 1-0 transitions
  long long logic_transitions = 0;
  long long x_transitions = 0;
  std::vector<NodeActivity> per_node;
};

inline ActivityReport switching_activity(const Waveform& wave, const SimConfig& cfg = {}) {
  ActivityReport report;
  report.per_node.resize(wave.node_count());
  for (std::size_t i = 0; i < wave.node_count(); ++i) {
    auto& acc = report.per_node[i];
    const auto& recs = wave.records[i];
    for (std::size_t k = 1; k < recs.size(); ++k) {
      const Logic prev = cfg.logic_of(recs[k - 1].state.voltage);
      const Logic cur = cfg.logic_of(recs[k].state.voltage);
      if (prev == cur) continue;
      if (prev == Logic::X || cur == Logic::X) {
        ++acc.x_events;
        ++report.x_transitions;
      } else {
        if (cur == Logic::One) ++acc.rises; else ++acc.falls;
        ++report.logic_transitions;
        report.weighted += wave.node_caps[i];
      }
    }
  }
  return report;
}

}  // namespace pesim
