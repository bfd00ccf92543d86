#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pesim/netlist.hpp"

namespace pesim {

// One tick is the unit device delay; all times are tick counts from 0.
using SimTime = std::int64_t;

struct InputTransition {
  SimTime time = 0;
  int value = 0;  // 0 or 1

  bool operator==(const InputTransition&) const = default;
};

struct Stimulus {
  SimTime clock_period = 100;   // even, >= 2
  bool clock_high_first = false;
  std::map<int, std::vector<InputTransition>> schedule;  // node index -> ascending times
  SimTime duration = 0;

  void add_transition(int node, SimTime time, int value) {
    schedule[node].push_back({time, value});
  }

  bool operator==(const Stimulus&) const = default;
};

// --- text format ------------------------------------------------------------
//
//   CLOCK <period> <high_first 0|1>
//   AT <tick> <node> <0|1>
//   RUN <duration>
//
// '#' starts a comment. Target nodes must be input-kind nodes of the bound
// netlist; per-node transition times must be strictly ascending.

inline Stimulus parse_stimulus(const std::string& text, const Netlist& net) {
  Stimulus stim;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  bool clock_seen = false, run_seen = false;

  const auto fail = [&](const std::string& reason) -> void {
    throw ParseError("line " + std::to_string(line_no) + ": " + reason);
  };
  const auto parse_int = [&](const std::string& word, const char* what) -> std::int64_t {
    try {
      std::size_t used = 0;
      const std::int64_t v = std::stoll(word, &used);
      if (used != word.size()) throw std::invalid_argument(word);
      return v;
    } catch (const std::exception&) {
      fail(std::string("bad ") + what + " " + word);
      return 0;  // unreachable
    }
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::istringstream toks(line);
    std::string kw;
    if (!(toks >> kw)) continue;

    if (kw == "CLOCK") {
      std::string period_word, first_word;
      if (!(toks >> period_word >> first_word)) fail("CLOCK needs a period and a phase");
      if (clock_seen) fail("multiple CLOCK lines");
      clock_seen = true;
      const std::int64_t period = parse_int(period_word, "period");
      if (period < 2 || period % 2 != 0) fail("clock period must be even and at least 2");
      if (first_word != "0" && first_word != "1") fail("clock phase must be 0 or 1");
      stim.clock_period = period;
      stim.clock_high_first = first_word == "1";
    } else if (kw == "AT") {
      std::string tick_word, node_name, value_word;
      if (!(toks >> tick_word >> node_name >> value_word)) fail("AT needs a tick, a node and a value");
      const std::int64_t tick = parse_int(tick_word, "tick");
      if (tick < 0) fail("tick must be non-negative");
      const int node = net.find(node_name);
      if (node < 0) fail("undeclared node " + node_name);
      if (net.nodes[static_cast<std::size_t>(node)].kind != NodeKind::Input)
        fail("node " + node_name + " is not an input");
      if (value_word != "0" && value_word != "1") fail("value must be 0 or 1");
      auto& transitions = stim.schedule[node];
      if (!transitions.empty() && transitions.back().time >= tick)
        fail("transitions for " + node_name + " are not strictly ascending");
      transitions.push_back({tick, value_word == "1" ? 1 : 0});
    } else if (kw == "RUN") {
      std::string dur_word;
      if (!(toks >> dur_word)) fail("RUN needs a duration");
      if (run_seen) fail("multiple RUN lines");
      run_seen = true;
      const std::int64_t duration = parse_int(dur_word, "duration");
      if (duration < 1) fail("duration must be positive");
      stim.duration = duration;
    } else {
      fail("unknown keyword " + kw);
    }
    std::string extra;
    if (toks >> extra) fail("trailing tokens after " + kw);
  }
  line_no = 0;
  if (!clock_seen) fail("missing CLOCK line");
  if (!run_seen) fail("missing RUN line");
  return stim;
}

}  // namespace pesim
