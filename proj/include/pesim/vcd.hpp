#pragma once

#include <algorithm>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "pesim/sim.hpp"

namespace pesim {

// Short printable identifier, base 94 over '!'..'~'.
inline std::string vcd_identifier(int index) {
  std::string id;
  do {
    id.push_back(static_cast<char>('!' + index % 94));
    index /= 94;
  } while (index > 0);
  return id;
}

// Emits the waveform as a four-state value-change dump, one scalar wire per
// node, logic levels taken from the config thresholds. Only logic changes
// are dumped; voltage drift within a band is invisible here.
inline void write_vcd(const Waveform& wave, std::ostream& out,
                      const SimConfig& cfg = {}) {
  out << "$timescale 1ps $end\n";
  out << "$scope module top $end\n";
  for (std::size_t i = 0; i < wave.node_count(); ++i)
    out << "$var wire 1 " << vcd_identifier(static_cast<int>(i)) << ' '
        << wave.node_names[i] << " $end\n";
  out << "$upscope $end\n";
  out << "$enddefinitions $end\n";

  std::vector<std::tuple<SimTime, int, char>> events;
  for (std::size_t i = 0; i < wave.node_count(); ++i) {
    char last = '\0';
    for (const auto& rec : wave.records[i]) {
      const char c = logic_char(cfg.logic_of(rec.state.voltage));
      if (c == last) continue;
      last = c;
      events.emplace_back(rec.time, static_cast<int>(i), c);
    }
  }
  std::sort(events.begin(), events.end());

  std::size_t k = 0;
  out << "$dumpvars\n";
  while (k < events.size() && std::get<0>(events[k]) == 0) {
    out << std::get<2>(events[k]) << vcd_identifier(std::get<1>(events[k])) << '\n';
    ++k;
  }
  out << "$end\n";
  while (k < events.size()) {
    const SimTime t = std::get<0>(events[k]);
    out << '#' << t << '\n';
    while (k < events.size() && std::get<0>(events[k]) == t) {
      out << std::get<2>(events[k]) << vcd_identifier(std::get<1>(events[k])) << '\n';
      ++k;
    }
  }
  out << '#' << wave.duration << '\n';
}

}  // namespace pesim
