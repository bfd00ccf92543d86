#pragma once

#include <cctype>
#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

// Transistor-level circuit description. Devices are ideal switches with a
// gate terminal and an undirected source/drain channel; nodes carry a lumped
// capacitance used for charge sharing.

namespace pesim {

enum class NodeKind { Vdd, Gnd, Clock, Input, Output, Internal };
enum class MosKind { Nmos, Pmos };

// Vdd/Gnd/Clock/Input nodes are infinite-drive sources; their capacitance is
// irrelevant to charge sharing and only used as a switching-activity weight.
inline bool is_source_kind(NodeKind kind) {
  return kind == NodeKind::Vdd || kind == NodeKind::Gnd ||
         kind == NodeKind::Clock || kind == NodeKind::Input;
}

inline double default_capacitance(NodeKind kind) {
  switch (kind) {
    case NodeKind::Output: return 10.0;
    case NodeKind::Internal: return 1.0;
    default: return 1.0;
  }
}

inline const char* node_kind_name(NodeKind kind) {
  switch (kind) {
    case NodeKind::Vdd: return "vdd";
    case NodeKind::Gnd: return "gnd";
    case NodeKind::Clock: return "clock";
    case NodeKind::Input: return "input";
    case NodeKind::Output: return "output";
    case NodeKind::Internal: return "internal";
  }
  return "?";
}

inline std::optional<NodeKind> node_kind_from_name(std::string_view s) {
  if (s == "vdd") return NodeKind::Vdd;
  if (s == "gnd") return NodeKind::Gnd;
  if (s == "clock") return NodeKind::Clock;
  if (s == "input") return NodeKind::Input;
  if (s == "output") return NodeKind::Output;
  if (s == "internal") return NodeKind::Internal;
  return std::nullopt;
}

struct Node {
  std::string name;
  NodeKind kind = NodeKind::Internal;
  double capacitance = 1.0;

  bool operator==(const Node&) const = default;
};

struct MosDevice {
  std::string name;
  MosKind kind = MosKind::Nmos;
  int gate = -1;
  int source = -1;  // channel terminal; interchangeable with drain
  int drain = -1;

  bool operator==(const MosDevice&) const = default;
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

struct Netlist {
  std::vector<Node> nodes;
  std::vector<MosDevice> devices;
  std::vector<int> inputs;   // priority order, index 0 highest; excludes the look-ahead pin
  std::vector<int> outputs;  // index i answers input priority i
  int lookahead_in = -1;     // -1 when the design has no external disable
  int lookahead_out = -1;

  int find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    return it == index_.end() ? -1 : it->second;
  }

  int add_node(const std::string& name, NodeKind kind,
               std::optional<double> capacitance = std::nullopt) {
    if (find(name) >= 0)
      throw std::invalid_argument("duplicate node " + name);
    Node n;
    n.name = name;
    n.kind = kind;
    n.capacitance = capacitance.value_or(default_capacitance(kind));
    const int idx = static_cast<int>(nodes.size());
    nodes.push_back(std::move(n));
    index_.emplace(name, idx);
    if (kind == NodeKind::Input) inputs.push_back(idx);
    if (kind == NodeKind::Output) outputs.push_back(idx);
    return idx;
  }

  int add_device(const std::string& name, MosKind kind, int gate, int source,
                 int drain) {
    MosDevice d;
    d.name = name;
    d.kind = kind;
    d.gate = gate;
    d.source = source;
    d.drain = drain;
    devices.push_back(std::move(d));
    return static_cast<int>(devices.size()) - 1;
  }

  int add_device(const std::string& name, MosKind kind,
                 const std::string& gate, const std::string& source,
                 const std::string& drain) {
    return add_device(name, kind, must_find(gate), must_find(source),
                      must_find(drain));
  }

  // Removes a node index from the priority input list (used for the
  // look-ahead pin, which is electrically an input but not a priority bit).
  void drop_from_inputs(int idx) {
    std::erase(inputs, idx);
  }

  void drop_from_outputs(int idx) {
    std::erase(outputs, idx);
  }

  bool operator==(const Netlist& other) const {
    return nodes == other.nodes && devices == other.devices &&
           inputs == other.inputs && outputs == other.outputs &&
           lookahead_in == other.lookahead_in &&
           lookahead_out == other.lookahead_out;
  }

 private:
  int must_find(const std::string& name) const {
    const int idx = find(name);
    if (idx < 0) throw std::invalid_argument("undeclared node " + name);
    return idx;
  }

  std::unordered_map<std::string, int> index_;
};

// --- text format ------------------------------------------------------------
//
//   NODE <name> <vdd|gnd|clock|input|output|internal> [<capacitance>]
//   MOS  <name> <NMOS|PMOS> <gate> <source> <drain>
//   LAIN <name>
//   LAOUT <name>
//
// '#' starts a comment. Input priority is NODE declaration order. The names
// VDD, GND and CLK are reserved for the matching kinds.

inline Netlist parse_netlist(const std::string& text) {
  Netlist net;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int vdd_seen = 0, gnd_seen = 0, clock_seen = 0;

  const auto fail = [&](const std::string& reason) -> void {
    throw ParseError("line " + std::to_string(line_no) + ": " + reason);
  };
  const auto lookup = [&](const std::string& name) -> int {
    const int idx = net.find(name);
    if (idx < 0) fail("undeclared node " + name);
    return idx;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::istringstream toks(line);
    std::string kw;
    if (!(toks >> kw)) continue;

    if (kw == "NODE") {
      std::string name, kind_word;
      if (!(toks >> name >> kind_word)) fail("NODE needs a name and a kind");
      const auto kind = node_kind_from_name(kind_word);
      if (!kind) fail("unknown node kind " + kind_word);
      double cap = default_capacitance(*kind);
      std::string cap_word;
      if (toks >> cap_word) {
        try {
          std::size_t used = 0;
          cap = std::stod(cap_word, &used);
          if (used != cap_word.size()) throw std::invalid_argument(cap_word);
        } catch (const std::exception&) {
          fail("bad capacitance " + cap_word);
        }
        if (!(cap > 0.0)) fail("capacitance must be positive");
      }
      std::string extra;
      if (toks >> extra) fail("trailing tokens after NODE");
      if (net.find(name) >= 0) fail("duplicate node " + name);
      if (*kind == NodeKind::Vdd && ++vdd_seen > 1) fail("multiple vdd nodes");
      if (*kind == NodeKind::Gnd && ++gnd_seen > 1) fail("multiple gnd nodes");
      if (*kind == NodeKind::Clock && ++clock_seen > 1) fail("multiple clock nodes");
      if (name == "VDD" && *kind != NodeKind::Vdd) fail("VDD is reserved for kind vdd");
      if (name == "GND" && *kind != NodeKind::Gnd) fail("GND is reserved for kind gnd");
      if (name == "CLK" && *kind != NodeKind::Clock) fail("CLK is reserved for kind clock");
      net.add_node(name, *kind, cap);
    } else if (kw == "MOS") {
      std::string name, kind_word, gate, source, drain;
      if (!(toks >> name >> kind_word >> gate >> source >> drain))
        fail("MOS needs a name, a kind and three terminals");
      std::string extra;
      if (toks >> extra) fail("trailing tokens after MOS");
      if (kind_word != "NMOS" && kind_word != "PMOS")
        fail("unknown device kind " + kind_word);
      const MosKind kind = kind_word == "NMOS" ? MosKind::Nmos : MosKind::Pmos;
      for (const auto& d : net.devices)
        if (d.name == name) fail("duplicate device " + name);
      const int g = lookup(gate), s = lookup(source), dr = lookup(drain);
      if (s == dr) fail("device " + name + " shorts its own channel");
      net.add_device(name, kind, g, s, dr);
    } else if (kw == "LAIN" || kw == "LAOUT") {
      std::string name;
      if (!(toks >> name)) fail(kw + " needs a node name");
      std::string extra;
      if (toks >> extra) fail("trailing tokens after " + kw);
      const int idx = lookup(name);
      if (kw == "LAIN") {
        if (net.lookahead_in >= 0) fail("multiple LAIN lines");
        if (net.nodes[static_cast<std::size_t>(idx)].kind != NodeKind::Input)
          fail("look-ahead input must have kind input");
        net.lookahead_in = idx;
        net.drop_from_inputs(idx);
      } else {
        if (net.lookahead_out >= 0) fail("multiple LAOUT lines");
        const auto kind = net.nodes[static_cast<std::size_t>(idx)].kind;
        if (kind != NodeKind::Internal && kind != NodeKind::Output)
          fail("look-ahead output must have kind internal or output");
        net.lookahead_out = idx;
        net.drop_from_outputs(idx);
      }
    } else {
      fail("unknown keyword " + kw);
    }
  }
  return net;
}

inline std::string format_capacitance(double cap) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", cap);
  return buf;
}

inline std::string serialize_netlist(const Netlist& net) {
  std::ostringstream out;
  for (const auto& n : net.nodes) {
    out << "NODE " << n.name << ' ' << node_kind_name(n.kind);
    if (!is_source_kind(n.kind)) out << ' ' << format_capacitance(n.capacitance);
    out << '\n';
  }
  for (const auto& d : net.devices) {
    out << "MOS " << d.name << ' ' << (d.kind == MosKind::Nmos ? "NMOS" : "PMOS")
        << ' ' << net.nodes[static_cast<std::size_t>(d.gate)].name
        << ' ' << net.nodes[static_cast<std::size_t>(d.source)].name
        << ' ' << net.nodes[static_cast<std::size_t>(d.drain)].name << '\n';
  }
  if (net.lookahead_in >= 0)
    out << "LAIN " << net.nodes[static_cast<std::size_t>(net.lookahead_in)].name << '\n';
  if (net.lookahead_out >= 0)
    out << "LAOUT " << net.nodes[static_cast<std::size_t>(net.lookahead_out)].name << '\n';
  return out.str();
}

// --- validation --------------------------------------------------------------

struct Violation {
  std::string message;

  bool operator==(const Violation&) const = default;
};

// Structural checks. With check_output_pulldowns set, additionally requires
// every output node to have exactly two NMOS devices whose channel connects
// it to ground (the precharge device plus one reset device).
inline std::vector<Violation> validate(const Netlist& net,
                                       bool check_output_pulldowns = false) {
  std::vector<Violation> out;
  const auto add = [&](std::string msg) { out.push_back({std::move(msg)}); };
  const int n = static_cast<int>(net.nodes.size());

  int vdd = -1, gnd = -1, clock = -1;
  std::unordered_set<std::string> names;
  for (int i = 0; i < n; ++i) {
    const auto& node = net.nodes[static_cast<std::size_t>(i)];
    if (!names.insert(node.name).second) add("duplicate node name " + node.name);
    if (node.kind == NodeKind::Vdd) {
      if (vdd >= 0) add("multiple vdd nodes");
      vdd = i;
    }
    if (node.kind == NodeKind::Gnd) {
      if (gnd >= 0) add("multiple gnd nodes");
      gnd = i;
    }
    if (node.kind == NodeKind::Clock) {
      if (clock >= 0) add("multiple clock nodes");
      clock = i;
    }
    if (!is_source_kind(node.kind) && !(node.capacitance > 0.0))
      add("node " + node.name + " has non-positive capacitance");
  }
  if (vdd < 0) add("missing vdd node");
  if (gnd < 0) add("missing gnd node");
  if (clock < 0) add("missing clock node");

  std::unordered_set<std::string> device_names;
  for (const auto& d : net.devices) {
    if (!device_names.insert(d.name).second) add("duplicate device name " + d.name);
    const bool in_range =
        d.gate >= 0 && d.gate < n && d.source >= 0 && d.source < n &&
        d.drain >= 0 && d.drain < n;
    if (!in_range) {
      add("device " + d.name + " references an unknown node");
      continue;
    }
    if (d.source == d.drain) add("device " + d.name + " shorts its own channel");
    const bool touches_vdd = d.source == vdd || d.drain == vdd;
    const bool touches_gnd = d.source == gnd || d.drain == gnd;
    if (vdd >= 0 && gnd >= 0 && touches_vdd && touches_gnd)
      add("device " + d.name + " shorts the rails");
  }

  for (const int idx : net.inputs)
    if (idx < 0 || idx >= n || net.nodes[static_cast<std::size_t>(idx)].kind != NodeKind::Input)
      add("priority input list entry is not an input node");
  for (const int idx : net.outputs)
    if (idx < 0 || idx >= n || net.nodes[static_cast<std::size_t>(idx)].kind != NodeKind::Output)
      add("output list entry is not an output node");
  if (net.lookahead_in >= 0 &&
      (net.lookahead_in >= n ||
       net.nodes[static_cast<std::size_t>(net.lookahead_in)].kind != NodeKind::Input))
    add("look-ahead input is not an input node");
  if (net.lookahead_out >= 0 && net.lookahead_out >= n)
    add("look-ahead output is not a node");

  if (check_output_pulldowns && gnd >= 0) {
    for (const int op : net.outputs) {
      int pulldowns = 0;
      for (const auto& d : net.devices) {
        if (d.kind != MosKind::Nmos) continue;
        const bool on_output = d.source == op || d.drain == op;
        const bool on_gnd = d.source == gnd || d.drain == gnd;
        if (on_output && on_gnd) ++pulldowns;
      }
      if (pulldowns != 2)
        add("output " + net.nodes[static_cast<std::size_t>(op)].name + " has " +
            std::to_string(pulldowns) + " ground pulldowns, expected 2");
    }
  }
  return out;
}

// --- device accounting --------------------------------------------------------

struct DeviceCount {
  int nmos = 0;
  int pmos = 0;

  int total() const { return nmos + pmos; }

  bool operator==(const DeviceCount&) const = default;
};

inline DeviceCount device_count(const Netlist& net) {
  DeviceCount c;
  for (const auto& d : net.devices)
    (d.kind == MosKind::Nmos ? c.nmos : c.pmos)++;
  return c;
}

// Groups devices by the name prefix before the first ':'. Constructors name
// devices "<group>:<detail>", so this yields a functional breakdown.
inline std::vector<std::pair<std::string, DeviceCount>> device_breakdown(
    const Netlist& net) {
  std::vector<std::pair<std::string, DeviceCount>> groups;
  const auto slot = [&](const std::string& key) -> DeviceCount& {
    for (auto& [name, count] : groups)
      if (name == key) return count;
    groups.emplace_back(key, DeviceCount{});
    return groups.back().second;
  };
  for (const auto& d : net.devices) {
    const auto colon = d.name.find(':');
    const std::string key =
        colon == std::string::npos ? std::string("other") : d.name.substr(0, colon);
    auto& count = slot(key);
    (d.kind == MosKind::Nmos ? count.nmos : count.pmos)++;
  }
  return groups;
}

}  // namespace pesim
