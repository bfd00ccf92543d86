#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pesim/netlist.hpp"

// Netlist constructors for the encoder designs under test. All three 8-bit
// designs are dynamic logic: a clocked device readies every output during
// the low clock phase and the input network acts during the high phase.
//
//   robust8     p-type pull-up networks, outputs predischarged low, a reset
//               pulldown per output keyed to the disable signal, and a
//               two-level look-ahead (la_inter) gating the low-priority half.
//   raceprone8  single shared pull-up chain enabled by the complement of an
//               active-high look-ahead, no reset pulldowns. A disable that
//               arrives after the evaluation edge strands charge on whatever
//               output it let through.
//   cshare8     n-type variant whose pulldown stacks hang large internal
//               capacitance below each output; a full pair of back-to-back
//               vectors can leave that stack discharged and steal the
//               output's precharge.
//   cascadeN    N/8 robust blocks with per-block disable ORed from all
//               higher-priority raw inputs.

namespace pesim {
namespace builder {

inline std::string num(int i) { return std::to_string(i); }

inline void add_inverter(Netlist& net, const std::string& name,
                         const std::string& in, const std::string& out) {
  net.add_device(name + ":p", MosKind::Pmos, in, std::string("VDD"), out);
  net.add_device(name + ":n", MosKind::Nmos, in, out, std::string("GND"));
}

inline void add_nand(Netlist& net, const std::string& name,
                     const std::vector<std::string>& in, const std::string& out) {
  for (std::size_t i = 0; i < in.size(); ++i)
    net.add_device(name + ":p" + num(static_cast<int>(i)), MosKind::Pmos, in[i],
                   std::string("VDD"), out);
  std::string prev = out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const bool last = i + 1 == in.size();
    std::string next = last ? std::string("GND") : name + ":s" + num(static_cast<int>(i));
    if (!last) net.add_node(next, NodeKind::Internal);
    net.add_device(name + ":n" + num(static_cast<int>(i)), MosKind::Nmos, in[i], prev, next);
    prev = next;
  }
}

inline void add_nor(Netlist& net, const std::string& name,
                    const std::vector<std::string>& in, const std::string& out) {
  std::string prev = "VDD";
  for (std::size_t i = 0; i < in.size(); ++i) {
    const bool last = i + 1 == in.size();
    std::string next = last ? out : name + ":s" + num(static_cast<int>(i));
    if (!last) net.add_node(next, NodeKind::Internal);
    net.add_device(name + ":p" + num(static_cast<int>(i)), MosKind::Pmos, in[i], prev, next);
    prev = next;
  }
  for (std::size_t i = 0; i < in.size(); ++i)
    net.add_device(name + ":n" + num(static_cast<int>(i)), MosKind::Nmos, in[i], out,
                   std::string("GND"));
}

// Chunks a signal list into groups of at most four, never leaving a group
// of one.
inline std::vector<std::vector<std::string>> chunk4(const std::vector<std::string>& xs) {
  std::vector<std::vector<std::string>> groups;
  std::size_t i = 0;
  while (i < xs.size()) {
    std::size_t take = std::min<std::size_t>(4, xs.size() - i);
    if (xs.size() - i - take == 1) --take;
    groups.emplace_back(xs.begin() + static_cast<long>(i),
                        xs.begin() + static_cast<long>(i + take));
    i += take;
  }
  return groups;
}

// Static OR of arbitrarily many signals into an existing node, built from
// NOR/NAND layers with fan-in at most four.
inline void add_or_tree(Netlist& net, const std::string& name,
                        const std::vector<std::string>& in, const std::string& out) {
  if (in.size() == 1) {
    const std::string mid = name + ":m";
    net.add_node(mid, NodeKind::Internal);
    add_inverter(net, name + ":i0", in[0], mid);
    add_inverter(net, name + ":i1", mid, out);
    return;
  }
  if (in.size() <= 4) {
    const std::string mid = name + ":m";
    net.add_node(mid, NodeKind::Internal);
    add_nor(net, name + ":nor", in, mid);
    add_inverter(net, name + ":inv", mid, out);
    return;
  }
  std::vector<std::string> partials;  // active-low per-group ORs
  const auto groups = chunk4(in);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const std::string p = name + ":p" + num(static_cast<int>(g));
    net.add_node(p, NodeKind::Internal);
    add_nor(net, name + ":nor" + num(static_cast<int>(g)), groups[g], p);
    partials.push_back(p);
  }
  if (partials.size() <= 4) {
    add_nand(net, name + ":nand", partials, out);
    return;
  }
  std::vector<std::string> ors;  // active-high ORs over wider spans
  const auto pgroups = chunk4(partials);
  for (std::size_t g = 0; g < pgroups.size(); ++g) {
    const std::string q = name + ":q" + num(static_cast<int>(g));
    net.add_node(q, NodeKind::Internal);
    add_nand(net, name + ":nand" + num(static_cast<int>(g)), pgroups[g], q);
    ors.push_back(q);
  }
  add_or_tree(net, name + ":r", ors, out);
}

// Stamps one robust 8-bit priority block. `px` prefixes every created node
// and device name; ip/op/la name pre-existing nodes. Returns the name of the
// created next-stage disable node.
//
// Output charging paths share a clocked head and a disable device, then
// split per output; each output also carries exactly two pulldowns, the
// clocked predischarge device and a reset device keyed to the disable seen
// by its half. The low-priority half is gated by the regenerated
// la_inter = la OR IP_0..IP_3 rather than by a longer series chain.
inline std::string emit_priority_block(Netlist& net, const std::string& px,
                                       const std::array<std::string, 8>& ip,
                                       const std::array<std::string, 8>& op,
                                       const std::string& la) {
  const auto node = [&](const std::string& n) {
    net.add_node(px + n, NodeKind::Internal);
    return px + n;
  };

  const std::string clkb = node("CLKB");
  add_inverter(net, px + "inv:CLKB", "CLK", clkb);

  std::array<std::string, 8> ipb;
  for (int i = 0; i < 8; ++i) {
    ipb[static_cast<std::size_t>(i)] = node("IPB" + num(i));
    add_inverter(net, px + "inv:IPB" + num(i), ip[static_cast<std::size_t>(i)],
                 ipb[static_cast<std::size_t>(i)]);
  }

  // Anything-above-me summaries for the high-priority half, active high.
  const std::string la0 = node("la0");
  add_inverter(net, px + "inv:la0", ipb[0], la0);
  const std::string la1 = node("la1");
  add_nand(net, px + "nand:la1", {ipb[0], ipb[1]}, la1);
  const std::string la2 = node("la2");
  add_nand(net, px + "nand:la2", {ipb[0], ipb[1], ipb[2]}, la2);

  const std::string laint_n = node("LAintN");
  add_nor(net, px + "nor:LAint", {la, la2, ip[3]}, laint_n);
  const std::string laint = node("LAint");
  add_inverter(net, px + "inv:LAint", laint_n, laint);

  // High-priority pull-ups behind a shared clocked/disable head. The raw-CLK
  // header cuts the tree in the same pass the clock falls; the complemented
  // head then reopens it one pass after the predischarge devices release, so
  // the tree never fights them and never conducts on stale gate values at a
  // cycle boundary.
  const std::string h0x = node("pu:h0x");
  const std::string h0a = node("pu:h0a");
  const std::string h0b = node("pu:h0b");
  net.add_device(px + "pu:h0:hdr", MosKind::Nmos, std::string("CLK"),
                 std::string("VDD"), h0x);
  net.add_device(px + "pu:h0:clk", MosKind::Pmos, clkb, h0x, h0a);
  net.add_device(px + "pu:h0:en", MosKind::Pmos, la, h0a, h0b);
  net.add_device(px + "pu:OP0", MosKind::Pmos, ipb[0], h0b, op[0]);
  const char* gates123[3] = {la0.c_str(), la1.c_str(), la2.c_str()};
  for (int i = 1; i <= 3; ++i) {
    const std::string x = node("pu:x" + num(i));
    net.add_device(px + "pu:OP" + num(i) + ":g", MosKind::Pmos,
                   std::string(gates123[i - 1]), h0b, x);
    net.add_device(px + "pu:OP" + num(i), MosKind::Pmos, ipb[static_cast<std::size_t>(i)],
                   x, op[static_cast<std::size_t>(i)]);
  }

  // Low-priority pull-ups: a ladder whose rungs tap off between the chain
  // devices. The chain conducts below the first request; gating it with the
  // buffered complements rather than the raw inputs keeps every chain flip
  // in the same pass as the tap flips, so an input change can never bridge
  // a charged output into a drained neighbour.
  const std::string h1x = node("pu:h1x");
  const std::string h1a = node("pu:h1a");
  const std::string h1b = node("pu:h1b");
  net.add_device(px + "pu:h1:hdr", MosKind::Nmos, std::string("CLK"),
                 std::string("VDD"), h1x);
  net.add_device(px + "pu:h1:clk", MosKind::Pmos, clkb, h1x, h1a);
  net.add_device(px + "pu:h1:en", MosKind::Pmos, laint, h1a, h1b);
  net.add_device(px + "pu:OP4", MosKind::Pmos, ipb[4], h1b, op[4]);
  std::string rail = h1b;
  for (int i = 5; i <= 7; ++i) {
    const std::string c = node("pu:c" + num(i - 1));
    net.add_device(px + "pu:h1:c" + num(i - 1), MosKind::Nmos,
                   ipb[static_cast<std::size_t>(i - 1)], rail, c);
    net.add_device(px + "pu:OP" + num(i), MosKind::Pmos, ipb[static_cast<std::size_t>(i)],
                   c, op[static_cast<std::size_t>(i)]);
    rail = c;
  }

  // Exactly two pulldowns per output: predischarge plus reset.
  for (int i = 0; i < 8; ++i)
    net.add_device(px + "pre:OP" + num(i), MosKind::Nmos, clkb,
                   op[static_cast<std::size_t>(i)], std::string("GND"));
  for (int i = 0; i < 4; ++i)
    net.add_device(px + "rs:OP" + num(i), MosKind::Nmos, la,
                   op[static_cast<std::size_t>(i)], std::string("GND"));
  for (int i = 4; i < 8; ++i)
    net.add_device(px + "rs:OP" + num(i), MosKind::Nmos, laint,
                   op[static_cast<std::size_t>(i)], std::string("GND"));

  const std::string laout_n = node("laoutN");
  add_nor(net, px + "nor:laout", {laint, ip[4], ip[5], ip[6], ip[7]}, laout_n);
  const std::string laout = node("laout");
  add_inverter(net, px + "inv:laout", laout_n, laout);
  return laout;
}

}  // namespace builder

inline Netlist build_robust_pe8() {
  Netlist net;
  net.add_node("VDD", NodeKind::Vdd);
  net.add_node("GND", NodeKind::Gnd);
  net.add_node("CLK", NodeKind::Clock);
  std::array<std::string, 8> ip, op;
  for (int i = 0; i < 8; ++i) {
    ip[static_cast<std::size_t>(i)] = "IP" + builder::num(i);
    net.add_node(ip[static_cast<std::size_t>(i)], NodeKind::Input);
  }
  net.add_node("LA", NodeKind::Input);
  for (int i = 0; i < 8; ++i) {
    op[static_cast<std::size_t>(i)] = "OP" + builder::num(i);
    net.add_node(op[static_cast<std::size_t>(i)], NodeKind::Output);
  }
  const std::string laout = builder::emit_priority_block(net, "", ip, op, "LA");
  net.lookahead_in = net.find("LA");
  net.drop_from_inputs(net.lookahead_in);
  net.lookahead_out = net.find(laout);
  return net;
}

// Active-high look-ahead, one shared pull-up chain, no reset pulldowns.
// Every output's only pulldown is the clocked predischarge device, so a
// disable arriving mid-evaluation cannot undo a charged output.
inline Netlist build_race_prone_pe8() {
  Netlist net;
  net.add_node("VDD", NodeKind::Vdd);
  net.add_node("GND", NodeKind::Gnd);
  net.add_node("CLK", NodeKind::Clock);
  std::array<std::string, 8> ip, op;
  for (int i = 0; i < 8; ++i) {
    ip[static_cast<std::size_t>(i)] = "IP" + builder::num(i);
    net.add_node(ip[static_cast<std::size_t>(i)], NodeKind::Input);
  }
  net.add_node("LA", NodeKind::Input);
  for (int i = 0; i < 8; ++i) {
    op[static_cast<std::size_t>(i)] = "OP" + builder::num(i);
    net.add_node(op[static_cast<std::size_t>(i)], NodeKind::Output);
  }

  net.add_node("CLKB", NodeKind::Internal);
  builder::add_inverter(net, "inv:CLKB", "CLK", "CLKB");
  net.add_node("LAB", NodeKind::Internal);
  builder::add_inverter(net, "inv:LAB", "LA", "LAB");
  std::array<std::string, 8> ipb;
  for (int i = 0; i < 8; ++i) {
    ipb[static_cast<std::size_t>(i)] = "IPB" + builder::num(i);
    net.add_node(ipb[static_cast<std::size_t>(i)], NodeKind::Internal);
    builder::add_inverter(net, "inv:IPB" + builder::num(i),
                          ip[static_cast<std::size_t>(i)],
                          ipb[static_cast<std::size_t>(i)]);
  }

  net.add_node("pu:ra", NodeKind::Internal);
  net.add_node("pu:rb", NodeKind::Internal);
  net.add_device("pu:h:clk", MosKind::Pmos, "CLKB", "VDD", "pu:ra");
  net.add_device("pu:h:en", MosKind::Pmos, "LAB", "pu:ra", "pu:rb");
  std::string rail = "pu:rb";
  for (int i = 0; i < 8; ++i) {
    net.add_device("pu:OP" + builder::num(i), MosKind::Pmos,
                   ipb[static_cast<std::size_t>(i)], rail,
                   op[static_cast<std::size_t>(i)]);
    if (i < 7) {
      const std::string c = "pu:c" + builder::num(i);
      net.add_node(c, NodeKind::Internal);
      net.add_device("pu:h:c" + builder::num(i), MosKind::Pmos,
                     ip[static_cast<std::size_t>(i)], rail, c);
      rail = c;
    }
  }
  for (int i = 0; i < 8; ++i)
    net.add_device("pre:OP" + builder::num(i), MosKind::Nmos, "CLKB",
                   op[static_cast<std::size_t>(i)], "GND");

  net.lookahead_in = net.find("LA");
  net.drop_from_inputs(net.lookahead_in);
  return net;
}

// n-type design with deep pulldown stacks under each output. The stack
// internals carry capacitance comparable to the output and are refreshed
// only when the own input is low, so a vector that drains them followed by
// one that selects that output splits the output's charge across the stack.
inline Netlist build_charge_share_prone_pe8() {
  Netlist net;
  net.add_node("VDD", NodeKind::Vdd);
  net.add_node("GND", NodeKind::Gnd);
  net.add_node("CLK", NodeKind::Clock);
  std::array<std::string, 8> ip, op;
  for (int i = 0; i < 8; ++i) {
    ip[static_cast<std::size_t>(i)] = "IP" + builder::num(i);
    net.add_node(ip[static_cast<std::size_t>(i)], NodeKind::Input);
  }
  net.add_node("LA", NodeKind::Input);
  for (int i = 0; i < 8; ++i) {
    op[static_cast<std::size_t>(i)] = "OP" + builder::num(i);
    net.add_node(op[static_cast<std::size_t>(i)], NodeKind::Output);
  }

  net.add_node("LAB", NodeKind::Internal);
  builder::add_inverter(net, "inv:LAB", "LA", "LAB");

  // Clock copy two inverters behind CLK. Precharge, foot and keeper run on
  // it so they swap in the same pass the clocked input buffers settle;
  // precharge can then never reach the stack through a stale buffer.
  net.add_node("CLKD1", NodeKind::Internal);
  net.add_node("CLKD", NodeKind::Internal);
  builder::add_inverter(net, "inv:CLKD1", "CLK", "CLKD1");
  builder::add_inverter(net, "inv:CLKD", "CLKD1", "CLKD");

  std::array<std::string, 8> ipb, d;
  for (int i = 0; i < 8; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    ipb[ii] = "IPB" + builder::num(i);
    net.add_node(ipb[ii], NodeKind::Internal);
    builder::add_inverter(net, "inv:IPB" + builder::num(i), ip[ii], ipb[ii]);
  }

  // Clocked input buffers: d_i follows IP_i during evaluation, 0 otherwise.
  for (int i = 0; i < 8; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    const std::string r = "dom:r" + builder::num(i);
    const std::string x = "dom:x" + builder::num(i);
    d[ii] = "dom:d" + builder::num(i);
    net.add_node(r, NodeKind::Internal);
    net.add_node(x, NodeKind::Internal);
    net.add_node(d[ii], NodeKind::Internal);
    net.add_device("dom:pre" + builder::num(i), MosKind::Pmos, "CLK", "VDD", r);
    net.add_device("dom:ev" + builder::num(i), MosKind::Nmos, ip[ii], r, x);
    net.add_device("dom:ft" + builder::num(i), MosKind::Nmos, "CLK", x, "GND");
    builder::add_inverter(net, "dom:inv" + builder::num(i), r, d[ii]);
  }

  for (int i = 0; i < 8; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    net.add_device("pre:OP" + builder::num(i), MosKind::Pmos, "CLKD", "VDD", op[ii]);
    const std::string foot = "ft:f" + builder::num(i);
    net.add_node(foot, NodeKind::Internal);
    net.add_device("ft:OP" + builder::num(i), MosKind::Nmos, "CLKD", foot, "GND");
    net.add_device("pd:OP" + builder::num(i) + ":nreq", MosKind::Nmos, ipb[ii], op[ii], foot);
    net.add_device("pd:OP" + builder::num(i) + ":dis", MosKind::Nmos, "LA", op[ii], foot);
    if (i == 0) continue;

    // Priority stack with heavy internals, refreshed only while IP_i is low.
    const std::string s = "pd:s" + builder::num(i);
    const std::string u = "pd:u" + builder::num(i);
    const std::string k = "pd:k" + builder::num(i);
    net.add_node(s, NodeKind::Internal, 10.0);
    net.add_node(u, NodeKind::Internal, 10.0);
    net.add_node(k, NodeKind::Internal);
    net.add_device("pd:OP" + builder::num(i) + ":top", MosKind::Nmos, d[ii], op[ii], s);
    net.add_device("pd:OP" + builder::num(i) + ":en", MosKind::Nmos, "LAB", s, u);
    for (int j = 0; j < i; ++j)
      net.add_device("pd:OP" + builder::num(i) + ":lit" + builder::num(j), MosKind::Nmos,
                     d[static_cast<std::size_t>(j)], u, foot);
    net.add_device("pd:OP" + builder::num(i) + ":kp0", MosKind::Pmos, "CLKD", "VDD", k);
    net.add_device("pd:OP" + builder::num(i) + ":kp1", MosKind::Pmos, ip[ii], k, s);
  }

  net.lookahead_in = net.find("LA");
  net.drop_from_inputs(net.lookahead_in);
  return net;
}

// N/8 robust blocks; block k's disable is a static OR over every raw input
// of blocks 0..k-1, so no block waits on another block's outputs.
inline Netlist build_cascaded(int bits) {
  if (bits < 8 || bits % 8 != 0 || bits > 64)
    throw std::invalid_argument("cascade width must be a multiple of 8 in [8, 64]");
  Netlist net;
  net.add_node("VDD", NodeKind::Vdd);
  net.add_node("GND", NodeKind::Gnd);
  net.add_node("CLK", NodeKind::Clock);
  std::vector<std::string> ip(static_cast<std::size_t>(bits));
  std::vector<std::string> op(static_cast<std::size_t>(bits));
  for (int i = 0; i < bits; ++i) {
    ip[static_cast<std::size_t>(i)] = "IP" + builder::num(i);
    net.add_node(ip[static_cast<std::size_t>(i)], NodeKind::Input);
  }
  for (int i = 0; i < bits; ++i) {
    op[static_cast<std::size_t>(i)] = "OP" + builder::num(i);
    net.add_node(op[static_cast<std::size_t>(i)], NodeKind::Output);
  }

  const int blocks = bits / 8;
  std::string last_laout;
  for (int b = 0; b < blocks; ++b) {
    std::string la = "GND";
    if (b > 0) {
      la = "b" + builder::num(b) + ":LA";
      net.add_node(la, NodeKind::Internal);
    }
    std::array<std::string, 8> bip, bop;
    for (int i = 0; i < 8; ++i) {
      bip[static_cast<std::size_t>(i)] = ip[static_cast<std::size_t>(b * 8 + i)];
      bop[static_cast<std::size_t>(i)] = op[static_cast<std::size_t>(b * 8 + i)];
    }
    last_laout = builder::emit_priority_block(net, "b" + builder::num(b) + ":",
                                              bip, bop, la);
  }
  for (int b = 1; b < blocks; ++b) {
    std::vector<std::string> above(ip.begin(), ip.begin() + static_cast<long>(b) * 8);
    builder::add_or_tree(net, "glue:b" + builder::num(b), above,
                         "b" + builder::num(b) + ":LA");
  }
  net.lookahead_out = net.find(last_laout);
  return net;
}

// --- design registry ----------------------------------------------------------

struct DesignId {
  enum class Kind { Robust8, RaceProne8, ChargeShareProne8, Cascaded };

  Kind kind = Kind::Robust8;
  int bits = 8;

  static std::optional<DesignId> parse(std::string_view name) {
    if (name == "robust8") return DesignId{Kind::Robust8, 8};
    if (name == "raceprone8") return DesignId{Kind::RaceProne8, 8};
    if (name == "cshare8") return DesignId{Kind::ChargeShareProne8, 8};
    if (name.starts_with("cascade")) {
      const std::string_view tail = name.substr(7);
      if (tail.empty() || tail.size() > 2) return std::nullopt;
      int bits = 0;
      for (const char c : tail) {
        if (c < '0' || c > '9') return std::nullopt;
        bits = bits * 10 + (c - '0');
      }
      if (bits < 8 || bits > 64 || bits % 8 != 0) return std::nullopt;
      return DesignId{Kind::Cascaded, bits};
    }
    return std::nullopt;
  }

  std::string name() const {
    switch (kind) {
      case Kind::Robust8: return "robust8";
      case Kind::RaceProne8: return "raceprone8";
      case Kind::ChargeShareProne8: return "cshare8";
      case Kind::Cascaded: return "cascade" + std::to_string(bits);
    }
    return "?";
  }

  int width() const { return kind == Kind::Cascaded ? bits : 8; }

  // True when driving the look-ahead pin high forces all outputs low.
  bool disable_on_high() const { return kind != Kind::RaceProne8; }

  // cshare8's stack internals are only valid after an idle all-zero cycle;
  // single-vector campaigns must prepend one.
  bool needs_idle_lead_cycle() const { return kind == Kind::ChargeShareProne8; }

  Netlist build() const {
    switch (kind) {
      case Kind::Robust8: return build_robust_pe8();
      case Kind::RaceProne8: return build_race_prone_pe8();
      case Kind::ChargeShareProne8: return build_charge_share_prone_pe8();
      case Kind::Cascaded: return build_cascaded(bits);
    }
    throw std::logic_error("unreachable");
  }
};

}  // namespace pesim
