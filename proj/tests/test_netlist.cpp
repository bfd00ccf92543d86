#include "pesim/netlist.hpp"

#include <gtest/gtest.h>

#include "pesim/designs.hpp"

namespace {

using pesim::MosKind;
using pesim::Netlist;
using pesim::NodeKind;
using pesim::ParseError;

const char* kInverter =
    "# inverter with explicit load\n"
    "NODE VDD vdd\n"
    "NODE GND gnd\n"
    "NODE CLK clock\n"
    "NODE a input\n"
    "NODE y output 10\n"
    "MOS m1 NMOS a y GND\n"
    "MOS m2 PMOS a VDD y\n";

TEST(NetlistParse, BasicNetlist) {
  const Netlist net = pesim::parse_netlist(kInverter);
  ASSERT_EQ(net.nodes.size(), 5u);
  ASSERT_EQ(net.devices.size(), 2u);
  EXPECT_EQ(net.nodes[0].kind, NodeKind::Vdd);
  EXPECT_EQ(net.nodes[3].name, "a");
  EXPECT_EQ(net.nodes[4].capacitance, 10.0);
  EXPECT_EQ(net.devices[0].kind, MosKind::Nmos);
  EXPECT_EQ(net.devices[0].gate, net.find("a"));
  EXPECT_EQ(net.devices[1].kind, MosKind::Pmos);
  ASSERT_EQ(net.inputs.size(), 1u);
  EXPECT_EQ(net.inputs[0], net.find("a"));
  ASSERT_EQ(net.outputs.size(), 1u);
  EXPECT_EQ(net.outputs[0], net.find("y"));
}

TEST(NetlistParse, CapacitanceDefaults) {
  const Netlist net = pesim::parse_netlist(
      "NODE VDD vdd\nNODE GND gnd\nNODE CLK clock\n"
      "NODE y output\nNODE w internal\nNODE z internal 2.5\n");
  EXPECT_EQ(net.nodes[net.find("y")].capacitance, 10.0);
  EXPECT_EQ(net.nodes[net.find("w")].capacitance, 1.0);
  EXPECT_EQ(net.nodes[net.find("z")].capacitance, 2.5);
}

TEST(NetlistParse, PriorityFollowsDeclarationOrder) {
  const Netlist net = pesim::parse_netlist(
      "NODE VDD vdd\nNODE GND gnd\nNODE CLK clock\n"
      "NODE b input\nNODE a input\nNODE c input\n");
  ASSERT_EQ(net.inputs.size(), 3u);
  EXPECT_EQ(net.nodes[net.inputs[0]].name, "b");
  EXPECT_EQ(net.nodes[net.inputs[1]].name, "a");
  EXPECT_EQ(net.nodes[net.inputs[2]].name, "c");
}

TEST(NetlistParse, LookaheadPinsLeaveThePriorityLists) {
  const Netlist net = pesim::parse_netlist(
      "NODE VDD vdd\nNODE GND gnd\nNODE CLK clock\n"
      "NODE i0 input\nNODE en input\nNODE i1 input\n"
      "NODE q internal\n"
      "LAIN en\nLAOUT q\n");
  ASSERT_EQ(net.inputs.size(), 2u);
  EXPECT_EQ(net.nodes[net.inputs[0]].name, "i0");
  EXPECT_EQ(net.nodes[net.inputs[1]].name, "i1");
  EXPECT_EQ(net.lookahead_in, net.find("en"));
  EXPECT_EQ(net.lookahead_out, net.find("q"));
}

void expect_parse_error(const std::string& text, const std::string& needle) {
  try {
    pesim::parse_netlist(text);
    FAIL() << "expected ParseError containing '" << needle << "'";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find(needle), std::string::npos)
        << "actual: " << e.what();
  }
}

TEST(NetlistParse, Errors) {
  const std::string rails = "NODE VDD vdd\nNODE GND gnd\nNODE CLK clock\n";
  expect_parse_error("FOO x\n", "unknown keyword");
  expect_parse_error("NODE x\n", "NODE needs");
  expect_parse_error("NODE x resistor\n", "unknown node kind");
  expect_parse_error(rails + "NODE a input\nNODE a input\n", "duplicate node a");
  expect_parse_error(rails + "NODE y output\nMOS m1 NMOS a y GND\n", "undeclared node a");
  expect_parse_error(rails + "NODE VDD2 vdd\n", "multiple vdd");
  expect_parse_error(rails + "NODE GND2 gnd\n", "multiple gnd");
  expect_parse_error(rails + "NODE CLK2 clock\n", "multiple clock");
  expect_parse_error("NODE VDD input\n", "reserved");
  expect_parse_error(rails + "NODE y output\nNODE a input\nMOS m1 NMOS a y y\n",
                     "shorts its own channel");
  expect_parse_error(rails + "NODE a input\nMOS m1 NFET a VDD GND\n", "unknown device kind");
  expect_parse_error(rails + "NODE y output ten\n", "bad capacitance");
  expect_parse_error(rails + "NODE y output -4\n", "capacitance must be positive");
  expect_parse_error(rails + "NODE a input\nLAIN b\n", "undeclared node b");
  expect_parse_error(rails + "NODE q internal\nLAIN q\n", "must have kind input");
  expect_parse_error(rails + "LAOUT VDD\n", "kind internal or output");
  expect_parse_error(rails + "NODE a input\nLAIN a\nLAIN a\n", "multiple LAIN");
  expect_parse_error(rails + "NODE a input 2 junk\n", "trailing tokens");
  expect_parse_error(rails + "NODE a input\nLAIN a junk\n", "trailing tokens");
  const std::string dup_dev = rails +
      "NODE a input\nNODE y output\nMOS m1 NMOS a y GND\nMOS m1 NMOS a y GND\n";
  expect_parse_error(dup_dev, "duplicate device m1");
}

TEST(NetlistParse, ErrorsCarryLineNumbers) {
  try {
    pesim::parse_netlist("NODE VDD vdd\nNODE GND gnd\nNODE CLK clock\nMOS m NMOS a b c\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 4"), std::string::npos) << e.what();
  }
}

TEST(NetlistSerialize, RoundTripsHandWrittenNetlist) {
  const Netlist net = pesim::parse_netlist(kInverter);
  const Netlist again = pesim::parse_netlist(pesim::serialize_netlist(net));
  EXPECT_TRUE(net == again);
}

TEST(NetlistSerialize, RoundTripsGeneratedDesigns) {
  for (const char* name : {"robust8", "raceprone8", "cshare8", "cascade16"}) {
    const auto id = pesim::DesignId::parse(name);
    ASSERT_TRUE(id.has_value()) << name;
    const Netlist net = id->build();
    const Netlist again = pesim::parse_netlist(pesim::serialize_netlist(net));
    EXPECT_TRUE(net == again) << name;
  }
}

TEST(NetlistValidate, CleanNetlistHasNoViolations) {
  EXPECT_TRUE(pesim::validate(pesim::parse_netlist(kInverter)).empty());
}

TEST(NetlistValidate, FlagsMissingRails) {
  Netlist net;
  net.add_node("VDD", NodeKind::Vdd);
  net.add_node("y", NodeKind::Output);
  const auto violations = pesim::validate(net);
  ASSERT_EQ(violations.size(), 2u);
  EXPECT_NE(violations[0].message.find("missing gnd"), std::string::npos);
  EXPECT_NE(violations[1].message.find("missing clock"), std::string::npos);
}

TEST(NetlistValidate, FlagsRailShortingDevice) {
  Netlist net;
  net.add_node("VDD", NodeKind::Vdd);
  net.add_node("GND", NodeKind::Gnd);
  net.add_node("CLK", NodeKind::Clock);
  net.add_node("g", NodeKind::Input);
  net.add_device("bad", MosKind::Nmos, "g", "VDD", "GND");
  const auto violations = pesim::validate(net);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_NE(violations[0].message.find("shorts the rails"), std::string::npos);
}

TEST(NetlistValidate, FlagsNonPositiveCapacitance) {
  Netlist net = pesim::parse_netlist(kInverter);
  net.nodes[static_cast<std::size_t>(net.find("y"))].capacitance = 0.0;
  const auto violations = pesim::validate(net);
  ASSERT_EQ(violations.size(), 1u);
  EXPECT_NE(violations[0].message.find("non-positive capacitance"), std::string::npos);
}

TEST(NetlistValidate, OutputPulldownRule) {
  EXPECT_TRUE(pesim::validate(pesim::build_robust_pe8(), true).empty());
  const auto violations = pesim::validate(pesim::build_race_prone_pe8(), true);
  EXPECT_EQ(violations.size(), 8u);
  for (const auto& v : violations)
    EXPECT_NE(v.message.find("expected 2"), std::string::npos) << v.message;
}

TEST(DeviceCount, CountsMatchParsedDeviceLines) {
  const Netlist net = pesim::build_robust_pe8();
  const auto count = pesim::device_count(net);
  EXPECT_EQ(count.total(), static_cast<int>(net.devices.size()));
  int nmos = 0;
  for (const auto& d : net.devices)
    if (d.kind == MosKind::Nmos) ++nmos;
  EXPECT_EQ(count.nmos, nmos);
}

TEST(DeviceCount, BreakdownPartitionsTheTotal) {
  const Netlist net = pesim::build_robust_pe8();
  const auto groups = pesim::device_breakdown(net);
  int total = 0;
  for (const auto& [name, count] : groups) total += count.total();
  EXPECT_EQ(total, pesim::device_count(net).total());
  const auto has = [&](const char* key) {
    for (const auto& [name, count] : groups)
      if (name == key) return true;
    return false;
  };
  EXPECT_TRUE(has("inv"));
  EXPECT_TRUE(has("pu"));
  EXPECT_TRUE(has("pre"));
  EXPECT_TRUE(has("rs"));
}

}  // namespace
