#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "pesim/designs.hpp"
#include "pesim/netlist.hpp"
#include "pesim/report_io.hpp"
#include "pesim/sim.hpp"
#include "pesim/stimulus.hpp"
#include "pesim/vcd.hpp"
#include "pesim/verify.hpp"

// Exit codes: 0 pass, 1 campaign verdict fail, 2 usage or simulation error.

namespace {

using namespace pesim;

std::string load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

DesignId need_design(const std::string& name) {
  const auto id = DesignId::parse(name);
  if (!id)
    throw std::runtime_error("unknown design " + name +
                             " (expected robust8, raceprone8, cshare8 or cascade<bits>)");
  return *id;
}

std::vector<SimTime> parse_offsets(const std::string& text) {
  // "a:b" is an inclusive range, otherwise a comma list
  std::vector<SimTime> out;
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const long a = std::stol(text.substr(0, colon));
    const long b = std::stol(text.substr(colon + 1));
    if (b < a) throw std::runtime_error("offset range is backwards");
    for (long v = a; v <= b; ++v) out.push_back(v);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) out.push_back(std::stol(item));
  }
  if (out.empty()) throw std::runtime_error("no offsets given");
  return out;
}

PairMode parse_pairs(const std::string& text) {
  PairMode mode;
  if (text == "exhaustive") return mode;
  if (text.rfind("random:", 0) == 0) {
    mode.exhaustive = false;
    mode.count = std::stoll(text.substr(7));
    return mode;
  }
  throw std::runtime_error("--pairs wants 'exhaustive' or 'random:<count>'");
}

CampaignConfig campaign_config(std::uint64_t seed, int jobs) {
  CampaignConfig cfg;
  cfg.seed = seed;
  cfg.jobs = jobs < 1 ? 1 : jobs;
  return cfg;
}

int emit_report(const Report& rep, const CampaignConfig& cfg,
                const std::string& format, const std::string& report_path) {
  if (format == "json") std::cout << report_to_json_string(rep, cfg);
  else std::cout << report_to_table(rep);
  if (!report_path.empty()) write_file(report_path, report_to_json_string(rep, cfg));
  return rep.pass() ? 0 : 1;
}

int run_simulate(const std::string& design, const std::string& netlist_path,
                 const std::string& stim_path, const std::string& vcd_path,
                 bool stats) {
  if (design.empty() == netlist_path.empty())
    throw std::runtime_error("simulate wants exactly one of --design or --netlist");
  const Netlist net =
      design.empty() ? parse_netlist(load_file(netlist_path)) : need_design(design).build();
  const Stimulus stim = parse_stimulus(load_file(stim_path), net);
  const SimConfig cfg;
  const Waveform wave = simulate(net, stim, cfg);
  if (!vcd_path.empty()) {
    std::ofstream out(vcd_path);
    if (!out) throw std::runtime_error("cannot write " + vcd_path);
    write_vcd(wave, out);
  }
  std::cout << "nodes " << net.nodes.size() << ", devices "
            << device_count(net).total() << ", ticks " << wave.duration << "\n";
  if (!net.outputs.empty()) {
    std::cout << "tick";
    for (const int op : net.outputs)
      std::cout << ' ' << net.nodes[static_cast<std::size_t>(op)].name;
    std::cout << "\n";
    for (SimTime t = stim.clock_period - cfg.sample_offset; t <= wave.duration;
         t += stim.clock_period) {
      std::cout << t;
      for (const int op : net.outputs)
        std::cout << ' ' << logic_char(cfg.logic_of(wave.at(op, t).voltage));
      std::cout << "\n";
    }
  }
  if (wave.rail_short_seen)
    std::cout << "warning: rails were shorted during the run\n";
  if (stats) {
    const auto act = switching_activity(wave, cfg);
    std::cout << "activity " << act.weighted << " weighted, "
              << act.logic_transitions << " logic, " << act.x_transitions
              << " x\n";
  }
  return 0;
}

int run_dump(const std::string& design, const std::string& out_path, bool stats) {
  const Netlist net = need_design(design).build();
  if (stats) {
    const auto count = device_count(net);
    std::cout << design << ": " << count.total() << " devices (" << count.nmos
              << " nmos, " << count.pmos << " pmos), " << net.nodes.size()
              << " nodes\n";
    for (const auto& [group, n] : device_breakdown(net))
      std::cout << "  " << std::left << std::setw(10) << group << n.total()
                << " (" << n.nmos << " nmos, " << n.pmos << " pmos)\n";
    return 0;
  }
  const std::string text = serialize_netlist(net);
  if (out_path.empty()) std::cout << text;
  else write_file(out_path, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"switch-level workbench for clocked priority encoders"};
  app.require_subcommand(1);

  std::string design, netlist_path, stim_path, vcd_path, out_path;
  std::string report_path, format = "table", offsets_text = "1:24",
              pairs_text = "exhaustive";
  std::uint64_t seed = 12345;
  int jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs < 1) jobs = 1;
  long long cycles = 1000, cases = 1000;
  int bits = 16;
  bool stats = false;

  const auto add_campaign_flags = [&](CLI::App* cmd, bool with_design) {
    if (with_design)
      cmd->add_option("--design", design, "design name")->required();
    cmd->add_option("--seed", seed, "campaign seed");
    cmd->add_option("--jobs", jobs, "worker threads");
    cmd->add_option("--report", report_path, "write the JSON report here");
    cmd->add_option("--format", format, "stdout format")
        ->check(CLI::IsMember({"json", "table"}));
  };

  CLI::App* sim_cmd =
      app.add_subcommand("simulate", "run one netlist against a stimulus file");
  sim_cmd->add_option("--design", design, "generated design to simulate");
  sim_cmd->add_option("--netlist", netlist_path, "netlist file to simulate");
  sim_cmd->add_option("--stim", stim_path, "stimulus file")->required();
  sim_cmd->add_option("--vcd", vcd_path, "write the waveform here");
  sim_cmd->add_flag("--stats", stats, "print weighted switching activity");

  CLI::App* verify_cmd = app.add_subcommand(
      "verify", "exhaustive equivalence against the behavioral model");
  add_campaign_flags(verify_cmd, true);

  CLI::App* race_cmd =
      app.add_subcommand("race", "late look-ahead timing sweep");
  add_campaign_flags(race_cmd, true);
  race_cmd->add_option("--offsets", offsets_text,
                       "tick offsets after the evaluation edge, a:b or list");

  CLI::App* share_cmd = app.add_subcommand(
      "sharescan", "back-to-back vector pairs probing stored charge");
  add_campaign_flags(share_cmd, true);
  share_cmd->add_option("--pairs", pairs_text, "exhaustive or random:<count>");

  CLI::App* power_cmd = app.add_subcommand(
      "power", "long-run transition audit with weighted activity");
  add_campaign_flags(power_cmd, true);
  power_cmd->add_option("--cycles", cycles, "number of random input cycles");

  CLI::App* cascade_cmd = app.add_subcommand(
      "cascade", "behavioral and netlist checks for cascaded widths");
  add_campaign_flags(cascade_cmd, false);
  cascade_cmd->add_option("--bits", bits, "total width, multiple of 8")->required();
  cascade_cmd->add_option("--cases", cases,
                          "netlist vectors for widths past exhaustive reach");

  CLI::App* dump_cmd = app.add_subcommand("dump", "emit a generated netlist");
  dump_cmd->add_option("--design", design, "design name")->required();
  dump_cmd->add_option("--out", out_path, "write the netlist here");
  dump_cmd->add_flag("--stats", stats, "print device counts instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim_cmd->parsed())
      return run_simulate(design, netlist_path, stim_path, vcd_path, stats);
    if (dump_cmd->parsed()) return run_dump(design, out_path, stats);

    const CampaignConfig cfg = campaign_config(seed, jobs);
    if (verify_cmd->parsed())
      return emit_report(exhaustive_equivalence(need_design(design), cfg), cfg,
                         format, report_path);
    if (race_cmd->parsed())
      return emit_report(
          race_sweep(need_design(design), parse_offsets(offsets_text), cfg), cfg,
          format, report_path);
    if (share_cmd->parsed())
      return emit_report(
          charge_share_scan(need_design(design), parse_pairs(pairs_text), cfg),
          cfg, format, report_path);
    if (power_cmd->parsed()) {
      const DesignId id = need_design(design);
      const auto inputs = random_cycle_inputs(cycles, seed, id.width());
      return emit_report(switching_audit(id, inputs, cfg), cfg, format,
                         report_path);
    }
    if (cascade_cmd->parsed())
      return emit_report(cascade_check(bits, cases, cfg), cfg, format,
                         report_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
