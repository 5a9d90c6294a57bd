#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mgnet/errors.hpp"
#include "mgnet/generators.hpp"
#include "mgnet/graph_io.hpp"
#include "mgnet/records.hpp"
#include "mgnet/simulator.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kConfig = 1;
constexpr int kFailure = 2;

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw mgnet::ConfigError(path.string() + ": cannot write file");
  out << text;
  if (!out) throw mgnet::ConfigError(path.string() + ": write failed");
}

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw mgnet::ConfigError(dir + ": cannot create output directory");
  return dir;
}

mgnet::DecodeMode parse_mode(const std::string& s) {
  if (s == "resilient-unknown" || s == "resilient") return mgnet::DecodeMode::unknown_faults;
  if (s == "resilient-known") return mgnet::DecodeMode::known_faults;
  if (s == "baseline") return mgnet::DecodeMode::baseline;
  throw mgnet::ConfigError("--mode: unknown mode '" + s + "'");
}

mgnet::Graph load_graph(const fs::path& path) {
  const auto text = mgnet::read_text_file(path);
  return path.extension() == ".dot" ? mgnet::parse_dot(text) : mgnet::parse_edge_list(text);
}

// "0-1,2-3" style list of attacked links.
mgnet::LinkAttackSet parse_links(const std::string& spec) {
  mgnet::LinkAttackSet links;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto dash = item.find('-');
    std::size_t a = 0, b = 0;
    const auto* s = item.data();
    const auto* e = s + item.size();
    if (dash == std::string::npos || std::from_chars(s, s + dash, a).ptr != s + dash ||
        std::from_chars(s + dash + 1, e, b).ptr != e)
      throw mgnet::ConfigError("--attacked-links: expected i-j pairs, got '" + item + "'");
    if (a == b) throw mgnet::ConfigError("--attacked-links: self-loop '" + item + "'");
    links.forbidden_edges.insert(mgnet::make_edge(a, b));
  }
  return links;
}

struct RunArgs {
  std::string scenario;
  std::string mode = "resilient-unknown";
  std::string out = "mgnet_out";
  std::optional<std::uint64_t> seed;
  std::size_t periods = 1;
  std::string fixed_graph;
  bool parallel = false;
};

int cmd_run(const RunArgs& args) {
  auto scenario = mgnet::load_scenario(args.scenario);
  const auto mode = parse_mode(args.mode);
  if (args.seed) scenario.seed = *args.seed;
  if (!args.fixed_graph.empty()) {
    scenario.fixed_graph = load_graph(args.fixed_graph);
    scenario.validate();
  }
  if (args.periods == 0) throw mgnet::ConfigError("--periods: must be at least 1");
  const auto dir = prepare_dir(args.out);

  const auto agent = mgnet::CommunicationAgent::for_attack(scenario.attack, scenario.f, scenario.seed);
  const auto records = mgnet::run_campaign(scenario, args.periods, agent, mode, {args.parallel});

  write_file(dir / "decision_record.json", mgnet::campaign_json(scenario, records));
  write_file(dir / "estimates.csv", mgnet::estimates_csv(records));
  for (const auto& r : records) {
    const auto suffix = r.period.index == 0 ? std::string() : "_period" + std::to_string(r.period.index);
    write_file(dir / ("trajectory" + suffix + ".csv"), mgnet::trajectory_csv(r));
    if (r.graph) {
      write_file(dir / ("graph" + suffix + ".edges"), mgnet::to_edge_list(*r.graph));
      write_file(dir / ("graph" + suffix + ".dot"), mgnet::to_dot(*r.graph));
    }
  }

  int code = kOk;
  for (const auto& r : records) {
    std::cout << "period " << r.period.index << ": ";
    if (!r.error.empty()) {
      std::cout << "error\n";
      std::cerr << "period " << r.period.index << ": " << r.error << "\n";
      code = kFailure;
      continue;
    }
    std::cout << (r.consensus_verdict ? mgnet::to_string(*r.consensus_verdict) : "split") << " supply "
              << r.recovered_supply_total << " demand " << r.recovered_demand_total << " max deviation "
              << std::max(r.max_supply_deviation, r.max_demand_deviation) << "\n";
    for (const auto& c : r.controllers)
      if (!c.error.empty()) std::cerr << "controller " << c.id << ": " << c.error << "\n";
    if (r.decode_failed() || !r.unanimous) code = kFailure;
  }
  return code;
}

struct GraphArgs {
  std::size_t n = 0;
  std::size_t f = 0;
  std::string strategy = "preventive";
  std::string attacked_links;
  std::uint64_t seed = 0;
  std::string out = "mgnet_graph";
};

int cmd_graph(const GraphArgs& args) {
  mgnet::CommunicationAgent::Strategy strategy;
  if (args.strategy == "preventive")
    strategy = mgnet::CommunicationAgent::Strategy::preventive;
  else if (args.strategy == "responsive")
    strategy = mgnet::CommunicationAgent::Strategy::responsive;
  else
    throw mgnet::ConfigError("--strategy: unknown strategy '" + args.strategy + "'");
  auto links = parse_links(args.attacked_links);
  try {
    links.validate(args.n);
  } catch (const mgnet::Error& e) {
    throw mgnet::ConfigError(std::string("--attacked-links: ") + e.what());
  }
  if (strategy == mgnet::CommunicationAgent::Strategy::preventive && !links.forbidden_edges.empty())
    std::cerr << "note: preventive strategy ignores --attacked-links\n";

  const mgnet::CommunicationAgent agent(strategy, args.f, args.seed);
  const auto g = agent.build({args.n, args.f, links, 0});
  const auto cert = g.node_count() >= 2 ? mgnet::vertex_connectivity(g) : mgnet::ConnectivityCertificate{};

  const auto dir = prepare_dir(args.out);
  write_file(dir / "graph.edges", mgnet::to_edge_list(g));
  write_file(dir / "graph.dot", mgnet::to_dot(g));
  write_file(dir / "certificate.json", mgnet::certificate_json(cert));
  std::cout << "nodes " << g.node_count() << " edges " << g.edge_count() << " kappa " << cert.kappa << "\n";
  return kOk;
}

struct VerifyArgs {
  std::string weights;
  std::size_t f = 0;
  std::optional<std::size_t> k_max;
};

int cmd_verify(const VerifyArgs& args) {
  const auto w = mgnet::parse_weight_csv(mgnet::read_text_file(args.weights));
  const auto k_max = args.k_max.value_or(w.size() + 2);
  if (const auto k = mgnet::verify_rank_condition(w, args.f, k_max)) {
    std::cout << "feasible K " << *k << "\n";
    return kOk;
  }
  std::cout << "infeasible: rank condition fails for every K up to " << k_max << "\n";
  if (const auto k = mgnet::identifiability_horizon(w, args.f, k_max))
    std::cout << "known-fault identifiability holds from K " << *k << "\n";
  return kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resilient interconnection decisions for networked microgrids"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario campaign");
  run_cmd->add_option("--scenario", run.scenario, "Scenario JSON")->required();
  run_cmd->add_option("--mode", run.mode, "resilient-known, resilient-unknown or baseline");
  run_cmd->add_option("--out", run.out, "Output directory");
  run_cmd->add_option("--seed", run.seed, "Seed override")->envname("MGNET_SEED");
  run_cmd->add_option("--periods", run.periods, "Number of decision periods");
  run_cmd->add_option("--fixed-graph", run.fixed_graph, "Edge list or DOT file overriding the agent");
  run_cmd->add_flag("--parallel", run.parallel, "Run controllers on worker threads");

  GraphArgs graph;
  auto* graph_cmd = app.add_subcommand("graph", "Generate a certified topology");
  graph_cmd->add_option("--n", graph.n, "Node count")->required();
  graph_cmd->add_option("--f", graph.f, "Tolerated faulty controllers")->required();
  graph_cmd->add_option("--strategy", graph.strategy, "preventive or responsive");
  graph_cmd->add_option("--attacked-links", graph.attacked_links, "Comma separated i-j pairs");
  graph_cmd->add_option("--seed", graph.seed, "Seed")->envname("MGNET_SEED");
  graph_cmd->add_option("--out", graph.out, "Output directory");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check the rank condition for a weight matrix");
  verify_cmd->add_option("--weights", verify.weights, "Weight CSV")->required();
  verify_cmd->add_option("--f", verify.f, "Tolerated faulty controllers")->required();
  verify_cmd->add_option("--k-max", verify.k_max, "Largest horizon to try");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*graph_cmd) return cmd_graph(graph);
    return cmd_verify(verify);
  } catch (const mgnet::InfeasibleTopology& e) {
    std::cerr << "infeasible topology: " << e.what() << "\n";
    return kFailure;
  } catch (const mgnet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const mgnet::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kConfig;
  } catch (const mgnet::InvalidGraph& e) {
    std::cerr << "invalid graph: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
}
