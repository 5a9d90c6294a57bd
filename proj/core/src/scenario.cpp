#include "mgnet/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "mgnet/errors.hpp"

namespace mgnet {

using nlohmann::json;

std::string_view to_string(Quantity q) { return q == Quantity::supply ? "supply" : "demand"; }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::interconnect: return "interconnect";
    case Verdict::stand_alone: return "stand_alone";
    case Verdict::undecided: return "undecided";
  }
  return "undecided";
}

Verdict evaluate_criterion(double supply_total, double demand_total) {
  if (!std::isfinite(supply_total) || !std::isfinite(demand_total))
    throw InvalidArgument("interconnection criterion needs finite totals");
  return supply_total > demand_total ? Verdict::interconnect : Verdict::stand_alone;
}

NodeSet AttackSpec::compromised_nodes() const {
  NodeSet out;
  for (const auto& c : controllers) out.push_back(c.node);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t AttackSpec::injection_steps() const {
  std::size_t steps = 0;
  for (const auto& c : controllers)
    steps = std::max({steps, c.supply.step_count(), c.demand.step_count()});
  return steps;
}

namespace {

double draw(const InjectionGenerator& gen, Rng& rng) {
  const auto& p = gen.params;
  if (gen.distribution == "constant") return p.at(0);
  if (gen.distribution == "uniform") return uniform_real(rng, p.at(0), p.at(1));
  if (gen.distribution == "normal") {
    // Box-Muller on the portable uniform source.
    double u1;
    do {
      u1 = uniform_real(rng, 0.0, 1.0);
    } while (u1 <= 0.0);
    const double u2 = uniform_real(rng, 0.0, 1.0);
    return p.at(0) + p.at(1) * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  throw ConfigError("unknown injection distribution '" + gen.distribution + "'");
}

std::size_t distribution_arity(const std::string& name) {
  if (name == "constant") return 1;
  if (name == "uniform" || name == "normal") return 2;
  throw ConfigError("unknown injection distribution '" + name + "'");
}

}  // namespace

InjectionSchedule sample_injections(const AttackSpec& spec, Quantity quantity, std::size_t steps, Rng& rng) {
  InjectionSchedule out;
  out.horizon = steps;
  for (const auto& c : spec.controllers) {
    const auto& gen = c.generator(quantity);
    std::vector<double> row;
    if (gen.is_explicit()) {
      row = gen.values;
    } else {
      if (gen.params.size() != distribution_arity(gen.distribution))
        throw ConfigError("distribution '" + gen.distribution + "' has the wrong number of parameters");
      for (std::size_t k = 0; k < gen.steps; ++k) row.push_back(draw(gen, rng));
    }
    if (row.size() > steps)
      throw ConfigError("node " + std::to_string(c.node) + " declares " + std::to_string(row.size()) +
                        " injection steps but the horizon is " + std::to_string(steps));
    row.resize(steps, 0.0);
    out.faulty_nodes.push_back(c.node);
    out.values.push_back(std::move(row));
  }
  return out;
}

double Scenario::supply_total() const {
  double s = 0.0;
  for (const auto& m : microgrids) s += m.supply;
  return s;
}

double Scenario::demand_total() const {
  double s = 0.0;
  for (const auto& m : microgrids) s += m.critical_demand;
  return s;
}

void Scenario::validate() const {
  const auto n = node_count();
  if (n == 0) throw ConfigError("microgrids: list is empty");
  for (std::size_t i = 0; i < n; ++i) {
    const auto& m = microgrids[i];
    const std::string at = "microgrids[" + std::to_string(i) + "]";
    if (m.id != i) throw ConfigError(at + ".id: expected " + std::to_string(i));
    if (!std::isfinite(m.supply) || m.supply < 0.0) throw ConfigError(at + ".supply: must be a non-negative number");
    if (!std::isfinite(m.critical_demand) || m.critical_demand < 0.0)
      throw ConfigError(at + ".critical_demand: must be a non-negative number");
  }
  if (!std::isfinite(period_hours) || period_hours <= 0.0) throw ConfigError("period_hours: must be positive");

  auto nodes = attack.compromised_nodes();
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
    throw ConfigError("attack.controllers: duplicate node");
  for (std::size_t i = 0; i < attack.controllers.size(); ++i) {
    const auto& c = attack.controllers[i];
    const std::string at = "attack.controllers[" + std::to_string(i) + "]";
    if (c.node >= n) throw ConfigError(at + ".node: out of range");
    for (auto q : {Quantity::supply, Quantity::demand}) {
      const auto& gen = c.generator(q);
      const std::string gat = at + "." + std::string(to_string(q));
      if (!gen.is_explicit()) {
        try {
          if (gen.params.size() != distribution_arity(gen.distribution))
            throw ConfigError("wrong number of params");
        } catch (const ConfigError& e) {
          throw ConfigError(gat + ".distribution: " + e.what());
        }
      }
      for (double v : gen.values)
        if (!std::isfinite(v)) throw ConfigError(gat + ".values: non-finite entry");
    }
  }
  if (attack.controllers.size() > f)
    throw ConfigError("attack.controllers: " + std::to_string(attack.controllers.size()) +
                      " compromised controllers exceed the fault bound f = " + std::to_string(f));
  try {
    attack.compromised_links.validate(n);
  } catch (const InvalidArgument& e) {
    throw ConfigError(std::string("attack.compromised_links: ") + e.what());
  }
  if (fixed_graph && fixed_graph->node_count() != n)
    throw ConfigError("graph.fixed_edges: graph has " + std::to_string(fixed_graph->node_count()) +
                      " nodes, scenario has " + std::to_string(n));
  if (weights) {
    if (weights->rows() != static_cast<Eigen::Index>(n) || weights->cols() != static_cast<Eigen::Index>(n))
      throw ConfigError("weights: must be " + std::to_string(n) + "x" + std::to_string(n));
    try {
      if (fixed_graph)
        WeightMatrix(*weights, *fixed_graph);
      else
        WeightMatrix::from_matrix(*weights);
    } catch (const InvalidArgument& e) {
      throw ConfigError(std::string("weights: ") + e.what());
    }
  }
  if (k_max() == 0) throw ConfigError("consensus.K_max: must be positive");
  if (consensus.baseline_steps == 0) throw ConfigError("consensus.baseline_steps: must be positive");
  if (consensus.synthesis_attempts == 0) throw ConfigError("consensus.synthesis_attempts: must be positive");
}

bool operator==(const Scenario& a, const Scenario& b) {
  const bool same_weights = a.weights.has_value() == b.weights.has_value() &&
                            (!a.weights || *a.weights == *b.weights);
  return a.name == b.name && a.microgrids == b.microgrids && a.attack == b.attack && a.f == b.f &&
         a.period_hours == b.period_hours && a.seed == b.seed && a.consensus == b.consensus &&
         a.fixed_graph == b.fixed_graph && same_weights &&
         a.regenerate_graph_per_period == b.regenerate_graph_per_period;
}

namespace {

// Typed field access that reports the JSON path on failure.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const json& raw() const { return j_; }
  const std::string& path() const { return path_; }
  bool has(const char* key) const { return j_.is_object() && j_.contains(key); }
  Reader at(const char* key) const {
    if (!has(key)) fail(child(key), "missing required field");
    return {j_.at(key), child(key)};
  }
  Reader at(std::size_t i) const { return {j_.at(i), path_ + "[" + std::to_string(i) + "]"}; }

  double number() const {
    if (!j_.is_number()) fail(path_, "expected a number");
    return j_.get<double>();
  }
  std::size_t index() const {
    if (!j_.is_number_integer() || j_.get<std::int64_t>() < 0) fail(path_, "expected a non-negative integer");
    return j_.get<std::size_t>();
  }
  std::uint64_t u64() const {
    if (!j_.is_number_unsigned() && !(j_.is_number_integer() && j_.get<std::int64_t>() >= 0))
      fail(path_, "expected a non-negative integer");
    return j_.get<std::uint64_t>();
  }
  bool boolean() const {
    if (!j_.is_boolean()) fail(path_, "expected true or false");
    return j_.get<bool>();
  }
  std::string string() const {
    if (!j_.is_string()) fail(path_, "expected a string");
    return j_.get<std::string>();
  }
  std::size_t array_size() const {
    if (!j_.is_array()) fail(path_, "expected an array");
    return j_.size();
  }
  void object() const {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  [[noreturn]] static void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where + ": " + what);
  }

 private:
  std::string child(const char* key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& j_;
  std::string path_;
};

std::vector<double> numbers(const Reader& r) {
  std::vector<double> out;
  for (std::size_t i = 0; i < r.array_size(); ++i) out.push_back(r.at(i).number());
  return out;
}

Edge edge_pair(const Reader& r) {
  if (r.array_size() != 2) Reader::fail(r.path(), "expected a [i, j] pair");
  const auto a = r.at(std::size_t{0}).index();
  const auto b = r.at(std::size_t{1}).index();
  if (a == b) Reader::fail(r.path(), "self-loop");
  return make_edge(a, b);
}

InjectionGenerator read_generator(const Reader& r) {
  r.object();
  InjectionGenerator g;
  if (r.has("values")) {
    g.values = numbers(r.at("values"));
  } else if (r.has("distribution")) {
    g.distribution = r.at("distribution").string();
    if (g.distribution != "uniform" && g.distribution != "normal" && g.distribution != "constant")
      Reader::fail(r.path() + ".distribution", "unknown distribution '" + g.distribution + "'");
    g.params = numbers(r.at("params"));
    g.steps = r.at("steps").index();
  } else {
    Reader::fail(r.path(), "needs either 'values' or 'distribution'");
  }
  return g;
}

json write_generator(const InjectionGenerator& g) {
  if (g.is_explicit()) return {{"values", g.values}};
  return {{"distribution", g.distribution}, {"params", g.params}, {"steps", g.steps}};
}

}  // namespace

Scenario parse_scenario(std::string_view text, std::string_view origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string(origin) + ": " + e.what());
  }
  try {
    Reader root(doc, "");
    root.object();
    Scenario s;
    if (root.has("name")) s.name = root.at("name").string();

    const auto mgs = root.at("microgrids");
    for (std::size_t i = 0; i < mgs.array_size(); ++i) {
      const auto m = mgs.at(i);
      m.object();
      MicrogridProfile p;
      p.id = m.has("id") ? m.at("id").index() : i;
      p.supply = m.at("supply").number();
      p.critical_demand = m.at("critical_demand").number();
      if (m.has("label")) p.label = m.at("label").string();
      s.microgrids.push_back(std::move(p));
    }

    s.f = root.at("f").index();
    if (root.has("period_hours")) s.period_hours = root.at("period_hours").number();
    s.seed = root.at("seed").u64();

    if (root.has("attack")) {
      const auto a = root.at("attack");
      a.object();
      if (a.has("known_to_agent")) s.attack.known_to_agent = a.at("known_to_agent").boolean();
      if (a.has("compromised_links")) {
        const auto links = a.at("compromised_links");
        for (std::size_t i = 0; i < links.array_size(); ++i)
          s.attack.compromised_links.forbidden_edges.insert(edge_pair(links.at(i)));
      }
      if (a.has("controllers")) {
        const auto cs = a.at("controllers");
        for (std::size_t i = 0; i < cs.array_size(); ++i) {
          const auto c = cs.at(i);
          c.object();
          CompromisedController cc;
          cc.node = c.at("node").index();
          if (c.has("injection")) {
            cc.supply = cc.demand = read_generator(c.at("injection"));
          } else {
            cc.supply = read_generator(c.at("supply"));
            cc.demand = read_generator(c.at("demand"));
          }
          s.attack.controllers.push_back(std::move(cc));
        }
      }
    }

    if (root.has("consensus")) {
      const auto c = root.at("consensus");
      c.object();
      if (c.has("K_max")) s.consensus.k_max = c.at("K_max").index();
      if (c.has("residual_tolerance")) s.consensus.decode.residual_tolerance = c.at("residual_tolerance").number();
      if (c.has("agreement_tolerance")) s.consensus.decode.agreement_tolerance = c.at("agreement_tolerance").number();
      if (c.has("rank_threshold")) s.consensus.decode.rank_threshold = c.at("rank_threshold").number();
      if (c.has("condition_threshold")) s.consensus.decode.condition_threshold = c.at("condition_threshold").number();
      if (c.has("synthesis_attempts")) s.consensus.synthesis_attempts = c.at("synthesis_attempts").index();
      if (c.has("baseline_steps")) s.consensus.baseline_steps = c.at("baseline_steps").index();
    }

    if (root.has("graph")) {
      const auto g = root.at("graph");
      g.object();
      if (g.has("regenerate_per_period")) s.regenerate_graph_per_period = g.at("regenerate_per_period").boolean();
      if (g.has("fixed_edges")) {
        const auto es = g.at("fixed_edges");
        Graph fixed(s.microgrids.size());
        for (std::size_t i = 0; i < es.array_size(); ++i) {
          const auto e = edge_pair(es.at(i));
          if (e.second >= fixed.node_count()) Reader::fail(es.at(i).path(), "endpoint out of range");
          fixed.add_edge(e.first, e.second);
        }
        s.fixed_graph = std::move(fixed);
      }
    }

    if (root.has("weights")) {
      const auto w = root.at("weights");
      const auto n = w.array_size();
      Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (std::size_t i = 0; i < n; ++i) {
        const auto row = numbers(w.at(i));
        if (row.size() != n) Reader::fail(w.at(i).path(), "expected " + std::to_string(n) + " entries");
        for (std::size_t j = 0; j < n; ++j)
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
      }
      s.weights = std::move(m);
    }

    s.validate();
    return s;
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(origin) + ": " + e.what());
  }
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(path.string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(read_text_file(path), path.string());
}

std::string to_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["microgrids"] = json::array();
  for (const auto& m : s.microgrids)
    j["microgrids"].push_back({{"id", m.id}, {"label", m.label}, {"supply", m.supply},
                               {"critical_demand", m.critical_demand}});
  j["f"] = s.f;
  j["period_hours"] = s.period_hours;
  j["seed"] = s.seed;

  json attack;
  attack["known_to_agent"] = s.attack.known_to_agent;
  attack["compromised_links"] = json::array();
  for (const auto& [a, b] : s.attack.compromised_links.forbidden_edges)
    attack["compromised_links"].push_back({a, b});
  attack["controllers"] = json::array();
  for (const auto& c : s.attack.controllers)
    attack["controllers"].push_back(
        {{"node", c.node}, {"supply", write_generator(c.supply)}, {"demand", write_generator(c.demand)}});
  j["attack"] = attack;

  json consensus;
  if (s.consensus.k_max) consensus["K_max"] = *s.consensus.k_max;
  consensus["residual_tolerance"] = s.consensus.decode.residual_tolerance;
  consensus["agreement_tolerance"] = s.consensus.decode.agreement_tolerance;
  consensus["rank_threshold"] = s.consensus.decode.rank_threshold;
  consensus["condition_threshold"] = s.consensus.decode.condition_threshold;
  consensus["synthesis_attempts"] = s.consensus.synthesis_attempts;
  consensus["baseline_steps"] = s.consensus.baseline_steps;
  j["consensus"] = consensus;

  json graph;
  graph["regenerate_per_period"] = s.regenerate_graph_per_period;
  if (s.fixed_graph) {
    graph["fixed_edges"] = json::array();
    for (const auto& [a, b] : s.fixed_graph->edges()) graph["fixed_edges"].push_back({a, b});
  }
  j["graph"] = graph;

  if (s.weights) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < s.weights->rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < s.weights->cols(); ++k) row.push_back((*s.weights)(i, k));
      rows.push_back(row);
    }
    j["weights"] = rows;
  }
  return j.dump(2) + "\n";
}

}  // namespace mgnet
