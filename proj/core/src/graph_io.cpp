#include "mgnet/graph_io.hpp"

#include <charconv>
#include <regex>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mgnet/errors.hpp"

namespace mgnet {
namespace {

std::size_t parse_index(std::string_view token, std::size_t line) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ConfigError("line " + std::to_string(line) + ": expected a node index, got '" +
                      std::string(token) + "'");
  return value;
}

}  // namespace

std::string to_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "# nodes " << g.node_count() << '\n';
  for (const auto& [a, b] : g.edges()) out << a << ' ' << b << '\n';
  return out.str();
}

Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> declared;
  std::vector<Edge> edges;
  std::size_t max_node = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (first[0] == '#') {
      std::string key, value;
      if (first == "#" && (fields >> key >> value) && key == "nodes")
        declared = parse_index(value, line_no);
      continue;
    }
    std::string second, extra;
    if (!(fields >> second) || (fields >> extra))
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'i j'");
    const auto a = parse_index(first, line_no);
    const auto b = parse_index(second, line_no);
    if (a == b) throw ConfigError("line " + std::to_string(line_no) + ": self-loop");
    edges.push_back(make_edge(a, b));
    max_node = std::max({max_node, a, b});
  }
  const std::size_t n = declared ? *declared : (edges.empty() ? 0 : max_node + 1);
  if (!edges.empty() && max_node >= n)
    throw ConfigError("edge endpoint " + std::to_string(max_node) + " exceeds declared node count " +
                      std::to_string(n));
  return Graph(n, edges);
}

std::string to_dot(const Graph& g, std::string_view name) {
  std::ostringstream out;
  out << "graph " << name << " {\n";
  for (Node v = 0; v < g.node_count(); ++v) out << "  " << v << ";\n";
  for (const auto& [a, b] : g.edges()) out << "  " << a << " -- " << b << ";\n";
  out << "}\n";
  return out.str();
}

Graph parse_dot(std::string_view text) {
  static const std::regex node_re(R"(^\s*(\d+)\s*;\s*$)");
  static const std::regex edge_re(R"(^\s*(\d+)\s*--\s*(\d+)\s*;\s*$)");
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  std::size_t n = 0;
  std::vector<Edge> edges;
  std::smatch m;
  while (std::getline(in, line)) {
    ++line_no;
    if (std::regex_match(line, m, edge_re)) {
      const auto a = parse_index(m[1].str(), line_no);
      const auto b = parse_index(m[2].str(), line_no);
      if (a == b) throw ConfigError("line " + std::to_string(line_no) + ": self-loop");
      edges.push_back(make_edge(a, b));
      n = std::max({n, a + 1, b + 1});
    } else if (std::regex_match(line, m, node_re)) {
      n = std::max(n, parse_index(m[1].str(), line_no) + 1);
    }
  }
  return Graph(n, edges);
}

std::string certificate_json(const ConnectivityCertificate& cert) {
  nlohmann::json j;
  j["kappa"] = cert.kappa;
  j["witness_cut"] = cert.witness_cut ? nlohmann::json(*cert.witness_cut) : nlohmann::json(nullptr);
  return j.dump(2) + "\n";
}

}  // namespace mgnet
