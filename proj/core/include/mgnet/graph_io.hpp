#pragma once

#include <string>
#include <string_view>

#include "mgnet/graph.hpp"

namespace mgnet {

// Edge list: a "# nodes N" header followed by one sorted, 0-indexed "i j" pair per line.
std::string to_edge_list(const Graph& g);
Graph parse_edge_list(std::string_view text);

// DOT subset written by to_dot: node statements "i;" and edges "i -- j;".
std::string to_dot(const Graph& g, std::string_view name = "mgnet");
Graph parse_dot(std::string_view text);

std::string certificate_json(const ConnectivityCertificate& cert);

}  // namespace mgnet
