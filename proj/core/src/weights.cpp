#include "mgnet/weights.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "mgnet/consensus.hpp"
#include "mgnet/errors.hpp"

namespace mgnet {

WeightMatrix::WeightMatrix(Eigen::MatrixXd entries, Graph graph)
    : entries_(std::move(entries)), graph_(std::move(graph)) {
  const auto n = graph_.node_count();
  if (entries_.rows() != entries_.cols() || static_cast<std::size_t>(entries_.rows()) != n)
    throw InvalidArgument("weight matrix is " + std::to_string(entries_.rows()) + "x" +
                          std::to_string(entries_.cols()) + " but the graph has " +
                          std::to_string(n) + " nodes");
  if (!entries_.allFinite()) throw InvalidArgument("weight matrix has non-finite entries");
  for (Node i = 0; i < n; ++i)
    for (Node j = 0; j < n; ++j)
      if (i != j && (*this)(i, j) != 0.0 && !graph_.has_edge(i, j))
        throw InvalidArgument("w(" + std::to_string(i) + "," + std::to_string(j) +
                              ") is nonzero but the nodes are not neighbors");
}

WeightMatrix WeightMatrix::from_matrix(Eigen::MatrixXd entries) {
  if (entries.rows() != entries.cols()) throw InvalidArgument("weight matrix must be square");
  const auto n = static_cast<std::size_t>(entries.rows());
  Graph g(n);
  for (Eigen::Index i = 0; i < entries.rows(); ++i)
    for (Eigen::Index j = i + 1; j < entries.cols(); ++j)
      if (entries(i, j) != 0.0 || entries(j, i) != 0.0)
        g.add_edge(static_cast<Node>(i), static_cast<Node>(j));
  return WeightMatrix(std::move(entries), std::move(g));
}

WeightMatrix metropolis_weights(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [a, b] : g.edges()) {
    const double v = 1.0 / (1.0 + static_cast<double>(std::max(g.degree(a), g.degree(b))));
    w(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
    w(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = v;
  }
  for (Eigen::Index i = 0; i < n; ++i) w(i, i) = 1.0 - w.row(i).sum();
  return WeightMatrix(std::move(w), g);
}

std::string to_weight_csv(const WeightMatrix& w) {
  std::string out;
  char buf[32];
  for (Node i = 0; i < w.size(); ++i) {
    for (Node j = 0; j < w.size(); ++j) {
      if (j) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", w(i, j));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

WeightMatrix parse_weight_csv(std::string_view text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t");
      const auto e = cell.find_last_not_of(" \t");
      if (b == std::string::npos)
        throw ConfigError("line " + std::to_string(line_no) + ": empty cell");
      const char* first = cell.data() + b;
      const char* last = cell.data() + e + 1;
      if (*first == '+') ++first;
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc{} || ptr != last)
        throw ConfigError("line " + std::to_string(line_no) + ": not a number: '" + cell + "'");
      row.push_back(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("weight CSV is empty");
  const auto n = rows.size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n)
      throw ConfigError("row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                        " entries, expected " + std::to_string(n));
    for (std::size_t j = 0; j < n; ++j)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  }
  try {
    return WeightMatrix::from_matrix(std::move(m));
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
}

SynthesizedWeights synthesize_weights(const Graph& g, std::size_t f, std::size_t k_max, Rng& rng,
                                      const SynthesisOptions& options) {
  const auto n = static_cast<Eigen::Index>(g.node_count());
  auto draw = [&] {
    double v;
    do {
      v = uniform_real(rng, -1.0, 1.0);
    } while (std::abs(v) < options.dead_zone);
    return v;
  };

  for (std::size_t attempt = 1; attempt <= options.max_attempts; ++attempt) {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      w(i, i) = draw();
      for (Node j : g.neighbors(static_cast<Node>(i))) w(i, static_cast<Eigen::Index>(j)) = draw();
    }
    WeightMatrix candidate(std::move(w), g);
    if (auto k = verify_rank_condition(candidate, f, k_max, options.rank_threshold))
      return {std::move(candidate), *k, attempt};
  }
  throw SynthesisFailure("no weight draw met the rank condition for f = " + std::to_string(f) +
                         " within K <= " + std::to_string(k_max) + " after " +
                         std::to_string(options.max_attempts) + " attempts");
}

}  // namespace mgnet
