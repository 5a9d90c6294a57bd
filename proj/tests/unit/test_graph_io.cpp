#include <gtest/gtest.h>

#include "mgnet/errors.hpp"
#include "mgnet/generators.hpp"
#include "mgnet/graph_io.hpp"
#include "support/fixtures.hpp"

namespace mgnet {
namespace {

TEST(GraphIo, EdgeListFormat) {
  EXPECT_EQ(to_edge_list(Graph(3, {{2, 0}, {0, 1}})), "# nodes 3\n0 1\n0 2\n");
  // Isolated trailing nodes survive through the header.
  EXPECT_EQ(parse_edge_list("# nodes 4\n0 1\n").node_count(), 4u);
  EXPECT_EQ(parse_edge_list("1 2\n0 1\n"), Graph(3, {{0, 1}, {1, 2}}));
}

TEST(GraphIo, EdgeListErrors) {
  EXPECT_THROW(parse_edge_list("0 x\n"), ConfigError);
  EXPECT_THROW(parse_edge_list("0 1 2\n"), ConfigError);
  EXPECT_THROW(parse_edge_list("1 1\n"), ConfigError);
  EXPECT_THROW(parse_edge_list("# nodes 2\n0 5\n"), ConfigError);
}

TEST(GraphIo, RoundTripsRandomGraphs) {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    auto rng = derive_rng(seed);
    const auto g = fixtures::random_graph(1 + uniform_index(rng, 9), 0.4, rng);
    EXPECT_EQ(parse_edge_list(to_edge_list(g)), g);
    EXPECT_EQ(parse_dot(to_dot(g)), g);
  }
}

TEST(GraphIo, CertificateJson) {
  EXPECT_EQ(certificate_json({3, std::nullopt}), "{\n  \"kappa\": 3,\n  \"witness_cut\": null\n}\n");
  EXPECT_NE(certificate_json({2, std::vector<Node>{1, 4}}).find("[\n    1,\n    4\n  ]"), std::string::npos);
}

}  // namespace
}  // namespace mgnet
