#include <doctest.h>

#include <set>
#include <sstream>

#include "nrgg/errors.hpp"
#include "nrgg/wscp.hpp"
#include "oracles.hpp"

using namespace nrgg;

namespace {

// Packing invariants checked directly.
void check_packing(const PointSet& pts, const PackingFamily& fam, Norm norm) {
  std::vector<bool> covered(pts.size(), false);
  for (const auto& round : fam.rounds) {
    CHECK_FALSE(round.empty());
    for (std::size_t a = 0; a < round.size(); ++a)
      for (std::size_t b = a + 1; b < round.size(); ++b) CHECK(distance(pts[round[a]], pts[round[b]], norm) > 2 * fam.delta);
    for (Vertex c : round)
      for (Vertex v = 0; v < pts.size(); ++v)
        if (distance(pts[c], pts[v], norm) <= fam.delta) covered[v] = true;
  }
  for (bool c : covered) CHECK(c);
}

}  // namespace

TEST_CASE("packing examples") {
  const auto one = greedy_packing_family(PointSet(2, {0.3, 0.3}), 0.1, Norm::L2);
  CHECK(one.rounds == std::vector<std::vector<Vertex>>{{0}});

  const double delta = 0.1;
  const auto two = greedy_packing_family(PointSet(1, {0.0, 3 * delta}), delta, Norm::L2);
  CHECK(two.rounds == std::vector<std::vector<Vertex>>{{0, 1}});

  const auto three = greedy_packing_family(PointSet(1, {0.0, 1.5 * delta, 3 * delta}), delta, Norm::L2);
  CHECK(three.rounds == std::vector<std::vector<Vertex>>{{0, 2}, {1}});

  CHECK_THROWS_AS(greedy_packing_family(PointSet(1, {0.0}), 0.0, Norm::L2), ArgumentError);
}

TEST_CASE("packing invariants on random clouds") {
  for (int d = 1; d <= 3; ++d)
    for (Norm norm : {Norm::L1, Norm::L2, Norm::LInf}) {
      const auto pts = oracle::random_points(400, d, 10 * d + static_cast<int>(norm));
      check_packing(pts, greedy_packing_family(pts, 0.05, norm), norm);
    }
  const auto pts = oracle::random_points(200, 2, 3);
  std::vector<Vertex> subset;
  for (Vertex v = 0; v < 200; v += 3) subset.push_back(v);
  const auto fam = greedy_packing_family(pts, subset, 0.07, Norm::L2);
  std::set<Vertex> allowed(subset.begin(), subset.end());
  for (const auto& round : fam.rounds)
    for (Vertex c : round) CHECK(allowed.count(c));
}

TEST_CASE("wscp trivial families") {
  const auto single = build_geometric_graph(PointCloud{PointSet(2, {0.5, 0.5})}, 0.1, Norm::L2);
  const auto f1 = build_wscp(single);
  REQUIRE(f1.size() == 1);
  REQUIRE(f1.parts[0].size() == 1);
  CHECK(f1.parts[0][0].members == std::vector<Vertex>{0});

  const auto tight = build_geometric_graph(PointCloud{PointSet(2, {0.5, 0.5, 0.51, 0.5, 0.5, 0.52})}, 0.2, Norm::L2);
  const auto f2 = build_wscp(tight);
  REQUIRE(f2.size() == 1);
  REQUIRE(f2.parts[0].size() == 1);
  CHECK(f2.parts[0][0].members == std::vector<Vertex>{0, 1, 2});
  CHECK(verify_wscp(f2, tight).all_ok());
}

TEST_CASE("wscp invariants on random instances") {
  for (int i = 0; i < 20; ++i) {
    const auto g = build_geometric_graph(sample_uniform_cube(500, 2, 70 + i), 0.05, Norm::L2);
    const auto fam = build_wscp(g);
    const auto rep = verify_wscp(fam, g);
    CHECK(rep.all_ok());
    CHECK(rep.size == fam.size());
    CHECK(fam.size() <= 64);
    CHECK(cross_clique_edges(fam, g) == 0);

    // Independent re-check of coverage and separation.
    std::vector<bool> seen(500, false);
    for (const auto& part : fam.parts) {
      for (std::size_t a = 0; a < part.size(); ++a) {
        for (Vertex v : part[a].members) {
          seen[v] = true;
          CHECK(distance(g.cloud.points[v], g.cloud.points[part[a].anchor], Norm::L2) <= 0.025);
        }
        for (std::size_t b = a + 1; b < part.size(); ++b) {
          std::vector<double> ca, cb;
          for (Vertex v : part[a].members) ca.insert(ca.end(), g.cloud.points[v].begin(), g.cloud.points[v].end());
          for (Vertex v : part[b].members) cb.insert(cb.end(), g.cloud.points[v].begin(), g.cloud.points[v].end());
          CHECK(min_set_distance(PointSet(2, ca), PointSet(2, cb), Norm::L2) > 0.05);
        }
      }
    }
    for (bool s : seen) CHECK(s);
  }
  for (Norm norm : {Norm::L1, Norm::LInf}) {
    const auto g = build_geometric_graph(sample_uniform_cube(400, 3, 5), 0.1, norm);
    CHECK(verify_wscp(build_wscp(g), g).all_ok());
  }
}

TEST_CASE("verify_wscp detects violations") {
  const auto g = build_geometric_graph(PointCloud{PointSet(1, {0.0, 0.06, 0.5, 0.55})}, 0.1, Norm::L2);
  CliquePartitionFamily fam;
  fam.r = 0.1;
  fam.parts = {{CliqueBlock{0, {0, 1}}, CliqueBlock{2, {2, 3}}}};
  // 0.06 from the anchor exceeds r/2.
  auto rep = verify_wscp(fam, g);
  CHECK_FALSE(rep.clique_radius);
  CHECK(rep.coverage);
  CHECK(rep.separation);

  // Two cliques 0.05 apart (< r) in one part.
  const auto h = build_geometric_graph(PointCloud{PointSet(1, {0.0, 0.05, 0.5})}, 0.1, Norm::L2);
  CliquePartitionFamily merged;
  merged.r = 0.1;
  merged.parts = {{CliqueBlock{0, {0}}, CliqueBlock{1, {1}}, CliqueBlock{2, {2}}}};
  rep = verify_wscp(merged, h);
  CHECK_FALSE(rep.separation);
  CHECK(min_set_distance(PointSet(1, {0.0}), PointSet(1, {0.05}), Norm::L2) <= 0.1);
  CHECK(cross_clique_edges(merged, h) == 1);

  CliquePartitionFamily missing;
  missing.r = 0.1;
  missing.parts = {{CliqueBlock{0, {0, 1}}}};
  CHECK_FALSE(verify_wscp(missing, h).coverage);

  CliquePartitionFamily outside;
  outside.r = 0.1;
  outside.parts = {{CliqueBlock{7, {7}}}};
  CHECK_THROWS_AS(verify_wscp(outside, h), ArgumentError);
}

TEST_CASE("dump format") {
  const auto g = build_geometric_graph(PointCloud{PointSet(1, {0.0, 0.01, 0.5})}, 0.1, Norm::L2);
  std::ostringstream out;
  write_wscp(out, build_wscp(g));
  CHECK(out.str() == "P 0 C 0 anchor=0 members=0,1\nP 0 C 1 anchor=2 members=2\n");
}
