#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "lll/acyclic.hpp"
#include "lll/errors.hpp"
#include "lll/instance_gen.hpp"

using namespace lll;

TEST_CASE("violation detection basics") {
  SUBCASE("triangle with three colors is clean") {
    Graph g = cycle_graph(3);
    EdgeColoring col{{0, 1, 2}, 3};
    CHECK_FALSE(find_acyclic_violation(g, col).has_value());
  }

  SUBCASE("ABAB four-cycle is a bichromatic cycle") {
    Graph g = cycle_graph(4);
    EdgeColoring col{{0, 1, 0, 1}, 2};
    auto viol = find_acyclic_violation(g, col);
    REQUIRE(viol.has_value());
    CHECK(viol->kind == AcyclicViolation::Kind::BichromaticCycle);
    CHECK(viol->edges.size() == 4);
  }

  SUBCASE("star with repeated leaf color is an incident pair") {
    Graph g = star_graph(3);
    EdgeColoring col{{0, 1, 1}, 3};
    auto viol = find_acyclic_violation(g, col);
    REQUIRE(viol.has_value());
    CHECK(viol->kind == AcyclicViolation::Kind::IncidentPair);
    CHECK(viol->edges == std::vector<int>{1, 2});
  }
}

TEST_CASE("verifier agrees with the exhaustive oracle on small graphs") {
  Rng rng = make_rng(21);
  int disagreements = 0;
  for (int round = 0; round < 300; ++round) {
    int n = 4 + static_cast<int>(rng() % 3);
    int m = 3 + static_cast<int>(rng() % 6);  // up to 8 edges
    Graph g;
    try {
      g = random_graph_max_degree(n, m, n - 1, rng);
    } catch (const std::runtime_error&) {
      continue;
    }
    int palette = 2 + static_cast<int>(rng() % 3);
    EdgeColoring col;
    col.palette = palette;
    col.color.resize(g.m());
    for (auto& c : col.color) c = rng() % palette;

    bool clean = !find_acyclic_violation(g, col).has_value();
    bool oracle = testutil::acyclic_coloring_oracle(g, col.color);
    if (clean != oracle) disagreements++;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("reported cycles alternate exactly two colors") {
  Rng rng = make_rng(22);
  for (int round = 0; round < 100; ++round) {
    Graph g = random_graph_max_degree(8, 10, 5, rng);
    EdgeColoring col;
    col.palette = 3;
    col.color.resize(g.m());
    for (auto& c : col.color) c = rng() % 3;
    auto viol = find_acyclic_violation(g, col);
    if (!viol || viol->kind != AcyclicViolation::Kind::BichromaticCycle) continue;
    CHECK(viol->edges.size() % 2 == 0);
    CHECK(viol->edges.size() >= 4);
    for (std::size_t i = 0; i < viol->edges.size(); ++i) {
      CHECK(col.color[viol->edges[i]] == viol->colors[i % 2 == 0 ? 0 : 1]);
    }
  }
}

TEST_CASE("vizing coloring") {
  auto proper = [](const Graph& g, const EdgeColoring& col) {
    for (int v = 0; v < g.n; ++v) {
      std::set<std::uint64_t> seen;
      for (auto [w, e] : g.adj[v])
        if (!seen.insert(col.color[e]).second) return false;
    }
    return true;
  };

  SUBCASE("even cycle gets at most three colors") {
    Graph g = cycle_graph(8);
    EdgeColoring col = vizing_color(g);
    CHECK(proper(g, col));
    std::set<std::uint64_t> used(col.color.begin(), col.color.end());
    CHECK(used.size() <= 3);
  }

  SUBCASE("K4 is proper within Delta + 1") {
    Graph g = complete_graph(4);
    EdgeColoring col = vizing_color(g);
    CHECK(proper(g, col));
    CHECK(col.palette <= 4);
  }

  SUBCASE("star needs one color per edge") {
    Graph g = star_graph(5);
    EdgeColoring col = vizing_color(g);
    CHECK(proper(g, col));
    std::set<std::uint64_t> used(col.color.begin(), col.color.end());
    CHECK(used.size() == 5);
  }

  SUBCASE("random graphs stay proper within Delta + 1") {
    Rng rng = make_rng(23);
    for (int round = 0; round < 150; ++round) {
      int n = 5 + static_cast<int>(rng() % 12);
      int m = std::min(n * (n - 1) / 2, 4 + static_cast<int>(rng() % (2 * n)));
      Graph g = random_graph_max_degree(n, m, n - 1, rng);
      if (g.max_degree == 0) continue;
      EdgeColoring col = vizing_color(g);
      CHECK(proper(g, col));
      std::uint64_t max_color = 0;
      for (auto c : col.color) max_color = std::max(max_color, c);
      CHECK(max_color < static_cast<std::uint64_t>(g.max_degree) + 1);
    }
  }
}

TEST_CASE("girth computation") {
  CHECK(girth(path_graph(6)) == kInfiniteGirth);
  CHECK(girth(cycle_graph(3)) == 3);
  CHECK(girth(cycle_graph(17)) == 17);
  CHECK(girth(petersen_graph()) == 5);
  CHECK(girth(complete_graph(5)) == 3);
}

TEST_CASE("16-Delta resampling algorithm") {
  SUBCASE("single edge takes no resample") {
    Graph g = make_graph(2, {{0, 1}});
    Rng rng = make_rng(31);
    AcyclicRun run = mt_acyclic_16(g, rng);
    CHECK(run.status == ColoringStatus::Success);
    CHECK(run.resamples == 0);
    CHECK(run.coloring.palette == 16);
  }

  SUBCASE("two-edge path resolves and verifies") {
    Graph g = path_graph(3);
    Rng rng = make_rng(32);
    AcyclicRun run = mt_acyclic_16(g, rng);
    CHECK(run.status == ColoringStatus::Success);
    CHECK(run.coloring.palette == 32);
    CHECK_FALSE(find_acyclic_violation(g, run.coloring).has_value());
  }

  SUBCASE("random graphs terminate and verify") {
    Rng rng = make_rng(33);
    for (int round = 0; round < 5; ++round) {
      Graph g = random_graph_max_degree(60, 150, 8, rng);
      Rng run_rng = make_rng(34, round);
      AcyclicRun run = mt_acyclic_16(g, run_rng);
      REQUIRE(run.status == ColoringStatus::Success);
      CHECK(run.coloring.palette == 16ULL * g.max_degree);
      CHECK_FALSE(find_acyclic_violation(g, run.coloring).has_value());
    }
  }
}

TEST_CASE("no two-color acyclic coloring of C4 exists") {
  Graph g = cycle_graph(4);
  int valid = 0;
  for (int code = 0; code < 16; ++code) {
    EdgeColoring col;
    col.palette = 2;
    for (int e = 0; e < 4; ++e) col.color.push_back((code >> e) & 1);
    if (testutil::acyclic_coloring_oracle(g, col.color)) valid++;
  }
  CHECK(valid == 0);
}

TEST_CASE("high-girth variant") {
  SUBCASE("K4 is rejected for girth") {
    Graph g = complete_graph(4);
    Rng rng = make_rng(41);
    CHECK_THROWS_AS(mt_acyclic_girth(g, rng), GirthTooSmall);
  }

  SUBCASE("long even cycle succeeds within Delta + 2 colors") {
    Graph g = cycle_graph(64);
    for (int s = 0; s < 5; ++s) {
      Rng rng = make_rng(42, s);
      AcyclicRun run = mt_acyclic_girth(g, rng);
      REQUIRE(run.status == ColoringStatus::Success);
      CHECK(run.coloring.palette == 4);
      std::set<std::uint64_t> used(run.coloring.color.begin(), run.coloring.color.end());
      CHECK(used.size() <= 4);
      CHECK_FALSE(find_acyclic_violation(g, run.coloring).has_value());
    }
  }

  SUBCASE("the alternating stage-1 coloring of C64 is one full bichromatic cycle") {
    Graph g = cycle_graph(64);
    EdgeColoring base;
    base.palette = 3;
    for (int e = 0; e < 64; ++e) base.color.push_back(e % 2);
    auto viol = find_acyclic_violation(g, base);
    REQUIRE(viol.has_value());
    CHECK(viol->kind == AcyclicViolation::Kind::BichromaticCycle);
    CHECK(viol->edges.size() == 64);
    // and the exhaustive scan agrees there is exactly one cycle at Delta = 2
    CHECK(testutil::all_cycles(g).size() == 1);
  }
}
