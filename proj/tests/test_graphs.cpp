#include "rydberg/errors.hpp"
#include "rydberg/graphs.hpp"
#include "rydberg/parallel.hpp"

#include <doctest.h>

#include <bit>
#include <cmath>
#include <random>

using namespace rydberg;

namespace {

std::size_t brute_force_mis(std::size_t n, const std::vector<Edge>& edges) {
  std::size_t best = 0;
  for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s) {
    bool ok = true;
    for (const auto& [i, j] : edges) {
      if (((s >> i) & 1u) && ((s >> j) & 1u)) {
        ok = false;
        break;
      }
    }
    if (ok) best = std::max<std::size_t>(best, std::popcount(s));
  }
  return best;
}

AbstractGraph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) edges.emplace_back(i, j);
  return AbstractGraph(n, edges);
}

}  // namespace

TEST_CASE("graph construction") {
  CHECK_THROWS_AS(AbstractGraph(3, {{1, 1}}), ValidationError);
  CHECK_THROWS_AS(AbstractGraph(3, {{0, 3}}), ValidationError);
  const AbstractGraph g(3, {{2, 0}, {0, 2}, {1, 2}});
  CHECK(g.edges() == std::vector<Edge>{{0, 2}, {1, 2}});
  CHECK(g.has_edge(2, 0));
  CHECK_FALSE(g.has_edge(0, 1));
  CHECK(AbstractGraph::complete_bipartite(2, 3).edges().size() == 6);
  CHECK(AbstractGraph::star(6).max_degree() == 6);
  CHECK(named_graph("k23") == AbstractGraph::complete_bipartite(2, 3));
  CHECK(named_graph("k16") == AbstractGraph::star(6));
  CHECK(named_graph("p3") == AbstractGraph::path(3));
  CHECK(named_graph("g3").n() == 6);
  CHECK(named_graph("g4") == AbstractGraph::complete_bipartite(2, 4));
  CHECK_THROWS_AS(named_graph("petersen"), ValidationError);
}

TEST_CASE("induced edges") {
  const std::vector<Vec2> c{{0, 0}, {5, 0}};
  const std::vector<double> r{8, 8};
  CHECK(induced_edges(c, r) == std::vector<Edge>{{0, 1}});
  const std::vector<Vec2> far{{0, 0}, {9, 0}};
  CHECK(induced_edges(far, r).empty());
  const std::vector<Vec2> boundary{{0, 0}, {8, 0}};
  CHECK(induced_edges(boundary, r).size() == 1);
}

TEST_CASE("independence") {
  const auto k23 = AbstractGraph::complete_bipartite(2, 3);
  CHECK(is_independent(k23, VertexSet(0)));
  for (std::size_t v = 0; v < 5; ++v) CHECK(is_independent(k23, VertexSet(1u << v)));
  // the two hubs are not adjacent
  CHECK(is_independent(k23, VertexSet(0b00011)));
  CHECK_FALSE(is_independent(k23, VertexSet(0b00110)));
  CHECK_FALSE(is_independent(k23, VertexSet(0b00101)));
  CHECK(is_independent(k23, VertexSet(0b11100)));
  CHECK_THROWS_AS(is_independent(k23, VertexSet(1u << 5)), ValidationError);
}

TEST_CASE("maximum independent sets") {
  const auto k23 = mis_enumerate(AbstractGraph::complete_bipartite(2, 3));
  CHECK(k23.size == 3);
  REQUIRE(k23.sets.size() == 1);
  CHECK(k23.sets[0] == VertexSet(0b11100));
  const auto k16 = mis_enumerate(AbstractGraph::star(6));
  CHECK(k16.size == 6);
  REQUIRE(k16.sets.size() == 1);
  CHECK(k16.sets[0] == VertexSet(0b1111110));
  const auto empty = mis_enumerate(AbstractGraph::edgeless(5));
  CHECK(empty.size == 5);
  CHECK(empty.sets.size() == 1);
  CHECK(mis_enumerate(AbstractGraph::path(4)).sets.size() == 3);
}

TEST_CASE("property: MIS self-oracle on every graph up to 5 vertices") {
  for (std::size_t n = 1; n <= 5; ++n) {
    std::vector<Edge> all;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) all.emplace_back(i, j);
    for (std::uint32_t pick = 0; pick < (std::uint32_t{1} << all.size()); ++pick) {
      std::vector<Edge> edges;
      for (std::size_t e = 0; e < all.size(); ++e)
        if ((pick >> e) & 1u) edges.push_back(all[e]);
      const AbstractGraph g(n, edges);
      const auto res = mis_enumerate(g);
      CHECK(res.size == brute_force_mis(n, edges));
      for (VertexSet s : res.sets) {
        CHECK(s.size() == res.size);
        CHECK(is_independent(g, s));
      }
    }
  }
}

TEST_CASE("property: MIS self-oracle on random graphs up to 16 vertices") {
  std::mt19937_64 rng(16);
  for (std::size_t n = 6; n <= 16; ++n) {
    for (double p : {0.15, 0.35, 0.6}) {
      const auto g = random_graph(n, p, rng);
      const auto res = mis_enumerate(g);
      CHECK(res.size == brute_force_mis(n, g.edges()));
      std::size_t count = 0;
      for (std::uint32_t s = 0; s < (std::uint32_t{1} << n); ++s) {
        if (std::popcount(s) == static_cast<int>(res.size) && is_independent(g, VertexSet(s))) ++count;
      }
      CHECK(count == res.sets.size());
    }
  }
}

TEST_CASE("lambda breaks") {
  const DiskGraph dg({{0, 0}, {5, 0}}, {8, 8});
  const auto b = lambda_breaks(dg);
  CHECK(b.lambda_c == doctest::Approx(1.6));
  CHECK(b.lambda_full == doctest::Approx(1.6));
  CHECK_THROWS_AS(lambda_breaks(DiskGraph({{0, 0}, {50, 0}}, {8, 8})), ValidationError);
}

TEST_CASE("property: scaling in [1, lambda_c) keeps edges, above lambda_full removes them") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 20.0), ur(6.0, 14.0);
  int tested = 0;
  while (tested < 50) {
    std::vector<Vec2> c;
    std::vector<double> r;
    for (int i = 0; i < 6; ++i) {
      c.push_back({u(rng), u(rng)});
      r.push_back(ur(rng));
    }
    const DiskGraph dg(c, r);
    if (dg.edges().empty()) continue;
    const auto b = lambda_breaks(dg);
    for (double f : {0.0, 0.5, 0.99}) CHECK(dg.scaled(1.0 + f * (b.lambda_c - 1.0)).edges() == dg.edges());
    CHECK(dg.scaled(1.01 * b.lambda_full).edges().empty());
    ++tested;
  }
}

TEST_CASE("property: induced edges are invariant under rigid motions") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 25.0), ur(6.0, 14.0), ang(0.0, 2.0 * 3.141592653589793);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Vec2> c;
    std::vector<double> r;
    for (int i = 0; i < 7; ++i) {
      c.push_back({u(rng), u(rng)});
      r.push_back(ur(rng));
    }
    const double th = ang(rng), tx = u(rng) - 12.0, ty = u(rng) - 12.0;
    const bool mirror = trial % 2 == 1;
    std::vector<Vec2> moved;
    for (const auto& p : c) {
      const double y = mirror ? -p.y : p.y;
      moved.push_back({std::cos(th) * p.x - std::sin(th) * y + tx, std::sin(th) * p.x + std::cos(th) * y + ty});
    }
    // skip draws within round-off of an edge boundary
    bool near_boundary = false;
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = i + 1; j < c.size(); ++j)
        near_boundary |= std::abs(distance(c[i], c[j]) - 0.5 * (r[i] + r[j])) < 1e-9;
    if (near_boundary) continue;
    CHECK(induced_edges(c, r) == induced_edges(moved, r));
  }
}

TEST_CASE("edge diff") {
  const auto d = diff_edges({{0, 1}, {1, 2}}, {{0, 1}, {0, 2}});
  CHECK(d.missing == std::vector<Edge>{{1, 2}});
  CHECK(d.extra == std::vector<Edge>{{0, 2}});
  CHECK(d.describe().find("missing [(1,2)]") != std::string::npos);
  CHECK(diff_edges({{0, 1}}, {{0, 1}}).empty());
}

TEST_CASE("disk realization") {
  RealizeOptions opts;
  opts.threads = default_thread_count();

  const std::vector<double> unit{8.0};
  const auto p3 = realize_disk(AbstractGraph::path(3), unit, 1, opts);
  CHECK(p3.success);
  CHECK(p3.graph.edges() == AbstractGraph::path(3).edges());
  CHECK(realization_margin(p3.graph, AbstractGraph::path(3)) >= 0.05 - 1e-9);

  const auto k23 = AbstractGraph::complete_bipartite(2, 3);
  const auto single = realize_disk(k23, unit, 1, opts);
  CHECK_FALSE(single.success);
  CHECK(single.violations > 0);

  const std::vector<double> two{8.0, 40.0};
  const auto ok = realize_disk(k23, two, 1, opts);
  CHECK(ok.success);
  CHECK(induced_edges(ok.graph.centers(), ok.graph.radii()) == k23.edges());
}

TEST_CASE("property: realization is deterministic and thread-count independent") {
  RealizeOptions a;
  a.iterations = 8000;
  a.restarts = 6;
  a.threads = 1;
  RealizeOptions b = a;
  b.threads = 4;
  const std::vector<double> palette{8.0, 40.0};
  const auto g = named_graph("g3");
  const auto x = realize_disk(g, palette, 42, a);
  const auto y = realize_disk(g, palette, 42, b);
  CHECK(x.success == y.success);
  CHECK(x.cost == y.cost);
  for (std::size_t i = 0; i < g.n(); ++i) {
    CHECK(x.graph.centers()[i].x == y.graph.centers()[i].x);
    CHECK(x.graph.centers()[i].y == y.graph.centers()[i].y);
    CHECK(x.graph.radii()[i] == y.graph.radii()[i]);
  }
  if (x.success) CHECK(x.graph.edges() == g.edges());
}
