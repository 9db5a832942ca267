#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "tracklay/generate.hpp"
#include "tracklay/plane_graph.hpp"

using namespace tracklay;
using tracklay::testing::make_k4;

TEST_CASE("cyclic_equal compares walks up to rotation but not reversal") {
  std::vector<vertex_id> a{1, 2, 3, 4};
  CHECK(cyclic_equal(a, {3, 4, 1, 2}));
  CHECK(cyclic_equal(a, a));
  CHECK_FALSE(cyclic_equal(a, {4, 3, 2, 1}));
  CHECK_FALSE(cyclic_equal(a, {1, 2, 3}));
  CHECK(cyclic_equal({}, {}));
  CHECK(cyclic_equal({7}, {7}));
}

TEST_CASE("K4 fixture: faces, Euler, orientation") {
  embedded_graph g = make_k4();
  CHECK_NOTHROW(g.validate());

  auto faces = g.all_faces();
  CHECK(faces.size() == 4);
  CHECK(g.inner_faces_triangular());

  // The declared outer walk is one of the orbits; the inner faces each
  // contain the center vertex 3.
  int outer_hits = 0;
  int with_center = 0;
  for (const auto& w : faces) {
    if (cyclic_equal(w, g.outer_face)) ++outer_hits;
    if (std::count(w.begin(), w.end(), 3)) ++with_center;
  }
  CHECK(outer_hits == 1);
  CHECK(with_center == 3);
}

TEST_CASE("face tracing follows the rotation successor at the head") {
  embedded_graph g = make_k4();
  // Walking 0→1 keeps the outer face on the left: 0→1→2→0.
  auto outer = g.trace_face(g.dart_from(0, 0));
  CHECK(outer == std::vector<vertex_id>{0, 1, 2});
  // The reverse dart bounds the inner triangle 1,0,3.
  auto inner = g.trace_face(dart{0, false});
  CHECK(cyclic_equal(inner, {1, 0, 3}));
}

TEST_CASE("validate rejects malformed graphs") {
  SUBCASE("self loop") {
    embedded_graph g = make_k4();
    g.edges[5] = {3, 3};
    g.rotation = {{0, 3, 2}, {1, 4, 0}, {2, 1}, {3, 4, 5, 5}};
    CHECK_THROWS_AS(g.validate(), error);
  }
  SUBCASE("parallel edge") {
    embedded_graph g = make_k4();
    g.edges.push_back({0, 1});
    g.rotation[0].push_back(6);
    g.rotation[1].push_back(6);
    CHECK_THROWS_AS(g.validate(), error);
  }
  SUBCASE("rotation omits an incident edge") {
    embedded_graph g = make_k4();
    g.rotation[3] = {3, 4};
    CHECK_THROWS_AS(g.validate(), error);
  }
  SUBCASE("swapped rotation breaks the embedding") {
    embedded_graph g = make_k4();
    std::swap(g.rotation[3][0], g.rotation[3][1]);
    CHECK_THROWS_AS(g.validate(), error);
  }
  SUBCASE("outer face must be a traced orbit") {
    embedded_graph g = make_k4();
    g.outer_face = {0, 2, 1}; // reversed — mirror orientation is a different walk
    CHECK_THROWS_AS(g.validate(), error);
    g.outer_face = {0, 1, 3};
    CHECK_THROWS_AS(g.validate(), error);
  }
  SUBCASE("disconnected") {
    embedded_graph g;
    g.n = 4;
    g.edges = {{0, 1}, {2, 3}};
    g.rotation = {{0}, {0}, {1}, {1}};
    g.outer_face = {0, 1};
    CHECK_THROWS_AS(g.validate(), error);
  }
}

TEST_CASE("generators produce valid embeddings") {
  SUBCASE("triangle") {
    auto g = gen_triangle();
    CHECK_NOTHROW(g.validate());
    CHECK(g.all_faces().size() == 2);
    CHECK(g.inner_faces_triangular());
  }
  SUBCASE("cycle") {
    for (int k : {3, 4, 7, 12}) {
      auto g = gen_cycle(k);
      CHECK_NOTHROW(g.validate());
      CHECK(g.all_faces().size() == 2);
    }
  }
  SUBCASE("wheel") {
    for (int rim : {3, 5, 9}) {
      auto g = gen_wheel(rim);
      CHECK_NOTHROW(g.validate());
      CHECK(static_cast<int>(g.all_faces().size()) == rim + 1);
      CHECK(g.inner_faces_triangular());
    }
  }
  SUBCASE("grid") {
    for (auto [r, c] : std::vector<std::pair<int, int>>{{2, 2}, {3, 4}, {5, 3}}) {
      auto g = gen_grid(r, c);
      CHECK_NOTHROW(g.validate());
      CHECK(static_cast<int>(g.all_faces().size()) == (r - 1) * (c - 1) + 1);
      CHECK(static_cast<int>(g.outer_face.size()) == 2 * (r - 1) + 2 * (c - 1));
    }
  }
}

TEST_CASE("stacked triangulations are maximal planar and deterministic") {
  for (std::uint64_t seed : {1ull, 2ull, 99ull}) {
    for (int n : {3, 4, 10, 37}) {
      auto g = gen_stacked_triangulation(n, seed);
      CHECK_NOTHROW(g.validate());
      CHECK(g.n == n);
      CHECK(static_cast<int>(g.edges.size()) == 3 * n - 6);
      CHECK(g.inner_faces_triangular());
      CHECK(g.outer_face.size() == 3);
    }
  }
  auto a = gen_stacked_triangulation(25, 7);
  auto b = gen_stacked_triangulation(25, 7);
  CHECK(a.edges == b.edges);
  CHECK(a.rotation == b.rotation);
  auto c = gen_stacked_triangulation(25, 8);
  CHECK(a.edges != c.edges);
}

TEST_CASE("triangulate fans a cycle from its smallest vertex") {
  auto r = triangulate(gen_cycle(6));
  CHECK_NOTHROW(r.graph.validate());
  CHECK(r.graph.inner_faces_triangular());
  REQUIRE(r.added_edges.size() == 3);
  std::vector<std::pair<vertex_id, vertex_id>> added;
  for (edge_id e : r.added_edges) added.push_back(r.graph.edges[e]);
  // The inner face of the cycle is traced opposite to the index order, so the
  // fan from vertex 0 reaches across in decreasing order.
  CHECK(added == std::vector<std::pair<vertex_id, vertex_id>>{{0, 4}, {0, 3}, {0, 2}});
  // Outer face untouched.
  CHECK(cyclic_equal(r.graph.outer_face, gen_cycle(6).outer_face));
  CHECK(r.graph.all_faces().size() == 5);
}

TEST_CASE("triangulate splits every grid quad once and leaves triangulations alone") {
  auto r = triangulate(gen_grid(3, 4));
  CHECK_NOTHROW(r.graph.validate());
  CHECK(r.graph.inner_faces_triangular());
  CHECK(r.added_edges.size() == 6);

  for (const auto& g : {gen_wheel(6), gen_stacked_triangulation(20, 3)}) {
    auto t = triangulate(g);
    CHECK(t.added_edges.empty());
    CHECK(t.graph.edges == g.edges);
    CHECK(t.graph.rotation == g.rotation);
  }
}

TEST_CASE("triangulate never adds parallel edges across many random inputs") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    int n = 4 + static_cast<int>(rng_below(seed * 2654435761u, 30));
    auto g = gen_stacked_triangulation(n, seed);
    auto t = triangulate(g); // identity, but runs the full validation path
    CHECK_NOTHROW(t.graph.validate());

    auto gr = triangulate(gen_grid(2 + static_cast<int>(seed % 4), 3));
    CHECK_NOTHROW(gr.graph.validate());
    CHECK(gr.graph.inner_faces_triangular());
  }
}

TEST_CASE("find_chords sees exactly the non-consecutive cycle edges") {
  auto r = triangulate(gen_cycle(6));
  std::vector<vertex_id> cycle{0, 1, 2, 3, 4, 5};
  auto chords = find_chords(r.graph, cycle);
  CHECK(chords.size() == 3);
  for (edge_id e : chords) {
    auto [u, v] = r.graph.edges[e];
    int gap = std::abs(u - v);
    CHECK(gap != 1);
    CHECK(gap != 5);
  }
  // Wheel rims have no chords: every insider path runs through the hub.
  auto w = gen_wheel(7);
  std::vector<vertex_id> rim{1, 2, 3, 4, 5, 6, 7};
  CHECK(find_chords(w, rim).empty());
}

TEST_CASE("subdivide_chords replaces each chord with a two-edge path") {
  auto r = triangulate(gen_cycle(6));
  std::vector<vertex_id> cycle{0, 1, 2, 3, 4, 5};
  auto s = subdivide_chords(r.graph, cycle);

  CHECK(s.chords_removed == 3);
  CHECK(s.graph.n == 9);
  CHECK_NOTHROW(s.graph.validate());
  CHECK(find_chords(s.graph, cycle).empty());

  // Each subdivision nets two edges: the chord id is reused for one path
  // half, and the other half plus the anchor are fresh.
  CHECK(s.graph.edges.size() == r.graph.edges.size() + 6);

  for (auto& [wp, origin] : s.map.split_vertex_origin) {
    CAPTURE(wp);
    auto [u, v] = r.graph.edges[origin];
    // The split vertex ties to both old endpoints plus one anchor; it may
    // gain more edges by anchoring later splits.
    CHECK(tracklay::testing::degree(s.graph, wp) >= 3);
    CHECK(s.graph.has_edge(u, wp));
    CHECK(s.graph.has_edge(wp, v));
    auto [ea, eb] = s.map.replacement_edges.at(wp);
    CHECK(s.graph.other_end(ea, wp) == u);
    CHECK(s.graph.other_end(eb, wp) == v);
    edge_id anchor = s.map.anchor_edges.at(wp);
    vertex_id w = s.graph.other_end(anchor, wp);
    CHECK(w != u);
    CHECK(w != v);
  }

  // The cycle's own edges survive untouched.
  for (int i = 0; i < 6; ++i) CHECK(s.graph.has_edge(i, (i + 1) % 6));
}

TEST_CASE("subdivide_chords is a no-op on chordless cycles") {
  auto w = gen_wheel(5);
  std::vector<vertex_id> rim{1, 2, 3, 4, 5};
  auto s = subdivide_chords(w, rim);
  CHECK(s.chords_removed == 0);
  CHECK(s.graph.n == w.n);
  CHECK(s.graph.edges == w.edges);
}

TEST_CASE("subdivision keeps embeddings valid over random triangulated polygons") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    int k = 4 + static_cast<int>(seed % 9);
    auto r = triangulate(gen_cycle(k));
    std::vector<vertex_id> cycle(k);
    for (int i = 0; i < k; ++i) cycle[i] = i;
    auto s = subdivide_chords(r.graph, cycle);
    CHECK(s.chords_removed == k - 3);
    CHECK_NOTHROW(s.graph.validate());
    CHECK(find_chords(s.graph, cycle).empty());
  }
}
