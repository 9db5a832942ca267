#include "tracklay/generate.hpp"

#include <array>
#include <random>

namespace tracklay {

std::uint64_t rng_below(std::uint64_t raw, std::uint64_t bound) { return raw % bound; }

embedded_graph gen_triangle() {
  embedded_graph g;
  g.n = 3;
  g.edges = {{0, 1}, {1, 2}, {2, 0}};
  g.rotation = {{2, 0}, {0, 1}, {1, 2}};
  g.outer_face = {0, 2, 1};
  return g;
}

embedded_graph gen_cycle(int k) {
  require(k >= 3, errc::graph_too_small, "cycle needs at least 3 vertices");
  embedded_graph g;
  g.n = k;
  g.rotation.resize(k);
  for (int i = 0; i < k; ++i) g.edges.emplace_back(i, (i + 1) % k);
  for (int i = 0; i < k; ++i) {
    edge_id to_next = i;
    edge_id to_prev = (i + k - 1) % k;
    g.rotation[i] = {to_next, to_prev};
  }
  for (int i = 0; i < k; ++i) g.outer_face.push_back(i);
  return g;
}

embedded_graph gen_wheel(int rim) {
  require(rim >= 3, errc::graph_too_small, "wheel needs a rim of at least 3");
  embedded_graph g;
  g.n = rim + 1;
  g.rotation.resize(g.n);
  // spokes 0..rim-1: hub to rim vertex i+1; rim edges rim..2*rim-1
  for (int i = 1; i <= rim; ++i) g.edges.emplace_back(0, i);
  for (int i = 1; i <= rim; ++i) g.edges.emplace_back(i, i % rim + 1);
  auto spoke = [&](int i) { return i - 1; };            // incident to rim vertex i
  auto rim_edge = [&](int i) { return rim + i - 1; };   // from rim vertex i to its successor
  for (int i = 1; i <= rim; ++i) g.rotation[0].push_back(spoke(i));
  for (int i = 1; i <= rim; ++i) {
    int prev = (i + rim - 2) % rim + 1;
    g.rotation[i] = {rim_edge(i), spoke(i), rim_edge(prev)};
  }
  for (int i = 1; i <= rim; ++i) g.outer_face.push_back(i);
  return g;
}

embedded_graph gen_grid(int rows, int cols) {
  require(rows >= 2 && cols >= 2, errc::graph_too_small, "grid needs at least 2x2");
  embedded_graph g;
  g.n = rows * cols;
  g.rotation.resize(g.n);
  auto at = [&](int r, int c) { return r * cols + c; };
  std::vector<std::vector<edge_id>> horiz(rows, std::vector<edge_id>(cols - 1, -1));
  std::vector<std::vector<edge_id>> vert(rows - 1, std::vector<edge_id>(cols, -1));
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c + 1 < cols; ++c)
      horiz[r][c] = g.new_edge(at(r, c), at(r, c + 1));
  for (int r = 0; r + 1 < rows; ++r)
    for (int c = 0; c < cols; ++c)
      vert[r][c] = g.new_edge(at(r, c), at(r + 1, c));

  // Clockwise with row 0 on top: up, right, down, left.
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      auto& rot = g.rotation[at(r, c)];
      if (r > 0) rot.push_back(vert[r - 1][c]);
      if (c + 1 < cols) rot.push_back(horiz[r][c]);
      if (r + 1 < rows) rot.push_back(vert[r][c]);
      if (c > 0) rot.push_back(horiz[r][c - 1]);
    }

  for (int c = 0; c < cols; ++c) g.outer_face.push_back(at(0, c));
  for (int r = 1; r < rows; ++r) g.outer_face.push_back(at(r, cols - 1));
  for (int c = cols - 2; c >= 0; --c) g.outer_face.push_back(at(rows - 1, c));
  for (int r = rows - 2; r >= 1; --r) g.outer_face.push_back(at(r, 0));
  return g;
}

embedded_graph gen_stacked_triangulation(int n, std::uint64_t seed) {
  require(n >= 3, errc::graph_too_small, "triangulation needs at least 3 vertices");
  embedded_graph g = gen_triangle();
  std::mt19937_64 rng(seed);

  // Inner triangles in counterclockwise walk order.
  std::vector<std::array<vertex_id, 3>> faces = {{0, 1, 2}};

  while (g.n < n) {
    size_t pick = static_cast<size_t>(rng_below(rng(), faces.size()));
    auto [a, b, c] = faces[pick];
    vertex_id x = g.add_vertex();

    edge_id e_ab = *g.find_edge(a, b);
    edge_id e_bc = *g.find_edge(b, c);
    edge_id e_ca = *g.find_edge(c, a);
    edge_id xa = g.new_edge(x, a);
    edge_id xb = g.new_edge(x, b);
    edge_id xc = g.new_edge(x, c);

    // Seen from inside the triangle, the corners pass counterclockwise, so
    // the clockwise rotation at x is a, c, b. Each corner slots the new edge
    // between the two triangle sides meeting there.
    g.rotation[x] = {xa, xc, xb};
    g.rotation_insert_after(a, e_ca, xa);
    g.rotation_insert_after(b, e_ab, xb);
    g.rotation_insert_after(c, e_bc, xc);

    faces[pick] = {a, b, x};
    faces.push_back({b, c, x});
    faces.push_back({c, a, x});
  }
  return g;
}

} // namespace tracklay
