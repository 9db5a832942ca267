#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "tracklay/plane_graph.hpp"

namespace tracklay::testing {

/// K4 with one vertex nested inside the outer triangle. Rotations and outer
/// face were derived from the drawing 0=(0,2), 1=(2,-1), 2=(-2,-1), 3=(0,0).
inline embedded_graph make_k4() {
  embedded_graph g;
  g.n = 4;
  g.edges = {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {1, 3}, {2, 3}};
  g.rotation = {{0, 3, 2}, {1, 4, 0}, {2, 5, 1}, {3, 4, 5}};
  g.outer_face = {0, 1, 2};
  return g;
}

/// Octahedron: outer triangle 0,1,2 around inner triangle 3,4,5, every inner
/// vertex tied to two outer ones. Derived from the drawing 0=(0,2), 1=(2,-1),
/// 2=(-2,-1), 3=(0,-0.5), 4=(0.5,0.5), 5=(-0.5,0.5).
inline embedded_graph make_octahedron() {
  embedded_graph g;
  g.n = 6;
  g.edges = {{0, 1}, {1, 2}, {2, 0},  // 0..2 outer
             {3, 4}, {4, 5}, {3, 5},  // 3..5 inner triangle
             {0, 4}, {0, 5}, {1, 3},  // 6..8 cross ties
             {1, 4}, {2, 3}, {2, 5}}; // 9..11
  g.rotation = {{0, 6, 7, 2}, {1, 8, 9, 0}, {2, 11, 10, 1},
                {3, 8, 10, 5}, {9, 3, 4, 6}, {7, 4, 5, 11}};
  g.outer_face = {0, 1, 2};
  return g;
}

/// Octahedron with one more vertex (6) stacked into the innermost face
/// (3,4,5), so a second level hangs below the inner triangle.
inline embedded_graph make_octahedron_stacked() {
  embedded_graph g = make_octahedron();
  g.n = 7;
  g.edges.push_back({3, 6});  // 12
  g.edges.push_back({4, 6});  // 13
  g.edges.push_back({5, 6});  // 14
  g.rotation.push_back({13, 12, 14});
  g.rotation[3] = {3, 8, 10, 5, 12};
  g.rotation[4] = {9, 3, 13, 4, 6};
  g.rotation[5] = {7, 4, 14, 5, 11};
  return g;
}

/// Hexagon 0..5 with the chord {2,4}, a five-spoke hub 6 filling the upper
/// region, and a vertex 7 tucked into the lower triangle (2,3,4) where the
/// hexagon's smallest vertex cannot see it. Drawing: regular hexagon listed
/// clockwise from the top, 6 near the middle, 7 at (0,-2.5).
inline embedded_graph make_chord_pocket() {
  embedded_graph g;
  g.n = 8;
  g.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, // 0..5 hexagon
             {2, 4},                                          // 6 chord
             {0, 6}, {1, 6}, {2, 6}, {4, 6}, {5, 6},          // 7..11 hub spokes
             {2, 7}, {3, 7}, {4, 7}};                         // 12..14 pocket ties
  g.rotation = {{0, 7, 5},           {1, 8, 0},      {1, 2, 12, 6, 9},
                {13, 2, 3},          {4, 10, 6, 14, 3}, {5, 11, 4},
                {7, 8, 9, 10, 11},   {12, 13, 14}};
  g.outer_face = {0, 1, 2, 3, 4, 5};
  return g;
}

/// Hexagon 0..5 around two triangles {6,7,8} and {9,10,11} joined by the
/// single edge {7,9}; the ring in between is fully triangulated with no
/// hexagon chords. Drawing: hexagon clockwise from the top, left triangle
/// pointing right at x=-2, right triangle pointing left at x=+2.
inline embedded_graph make_dumbbell() {
  embedded_graph g;
  g.n = 12;
  g.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 5}, // 0..5 hexagon
             {6, 7}, {7, 8}, {6, 8},                          // 6..8 left triangle
             {9, 10}, {10, 11}, {9, 11},                      // 9..11 right triangle
             {7, 9},                                          // 12 connecting bar
             {0, 6}, {0, 7}, {0, 9}, {0, 10},                 // 13..16 top ties
             {1, 10}, {2, 10}, {2, 11},                       // 17..19 right ties
             {3, 11}, {3, 9}, {3, 7}, {3, 8},                 // 20..23 bottom ties
             {4, 8}, {5, 8}, {5, 6}};                         // 24..26 left ties
  g.rotation = {{0, 16, 15, 14, 13, 5}, {1, 17, 0},    {2, 19, 18, 1},
                {22, 21, 20, 2, 3, 23}, {4, 24, 3},    {5, 26, 25, 4},
                {13, 6, 8, 26},         {14, 12, 22, 7, 6},
                {8, 7, 23, 24, 25},     {9, 11, 21, 12, 15},
                {17, 18, 10, 9, 16},    {10, 19, 20, 11}};
  g.outer_face = {0, 1, 2, 3, 4, 5};
  return g;
}

/// Pentagon 0..4 around a four-cycle 5,8,7,6 whose chord {6,8} closes two
/// stacked triangles; 6 sits behind the others with no tie of its own to the
/// pentagon. Drawing: pentagon clockwise from the top, 6 at (0,1) under the
/// apex, 5 right, 7 left, 8 at (0,-1).
inline embedded_graph make_orphan_ledge() {
  embedded_graph g;
  g.n = 9;
  g.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4},  // 0..4 pentagon
             {0, 5}, {0, 6}, {0, 7},                   // 5..7 apex ties
             {5, 6}, {6, 7},                           // 8..9 upper path
             {5, 8}, {6, 8}, {7, 8},                   // 10..12 lower ties
             {1, 5}, {2, 5}, {2, 8}, {3, 8}, {3, 7}, {4, 7}}; // 13..18 ring ties
  g.rotation = {{0, 5, 6, 7, 4},     {1, 13, 0},      {1, 2, 15, 14},
                {17, 16, 2, 3},      {4, 18, 3},      {13, 14, 10, 8, 5},
                {6, 8, 11, 9},       {7, 9, 12, 17, 18},
                {11, 10, 15, 16, 12}};
  g.outer_face = {0, 1, 2, 3, 4};
  return g;
}

/// Sorted (min,max) endpoint pairs — handy for comparing edge sets.
inline std::set<std::pair<vertex_id, vertex_id>> edge_pairs(const embedded_graph& g) {
  std::set<std::pair<vertex_id, vertex_id>> out;
  for (auto [u, v] : g.edges) out.insert(std::minmax(u, v));
  return out;
}

inline int degree(const embedded_graph& g, vertex_id v) {
  return static_cast<int>(g.rotation[v].size());
}

} // namespace tracklay::testing
