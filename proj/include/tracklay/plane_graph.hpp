#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tracklay/errors.hpp"

namespace tracklay {

using vertex_id = int;
using edge_id = int;

// ─────────────────────────────────────────────────────────────────────────────
// Embedded graph
//
// A combinatorial plane graph: vertices 0..n-1, undirected edges stored once,
// and for every vertex the clockwise cyclic order of its incident edges.
// One face walk is distinguished as the outer face.
//
// Orientation convention (fixed throughout the project): walking a dart u→v,
// the face lying on the LEFT is traced by continuing with the successor of
// {v,u} in the clockwise rotation at v. Under clockwise rotations this makes
// every inner face come out counterclockwise and the outer face clockwise.
// ─────────────────────────────────────────────────────────────────────────────

struct dart {
  edge_id e = -1;
  bool forward = true; // true: tail=edges[e].first, head=edges[e].second

  friend bool operator==(const dart&, const dart&) = default;
};

struct embedded_graph {
  int n = 0;
  std::vector<std::pair<vertex_id, vertex_id>> edges;
  std::vector<std::vector<edge_id>> rotation; // clockwise incident edges per vertex
  std::vector<vertex_id> outer_face;          // one traversal of the outer face walk

  // ── basic accessors ──
  vertex_id tail(dart d) const { return d.forward ? edges[d.e].first : edges[d.e].second; }
  vertex_id head(dart d) const { return d.forward ? edges[d.e].second : edges[d.e].first; }

  dart dart_from(edge_id e, vertex_id from) const;
  vertex_id other_end(edge_id e, vertex_id from) const;
  bool has_edge(vertex_id u, vertex_id v) const;
  std::optional<edge_id> find_edge(vertex_id u, vertex_id v) const;
  std::vector<vertex_id> neighbors(vertex_id v) const;

  /// Index of `e` in rotation[v]; throws if absent.
  int rotation_index(vertex_id v, edge_id e) const;

  /// Successor dart when tracing the face on the left of `d`.
  dart face_next(dart d) const;

  // ── mutation primitives ──
  /// Appends an undirected edge without touching any rotation.
  edge_id new_edge(vertex_id u, vertex_id v);
  void rotation_insert_before(vertex_id v, edge_id anchor, edge_id e);
  void rotation_insert_after(vertex_id v, edge_id anchor, edge_id e);

  /// Adds an undirected edge, splicing it into both rotations:
  /// at `u` immediately before `before_u`, at `v` immediately after `after_v`.
  edge_id add_edge_spliced(vertex_id u, edge_id before_u, vertex_id v, edge_id after_v);

  /// Adds a fresh vertex with an empty rotation; returns its id.
  vertex_id add_vertex();

  // ── structure queries ──
  /// Darts of the face on the left of `d`, in trace order, starting at `d`.
  std::vector<dart> trace_face_darts(dart d) const;

  /// Face walk containing dart `d` (vertices in trace order; length = #darts).
  std::vector<vertex_id> trace_face(dart d) const;

  /// All face walks, each reported once, keyed by a canonical dart.
  std::vector<std::vector<vertex_id>> all_faces() const;

  bool is_connected() const;

  /// Full validation: rotation consistency, connectivity, Euler's formula on
  /// the face orbits, and the declared outer face matching a traced orbit up
  /// to rotation. Throws on the first violation.
  void validate() const;

  /// True when every face except the outer one is a triangle.
  bool inner_faces_triangular() const;
};

/// Two face walks are equal as cyclic sequences (same direction).
bool cyclic_equal(const std::vector<vertex_id>& a, const std::vector<vertex_id>& b);

// ─────────────────────────────────────────────────────────────────────────────
// Triangulation
//
// Inserts chords into every non-triangular inner face. Per face, the walk is
// rotated to start at its smallest vertex and corners are clipped greedily:
// the first corner (u,v,w) with u ≠ w and edge {u,w} not yet present anywhere
// in the graph is cut off. On a simple face this is exactly the fan from the
// smallest vertex. Never adds parallel edges; the outer face is untouched.
// ─────────────────────────────────────────────────────────────────────────────

struct triangulation_result {
  embedded_graph graph;
  std::vector<edge_id> added_edges;
};

triangulation_result triangulate(const embedded_graph& g);

// ─────────────────────────────────────────────────────────────────────────────
// Chord subdivision
//
// Given a cycle C in the graph, a chord is an edge between two non-adjacent
// C-vertices that is not part of C. subdivide_chords removes each chord
// (u,v) by introducing a fresh vertex w' placed inside a face incident to
// the chord, replacing the chord with the path u–w'–v, and attaching w' to
// the face's third vertex w with one extra edge. The replacement map records
// which original edge every path edge descends from, so layouts of the
// subdivided graph can be translated back.
// ─────────────────────────────────────────────────────────────────────────────

struct subdivision_map {
  /// new vertex → the original edge it subdivides
  std::unordered_map<vertex_id, edge_id> split_vertex_origin;
  /// per new vertex: the two replacement edges (u,w') and (w',v)
  std::unordered_map<vertex_id, std::pair<edge_id, edge_id>> replacement_edges;
  /// per new vertex: the anchoring edge (w,w')
  std::unordered_map<vertex_id, edge_id> anchor_edges;
};

struct subdivision_result {
  embedded_graph graph;
  subdivision_map map;
  int chords_removed = 0;
};

/// Finds the chords of `cycle` in `g` and subdivides them all. `cycle` lists
/// the cycle's vertices in walk order.
subdivision_result subdivide_chords(const embedded_graph& g,
                                    const std::vector<vertex_id>& cycle);

/// Chords of `cycle` present in `g` (edges between non-consecutive cycle
/// vertices), in increasing edge-id order.
std::vector<edge_id> find_chords(const embedded_graph& g,
                                 const std::vector<vertex_id>& cycle);

} // namespace tracklay
