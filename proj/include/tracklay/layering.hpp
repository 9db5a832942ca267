#pragma once

#include <cstdint>
#include <vector>

#include "tracklay/plane_graph.hpp"

namespace tracklay {

// ─────────────────────────────────────────────────────────────────────────────
// Composite layerlike structure
//
// reform() rewrites a triangulated plane graph into a layered form: the outer
// cycle is layer 1, and the interior is peeled recursively. Each recursion
// step works on a "host" — a boundary walk with one distinguished pivot
// vertex and a set of interior vertices. The host's interior components that
// touch the pivot are placed on the next layer along their outer contours
// (grouped into units: cycle blocks become bead runs, the rest become loose
// stretches); components hidden from the pivot are deferred to pocket hosts
// built from the faces that remain once the pivot's edges are dropped.
//
// Edges are never deleted from the embedding; removal is a class retag:
//   kept   — survives into the layout
//   wire   — pivot-to-content edge spanning two layers
//   pile   — pivot-to-content edge within one layer
//   bridge — contour cut edge between two placed runs
// Dummy edges (upper, lower) are added separately — never into the rotation
// system — so that every vertex below layer 1 keeps an upper neighbor.
//
// Every placed vertex receives an ordering key: content of a host extends its
// pivot's key by (group, index). Sorting keys lexicographically yields the
// left-to-right order of every layer, with a pivot immediately preceding all
// content keyed under it.
// ─────────────────────────────────────────────────────────────────────────────

enum class edge_class : std::uint8_t { kept, wire, pile, bridge };

const char* edge_class_name(edge_class c);

using order_key = std::vector<std::uint32_t>;

struct removed_edge {
  edge_id e = -1;
  edge_class cls = edge_class::kept;
  int host = -1; // host whose processing removed it
  int comp = -1; // component index within that host (bridges only)
};

struct dummy_edge {
  vertex_id upper = -1; // one layer above lower
  vertex_id lower = -1;
  int host = -1;
};

struct unit_rec {
  int id = -1;
  int host = -1; // owning host
  int comp = -1; // component index within the host
  bool bead = false;
  std::vector<vertex_id> run; // vertices newly placed by this unit, in order
  int sub_host = -1;          // interior host below a bead's cycle
};

struct host_rec {
  int id = -1;
  int parent = -1;
  bool pocket = false;
  vertex_id pivot = -1;
  std::vector<vertex_id> boundary; // walk starting at pivot, content on the right
  int content_layer = 0;
  std::vector<int> units;   // unit ids in placement order
  std::vector<int> pockets; // pocket host ids in creation order
};

struct composite_layerlike {
  embedded_graph graph;   // reformed graph (chords subdivided)
  subdivision_map submap; // provenance of subdivision vertices
  std::vector<int> layer; // per vertex, 1-based
  std::vector<order_key> key;
  std::vector<edge_class> eclass; // per edge
  std::vector<removed_edge> removed;
  std::vector<dummy_edge> dummies;
  std::vector<host_rec> hosts; // hosts[0] is the root
  std::vector<unit_rec> units;
  int layer_count = 0;

  /// Vertices of one layer sorted by key.
  std::vector<vertex_id> layer_in_order(int layer_no) const;

  /// True when `a` sorts before `b` (lexicographic; a prefix sorts first).
  static bool key_less(const order_key& a, const order_key& b);
};

/// Rewrites a connected plane graph with triangular inner faces into the
/// layered form described above.
composite_layerlike reform(const embedded_graph& triangulated);

/// Structural invariants of a reform result; throws on the first violation.
/// Checks layer assignment, key uniqueness and nesting, edge classification
/// consistency, the one-layer span of kept and dummy edges, and that every
/// vertex below layer 1 has an upper neighbor.
void validate_layerlike(const composite_layerlike& c);

} // namespace tracklay
