#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tracklay/layering.hpp"
#include "tracklay/layout.hpp"
#include "tracklay/verify.hpp"

namespace tracklay {

// ─────────────────────────────────────────────────────────────────────────────
// Raising structure over a composite layer decomposition
//
// Every vertex climbs toward the first layer along tie edges (kept edges to
// the previous layer, plus the added ties). Picking the leftmost upper
// neighbor as the parent makes the climb a forest: any two climbing paths are
// either disjoint or merge for good. Fans bundle a vertex with a consecutive
// run of its upper neighbors; chains of fans climbing a region, together with
// the wing paths hanging off their flanks, carve the region into smaller
// regions between consecutive climbing paths.
// ─────────────────────────────────────────────────────────────────────────────

struct raising_path_set {
  std::vector<vertex_id> parent;                // leftmost upper tie; -1 on layer 1
  std::vector<std::vector<vertex_id>> children; // inverse of parent, in key order

  /// The climbing path (v, parent(v), …) ending on the first layer.
  std::vector<vertex_id> path(vertex_id v) const;
};

/// Builds the leftmost-parent forest. A vertex above the first layer with no
/// tie to the layer above it makes the decomposition unusable: orphan_vertex.
raising_path_set build_raising_paths(const composite_layerlike& cl);

// ── regions ──

/// A set of vertices delimited by two climbing paths. Boundaries are stored
/// base-first (deepest vertex first) and may extend above the region's top
/// layer; empty boundary means the region reaches the graph's outer rim.
struct region {
  std::vector<vertex_id> members; // sorted by vertex id
  std::vector<vertex_id> left_boundary;
  std::vector<vertex_id> right_boundary;
  vertex_id root = -1; // set by the decomposition stages that root regions

  bool contains(vertex_id v) const;
  bool empty() const { return members.empty(); }
};

/// The region holding every vertex of the composite, with open boundaries.
region whole_graph_region(const composite_layerlike& cl);

// ── fans ──

struct fan {
  vertex_id lower = -1;          // the vertex the fan hangs from
  std::vector<vertex_id> upper;  // consecutive slice of the layer above it
};

/// Tie adjacency shared by the fan machinery. Climbing uses the edges that
/// connect a vertex to the layer directly above it: kept edges one layer
/// apart plus the added ties. Fans additionally see the removed edges — the
/// vertices a removed edge once reached must end up consecutive over its
/// survivor so the edge can return without crossings.
struct tie_adjacency {
  std::vector<int> pos_in_layer;                   // ambient position within the layer
  std::vector<std::vector<vertex_id>> uppers;      // climbing ties, by position
  std::vector<std::vector<vertex_id>> fan_uppers;  // ties plus removed edges
  std::vector<std::vector<vertex_id>> fan_lowers;  // transpose of fan_uppers: children

  explicit tie_adjacency(const composite_layerlike& cl);

  /// Maximal runs of `m`'s upper ties inside `r`, each run consecutive in the
  /// ambient layer order; returned left to right.
  std::vector<fan> fans_of(vertex_id m, const region& r) const;
};

/// A chain of fans climbing a region: deepest first, each step either widens
/// to a same-layer fan whose upper run strictly contains the current one, or
/// climbs to a fan hung from one of the current upper vertices. The lowers
/// form the middle path; the non-middle upper vertices fan out into left and
/// right wings of clipped climbing paths.
struct raising_fan {
  std::vector<fan> fans;
  std::vector<vertex_id> middle_path;              // middle_path[i] == fans[i].lower
  std::vector<vertex_id> spine_extension;          // the last lower's climb onward
  std::vector<std::vector<vertex_id>> wings_left;  // per fan, flattened path vertices
  std::vector<std::vector<vertex_id>> wings_right;

  bool empty() const { return fans.empty(); }

  /// Middle path plus its extension: the dividing line the wings hang off.
  std::vector<vertex_id> spine() const;
};

/// Builds the maximal fan chain anchored at `v`, which must lie in `r`.
/// Returns an empty chain when `v` has no upper ties inside the region or
/// when the region has degenerated to a single climbing path.
raising_fan leftmost_raising_fan(const composite_layerlike& cl, const raising_path_set& rp,
                                 const region& r, vertex_id v);

// ── fan-induced partition ──

struct fan_regions {
  std::vector<region> left;      // between consecutive left-side paths, left to right
  std::vector<region> right;     // between consecutive right-side paths, left to right
  std::optional<region> middle;  // straddles the middle path, below the deepest fan
};

/// Splits `r` minus the fan chain's own vertices into regions bounded by
/// consecutive climbing paths: the region's left boundary and the left wing
/// bases, then the straddle gap around the middle path, then the right wing
/// bases and the region's right boundary. Empty gaps contribute no region.
fan_regions fan_partition(const composite_layerlike& cl, const raising_path_set& rp,
                          const region& r, const raising_fan& rf);

// ── placement plan ──

/// Per-layer placement order for the fan chain's own vertices: left-wing
/// vertices ascending, then the layer's middle vertices in reverse chain
/// order, then right-wing vertices descending.
struct placement_plan {
  std::vector<int> layers;                       // ascending layer numbers
  std::vector<std::vector<vertex_id>> per_layer; // parallel to layers
};

placement_plan fan_placement_order(const composite_layerlike& cl, const raising_fan& rf);

/// Realizes a plan as a ladder (track i+1 = layers[i]) so the measurement
/// module can judge it.
ladder_layout materialize_plan(const composite_layerlike& cl, const placement_plan& plan);

/// The chain's structural edges: every fan's lower-to-upper edges plus the
/// climbing edges inside the wings and along the spine.
std::vector<vpair> fan_edges(const raising_path_set& rp, const raising_fan& rf);

/// The chain's edges split by the side of the spine they serve. The spine's
/// own climbing ties sit between the zones and cross neither, so they belong
/// to both families; an arm that lands on a spine vertex sits on neither side
/// and is excluded — nested same-layer fans force such an arm across the
/// wider fans' outer arms, a bounded effect that track refinement absorbs
/// later. A placed chain keeps each family free of crossings on its own.
struct fan_edge_families {
  std::vector<vpair> left;
  std::vector<vpair> right;
};

fan_edge_families fan_edge_sides(const raising_path_set& rp, const raising_fan& rf);

/// Debug dump (fans, middle path, wings) for golden tests and the CLI.
std::string raising_fan_json(const raising_fan& rf);

} // namespace tracklay
