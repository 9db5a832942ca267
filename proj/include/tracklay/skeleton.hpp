#pragma once

#include <string>
#include <vector>

#include "tracklay/fans.hpp"
#include "tracklay/layering.hpp"

namespace tracklay {

// ─────────────────────────────────────────────────────────────────────────────
// Boundary forests and skeletons
//
// A region is emptied from its boundaries inward: fan chains anchored on the
// left boundary are colored one at a time, each chain's partition replacing
// its host region in a left-to-right pool, until no region bordering that
// boundary holds a fan. The colored chains form a forest (a chain found
// inside another chain's region is its child), and the surviving pool holds
// every boundary vertex's remaining children. A region's skeleton glues the
// left-boundary forest to the mirror-image forest of what remains on the
// right; its final regions are the units later placement stages recurse into.
// ─────────────────────────────────────────────────────────────────────────────

enum class forest_side { left, right };

/// One colored fan chain: where it was found and what its partition produced.
/// Chains of a right-side forest are stored in mirrored orientation (their
/// left wings face the ambient right).
struct forest_node {
  raising_fan chain;
  int parent = -1;            // node whose partition produced the host region
  int host = -1;              // index into forest_like::regions
  std::vector<int> produced;  // region indices, ambient left to right
};

/// A region the construction has seen, in ambient orientation.
struct tracked_region {
  region r;
  int producer = -1;     // node whose partition created it; -1 for the start region
  int consumed_by = -1;  // node whose chain was colored inside it; -1 when final
};

struct forest_like {
  forest_side side = forest_side::left;
  std::vector<forest_node> nodes;       // creation order
  std::vector<int> roots;               // nodes found directly in the start region
  std::vector<tracked_region> regions;  // [0] is the start region
  std::vector<int> pool;                // final region indices, ambient left to right

  bool empty() const { return nodes.empty(); }
};

/// Colors all fan chains anchored on one boundary of `w`. Chains reached
/// through the opposite boundary's corner (the lineage of regions that still
/// own `w`'s right boundary) are colored only when they actually reach that
/// boundary; everything else stays in the pool for later stages.
forest_like build_forest(const composite_layerlike& cl, const raising_path_set& rp,
                         const region& w, forest_side side);

// ── decomposition of a forest inside one region ──

/// The forest restricted to `w`, split for placement: the left chain holds
/// sibling chains clear of `w`'s right boundary, the right chain descends
/// ancestor to descendant with each member reaching the right boundary, and
/// each right-chain member owns at most one region that still borders the
/// right boundary — the pocket its successor was found in.
struct skeleton_decomposition {
  std::vector<int> left_chain;   // node ids, left to right
  std::vector<int> right_chain;  // node ids, ancestor first
  std::vector<int> black_holes;  // per right-chain node: region index, -1 if none
};

/// Splits the forest inside `w` and verifies the shape on its own output:
/// right-chain members must form a parent path threaded through the black
/// holes, and no other chain may reach the right boundary. A violation
/// throws decomposition_error — it indicates an upstream bug, not bad input.
skeleton_decomposition decompose(const composite_layerlike& cl, const forest_like& f,
                                 const region& w);

// ── skeletons ──

struct skeleton_region {
  region r;
  bool from_right = false;   // carved by the right-boundary forest
  bool holds_left = false;   // holds a child of a left-boundary vertex
  bool holds_middle = false; // holds a child of the region's root
  bool holds_right = false;  // holds a child of a right-boundary vertex
};

/// A region's skeleton: the left-boundary forest, the right-boundary forest
/// of the leftover that still owned the right boundary, and the surviving
/// regions in ambient order. A region whose interior is a single climbing
/// path has no chains; the path itself stands in as the skeleton.
struct skeleton {
  vertex_id root = -1;
  forest_like left_part;
  forest_like right_part;
  std::vector<vertex_id> path_vertices;  // degenerate interior: the bare path
  std::vector<skeleton_region> regions;  // ambient left to right

  /// Root, chain vertices of both forests, the surviving regions' bounding
  /// paths, and the bare path if degenerate. These are the vertices the
  /// skeleton keeps out of every surviving region.
  std::vector<vertex_id> vertices() const;
};

/// Builds the skeleton of `w` and re-verifies its defining property on the
/// output: every child of a boundary vertex or of the root is either a
/// skeleton vertex or inside exactly one surviving region. Violations throw
/// decomposition_error.
skeleton assemble_skeleton(const composite_layerlike& cl, const raising_path_set& rp,
                           const region& w);

/// Skeletonizes `w` and then every surviving region still holding uncovered
/// children of `w`'s root, until each child is a vertex of some skeleton.
/// Requires a rooted region; a childless root yields an empty sequence.
/// Needing more skeletons than the root has children throws non_termination.
std::vector<skeleton> skeleton_sequence(const composite_layerlike& cl,
                                        const raising_path_set& rp, const region& w);

// ── support ──

/// The same composite with every layer's order reversed (keys are rebuilt as
/// single ranks in reversed global order). Right-boundary forests are built
/// by running the left-boundary construction on the mirror.
composite_layerlike mirrored(const composite_layerlike& cl);

/// Debug dumps for golden tests and the CLI.
std::string forest_json(const forest_like& f);
std::string skeleton_json(const skeleton& sk);

} // namespace tracklay
