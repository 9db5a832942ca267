#pragma once

#include <string>
#include <vector>

#include "tracklay/fans.hpp"
#include "tracklay/layering.hpp"
#include "tracklay/layout.hpp"
#include "tracklay/skeleton.hpp"
#include "tracklay/verify.hpp"

namespace tracklay {

// ─────────────────────────────────────────────────────────────────────────────
// Ladder placement
//
// The placement loop drives a first-in-first-out queue of regions. The first
// layer goes onto track 1; each popped region has its skeletons assembled
// and their chain rows appended at the rightmost end of the tracks starting
// 2Z below the region's root, so every edge into freshly placed content
// spans at most 2Z tracks. Surviving regions enqueue in placed order — the
// left-side survivors left-to-right, then the right-side survivors in the
// mirror construction's order — which keeps each region left of its own
// deeper content and the connector chords of different regions non-nested.
//
// Wrapping folds track t onto track ((t-1) mod 2D)+1, appending fold blocks
// left to right. With every edge spanning fewer than 2D tracks, two edges
// land on the same folded track pair only when they spanned the same signed
// distance, so blocks never cross and the layout's nesting and crossing
// numbers survive the fold unchanged.
// ─────────────────────────────────────────────────────────────────────────────

/// One appended block, recorded for diagnostics and tests: which root it
/// hangs under, the first track its rows touched, and what it placed.
struct block_trace {
  vertex_id root = -1; // -1 for the initial first-layer row
  int start_track = 0;
  std::vector<vertex_id> vertices;
};

/// Derives workable offsets from the instance: J measures the largest track
/// span inside one skeleton block (a dry run over the first skeleton), then
/// Z = J+1 keeps blocks clear of their hosts and D = 2Z+1 leaves wrapping a
/// strict margin, so folded blocks cannot cross.
placement_config derive_config(const composite_layerlike& cl);

/// Places every vertex onto an unwrapped ladder. The optional trace records
/// each appended block in placement order.
ladder_layout place(const composite_layerlike& cl, const placement_config& cfg,
                    std::vector<block_trace>* trace = nullptr);

/// The edge set a freshly placed layout is judged by: kept edges plus the
/// added ties that stand in for removed ones.
std::vector<vpair> placed_edges(const composite_layerlike& cl);

/// Swaps the stand-ins for the real thing: kept edges plus every removed
/// edge (wires, piles, bridges), ties dropped. Positions are untouched; the
/// layout only validates that every endpoint is actually placed. Throws
/// ledger_mismatch when the recorded classes don't cover the graph.
std::vector<vpair> reinsert_deleted(const ladder_layout& l, const composite_layerlike& cl);

/// Folds the layout onto at most 2*fold tracks. Refuses (distance_exceeds_bound)
/// unless every given edge spans at most `fold` tracks, measured, not assumed.
ladder_layout wrap(const ladder_layout& l, int fold, const std::vector<vpair>& edges);

/// Layout dump: per-track vertex lists, offsets, wrap state, and the edge
/// classes of the composite it was placed from.
std::string layout_json(const ladder_layout& l, const composite_layerlike& cl);

} // namespace tracklay
