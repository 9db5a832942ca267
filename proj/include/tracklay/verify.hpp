#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tracklay/layout.hpp"

namespace tracklay {

// ─────────────────────────────────────────────────────────────────────────────
// Layout measurement and validation
//
// Everything here is independent of how a layout was produced: functions take
// vertex orders, edge lists, and ladder layouts, and report nesting numbers,
// crossing numbers, distances, and rule violations. The layout pipeline is
// accepted or rejected by this module alone.
//
// Conventions. Two chords (u1,v1), (u2,v2) on one ordered track nest when
// u1 < u2 < v2 < v1 by position with all four endpoints distinct; sharing an
// endpoint never nests. Two edges between the same ordered track pair
// X-cross when their endpoint order on one track is the strict reverse of
// their order on the other; again a shared endpoint never crosses.
// ─────────────────────────────────────────────────────────────────────────────

using vpair = std::pair<vertex_id, vertex_id>;

struct metrics {
  int q = 0; // max per-track nesting number
  int x = 0; // max per-track-pair crossing number
  int d = 0; // max track distance spanned by an edge
  std::map<int, int> per_track_q;
  std::map<std::pair<int, int>, int> per_pair_x;
};

/// Measures nesting, crossing, and distance numbers of a placed layout over
/// the given edge set. Throws unplaced_vertex if an edge endpoint has no slot.
metrics measure(const ladder_layout& l, const std::vector<vpair>& edges);

/// Size of the largest pairwise-nesting chord family under `order`, computed
/// by sorting and a longest strictly-decreasing chain. If `witness` is given
/// it receives one family of that size. Chord endpoints must appear in
/// `order`; chords with endpoints outside it are rejected (malformed_input).
int max_nesting(const std::vector<vertex_id>& order, const std::vector<vpair>& chords,
                std::vector<vpair>* witness = nullptr);

/// Size of the largest pairwise-crossing family among edges between two
/// ordered tracks. Each edge is given as (position on track A, position on
/// track B).
int max_crossing(const std::vector<std::pair<int, int>>& spans);

// ── track layouts ──

struct track_layout {
  int track_count = 0;
  std::vector<int> color_of;                 // per vertex, 1-based
  std::vector<std::vector<vertex_id>> order; // order[c-1] = track c left-to-right
};

struct layout_violation {
  std::string kind; // "intra-track-edge" or "x-crossing"
  vpair first{-1, -1}, second{-1, -1};
  std::string detail;
};

/// Checks the track-layout rules: every track is an independent set and no
/// two edges between any track pair X-cross. Returns the first violation
/// found, or nullopt when the layout is valid. Structural breakage (colors
/// out of range, orders not matching the coloring) throws malformed_input.
std::optional<layout_violation> validate_track_layout(const track_layout& t,
                                                      const std::vector<vpair>& edges);

/// Splits the tracks of a ladder layout until the result is a valid track
/// layout. Endpoints of an intra-track chord always part ways; sub-tracks are
/// colored greedily (decreasing conflict degree) and ordered so that each
/// chord-connected component forms one block, blocks sorted by leftmost
/// original position — this turns nested chord families into parallel ones
/// instead of crossings. Any violation the validator still finds adds its
/// concrete conflict pair and the split repeats, which terminates because
/// every added conflict keeps its pair apart for good.
track_layout refine_to_track_layout(const ladder_layout& l, const std::vector<vpair>& edges);

// ── queue layouts ──

struct queue_layout {
  std::vector<vertex_id> order; // one global total order
  std::vector<int> queue_of;    // per edge (parallel to the edge list), 1-based
  int queue_count = 0;          // distinct queue labels in use
};

/// Derives a queue layout from a valid track layout: the global order
/// concatenates the tracks, and an edge between tracks i < j goes to queue
/// j - i, so at most track_count - 1 queues appear. An invalid track layout
/// is rejected (malformed_input).
queue_layout track_to_queue(const track_layout& t, const std::vector<vpair>& edges);

/// Checks that no two edges in the same queue nest under q.order. Returns the
/// first violation or nullopt.
std::optional<layout_violation> validate_queue_layout(const queue_layout& q,
                                                      const std::vector<vpair>& edges);

/// Minimum queues for the FIXED order via greedy first-fit over chords sorted
/// by (left endpoint asc, right endpoint desc). Always equals
/// max_nesting(order, chords).
int min_queues_for_order(const std::vector<vertex_id>& order, const std::vector<vpair>& chords);

struct oracle_result {
  int queues = 0;
  std::vector<vertex_id> best_order;
};

/// Exhaustive minimum queue number over every vertex order, with one optimal
/// order as witness. Exponential: rejects n > 9 (graph_too_large).
oracle_result min_queue_oracle(int n, const std::vector<vpair>& edges);

} // namespace tracklay
