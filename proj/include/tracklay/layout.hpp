#pragma once

#include <vector>

#include "tracklay/errors.hpp"
#include "tracklay/plane_graph.hpp"

namespace tracklay {

// ─────────────────────────────────────────────────────────────────────────────
// Ladder layout
//
// The shared currency between placement and measurement: every vertex sits on
// a 1-based track and holds a position inside that track. Positions per track
// are dense 0..k-1 and unique; a track_of entry of 0 marks an unplaced vertex
// (only legal transiently, never in a finished layout).
// ─────────────────────────────────────────────────────────────────────────────

struct placement_config {
  int j = 1; // largest gap inside one placed skeleton block
  int z = 2; // crown offset: content of a deeper region starts z*2 tracks down
  int d = 5; // wrap bound: no edge may span more than d tracks when wrapping

  /// Enforces z > j >= 1 and d >= 1; throws config_invalid otherwise.
  void validate() const;
};

struct ladder_layout {
  int track_count = 0;
  std::vector<int> track_of; // per vertex, 1-based; 0 = unplaced
  std::vector<int> pos_of;   // per vertex, dense 0-based within its track
  bool wrapped = false;
  placement_config config;

  int size() const { return static_cast<int>(track_of.size()); }

  /// Tracks materialized left-to-right: result[t-1] lists track t's vertices.
  std::vector<std::vector<vertex_id>> rows() const;

  /// Structural sanity: every vertex placed on a track in range with dense,
  /// unique positions. Throws unplaced_vertex / invariant_violation.
  void validate() const;
};

} // namespace tracklay
