#pragma once

#include <stdexcept>
#include <string>

namespace tracklay {

// ─────────────────────────────────────────────────────────────────────────────
// Error taxonomy
// ─────────────────────────────────────────────────────────────────────────────

enum class errc {
  malformed_input,        // unreadable / inconsistent input data
  malformed_rotation,     // rotation lists disagree with the edge list
  not_planar_embedding,   // face orbits violate Euler's formula
  outer_face_mismatch,    // declared outer face is not a traced orbit
  graph_too_small,        // below the minimum size a stage supports
  graph_too_large,        // above the maximum size an exhaustive stage supports
  disconnected,           // stage requires a connected graph
  not_triangulated,       // inner faces must all be triangles
  no_host_face,           // no face available to host a subdivision vertex
  root_not_found,         // region root missing from the host tree
  orphan_vertex,          // vertex left without an upper neighbor
  decomposition_error,    // internal decomposition invariant broke
  non_termination,        // iteration cap exceeded (safety valve)
  config_invalid,         // layout parameters out of range
  ledger_mismatch,        // removed-edge bookkeeping does not add up
  distance_exceeds_bound, // edge spans more tracks than the wrap allows
  unplaced_vertex,        // placement finished with a vertex unassigned
  invariant_violation     // catch-all for broken internal invariants
};

const char* errc_name(errc code);

/// Exception carrying a machine-readable code alongside the message.
struct error : std::runtime_error {
  errc code;

  error(errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code(c) {}
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

/// Throws invariant_violation unless `cond` holds. Used for internal
/// consistency checks that should never fire on valid pipelines.
inline void require(bool cond, errc c, const std::string& what) {
  if (!cond) fail(c, what);
}

} // namespace tracklay
