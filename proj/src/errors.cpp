#include "tracklay/errors.hpp"

namespace tracklay {

const char* errc_name(errc code) {
  switch (code) {
    case errc::malformed_input: return "malformed input";
    case errc::malformed_rotation: return "malformed rotation";
    case errc::not_planar_embedding: return "not a planar embedding";
    case errc::outer_face_mismatch: return "outer face mismatch";
    case errc::graph_too_small: return "graph too small";
    case errc::graph_too_large: return "graph too large";
    case errc::disconnected: return "graph disconnected";
    case errc::not_triangulated: return "graph not triangulated";
    case errc::no_host_face: return "no host face";
    case errc::root_not_found: return "root not found";
    case errc::orphan_vertex: return "orphan vertex";
    case errc::decomposition_error: return "decomposition error";
    case errc::non_termination: return "iteration cap exceeded";
    case errc::config_invalid: return "invalid configuration";
    case errc::ledger_mismatch: return "edge ledger mismatch";
    case errc::distance_exceeds_bound: return "track distance exceeds bound";
    case errc::unplaced_vertex: return "unplaced vertex";
    case errc::invariant_violation: return "invariant violation";
  }
  return "unknown error";
}

} // namespace tracklay
