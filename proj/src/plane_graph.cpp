#include "tracklay/plane_graph.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

namespace tracklay {

namespace {

// Key for marking darts visited during orbit enumeration.
inline size_t dart_key(dart d) { return static_cast<size_t>(d.e) * 2 + (d.forward ? 1 : 0); }

} // namespace

// ─────────────────────────────────────────────────────────────────────────────
// Basic accessors
// ─────────────────────────────────────────────────────────────────────────────

dart embedded_graph::dart_from(edge_id e, vertex_id from) const {
  const auto& [a, b] = edges[e];
  if (a == from) return dart{e, true};
  if (b == from) return dart{e, false};
  fail(errc::invariant_violation, "dart_from: vertex not an endpoint");
}

vertex_id embedded_graph::other_end(edge_id e, vertex_id from) const {
  const auto& [a, b] = edges[e];
  if (a == from) return b;
  if (b == from) return a;
  fail(errc::invariant_violation, "other_end: vertex not an endpoint");
}

bool embedded_graph::has_edge(vertex_id u, vertex_id v) const {
  return find_edge(u, v).has_value();
}

std::optional<edge_id> embedded_graph::find_edge(vertex_id u, vertex_id v) const {
  if (u < 0 || u >= n || v < 0 || v >= n) return std::nullopt;
  const auto& ru = rotation[u];
  const auto& rv = rotation[v];
  const auto& scan = ru.size() <= rv.size() ? ru : rv;
  vertex_id from = ru.size() <= rv.size() ? u : v;
  vertex_id to = ru.size() <= rv.size() ? v : u;
  for (edge_id e : scan)
    if (other_end(e, from) == to) return e;
  return std::nullopt;
}

std::vector<vertex_id> embedded_graph::neighbors(vertex_id v) const {
  std::vector<vertex_id> out;
  out.reserve(rotation[v].size());
  for (edge_id e : rotation[v]) out.push_back(other_end(e, v));
  return out;
}

int embedded_graph::rotation_index(vertex_id v, edge_id e) const {
  const auto& rot = rotation[v];
  for (int i = 0; i < static_cast<int>(rot.size()); ++i)
    if (rot[i] == e) return i;
  fail(errc::malformed_rotation, "edge missing from rotation");
}

dart embedded_graph::face_next(dart d) const {
  vertex_id v = head(d);
  const auto& rot = rotation[v];
  int idx = rotation_index(v, d.e);
  edge_id succ = rot[(idx + 1) % rot.size()];
  return dart_from(succ, v);
}

edge_id embedded_graph::new_edge(vertex_id u, vertex_id v) {
  edges.emplace_back(u, v);
  return static_cast<edge_id>(edges.size()) - 1;
}

void embedded_graph::rotation_insert_before(vertex_id v, edge_id anchor, edge_id e) {
  int idx = rotation_index(v, anchor);
  rotation[v].insert(rotation[v].begin() + idx, e);
}

void embedded_graph::rotation_insert_after(vertex_id v, edge_id anchor, edge_id e) {
  int idx = rotation_index(v, anchor);
  rotation[v].insert(rotation[v].begin() + idx + 1, e);
}

edge_id embedded_graph::add_edge_spliced(vertex_id u, edge_id before_u, vertex_id v,
                                         edge_id after_v) {
  edge_id e = new_edge(u, v);
  rotation_insert_before(u, before_u, e);
  rotation_insert_after(v, after_v, e);
  return e;
}

vertex_id embedded_graph::add_vertex() {
  rotation.emplace_back();
  return n++;
}

// ─────────────────────────────────────────────────────────────────────────────
// Face tracing
// ─────────────────────────────────────────────────────────────────────────────

std::vector<dart> embedded_graph::trace_face_darts(dart start) const {
  std::vector<dart> walk;
  size_t cap = edges.size() * 2 + 1;
  dart d = start;
  do {
    walk.push_back(d);
    d = face_next(d);
    require(walk.size() <= cap, errc::invariant_violation, "face orbit does not close");
  } while (!(d == start));
  return walk;
}

std::vector<vertex_id> embedded_graph::trace_face(dart start) const {
  std::vector<vertex_id> walk;
  for (dart d : trace_face_darts(start)) walk.push_back(tail(d));
  return walk;
}

std::vector<std::vector<vertex_id>> embedded_graph::all_faces() const {
  std::vector<std::vector<vertex_id>> faces;
  std::vector<char> seen(edges.size() * 2, 0);
  for (edge_id e = 0; e < static_cast<edge_id>(edges.size()); ++e) {
    for (bool fwd : {true, false}) {
      dart d{e, fwd};
      if (seen[dart_key(d)]) continue;
      auto darts = trace_face_darts(d);
      std::vector<vertex_id> walk;
      for (dart x : darts) {
        require(!seen[dart_key(x)], errc::not_planar_embedding, "dart shared by two orbits");
        seen[dart_key(x)] = 1;
        walk.push_back(tail(x));
      }
      faces.push_back(std::move(walk));
    }
  }
  return faces;
}

bool embedded_graph::is_connected() const {
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::vector<vertex_id> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    vertex_id v = stack.back();
    stack.pop_back();
    for (edge_id e : rotation[v]) {
      vertex_id w = other_end(e, v);
      if (!seen[w]) {
        seen[w] = 1;
        ++count;
        stack.push_back(w);
      }
    }
  }
  return count == n;
}

bool cyclic_equal(const std::vector<vertex_id>& a, const std::vector<vertex_id>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  size_t k = a.size();
  for (size_t shift = 0; shift < k; ++shift) {
    bool match = true;
    for (size_t i = 0; i < k; ++i) {
      if (a[(shift + i) % k] != b[i]) {
        match = false;
        break;
      }
    }
    if (match) return true;
  }
  return false;
}

void embedded_graph::validate() const {
  require(n >= 1, errc::graph_too_small, "graph has no vertices");
  require(static_cast<int>(rotation.size()) == n, errc::malformed_rotation,
          "rotation list count differs from vertex count");

  if (edges.empty()) {
    require(n == 1, errc::disconnected, "edgeless graph with several vertices");
    require(outer_face == std::vector<vertex_id>{0}, errc::outer_face_mismatch,
            "edgeless graph must declare outer face {0}");
    return;
  }

  std::set<std::pair<vertex_id, vertex_id>> seen_pairs;
  for (const auto& [u, v] : edges) {
    require(u >= 0 && u < n && v >= 0 && v < n, errc::malformed_input,
            "edge endpoint out of range");
    require(u != v, errc::malformed_input, "self-loop");
    auto key = std::minmax(u, v);
    require(seen_pairs.insert(key).second, errc::malformed_input, "parallel edges");
  }

  // Every rotation lists exactly the incident edges, each once.
  std::vector<int> expected_degree(n, 0);
  for (const auto& [u, v] : edges) {
    ++expected_degree[u];
    ++expected_degree[v];
  }
  for (vertex_id v = 0; v < n; ++v) {
    require(static_cast<int>(rotation[v].size()) == expected_degree[v],
            errc::malformed_rotation, "rotation length differs from degree");
    std::unordered_set<edge_id> seen_edges;
    for (edge_id e : rotation[v]) {
      require(e >= 0 && e < static_cast<edge_id>(edges.size()), errc::malformed_rotation,
              "rotation references unknown edge");
      require(edges[e].first == v || edges[e].second == v, errc::malformed_rotation,
              "rotation references non-incident edge");
      require(seen_edges.insert(e).second, errc::malformed_rotation,
              "edge repeated in rotation");
    }
  }

  require(is_connected(), errc::disconnected, "graph is disconnected");

  auto faces = all_faces();
  long euler = static_cast<long>(n) - static_cast<long>(edges.size()) +
               static_cast<long>(faces.size());
  require(euler == 2, errc::not_planar_embedding, "face count violates Euler's formula");

  require(!outer_face.empty(), errc::outer_face_mismatch, "outer face not declared");
  for (const auto& walk : faces)
    if (cyclic_equal(walk, outer_face)) return;
  fail(errc::outer_face_mismatch, "declared outer face is not a traced face");
}

bool embedded_graph::inner_faces_triangular() const {
  bool outer_seen = false;
  for (const auto& walk : all_faces()) {
    if (!outer_seen && cyclic_equal(walk, outer_face)) {
      outer_seen = true;
      continue;
    }
    if (walk.size() != 3) return false;
  }
  return outer_seen;
}

// ─────────────────────────────────────────────────────────────────────────────
// Triangulation
// ─────────────────────────────────────────────────────────────────────────────

triangulation_result triangulate(const embedded_graph& input) {
  input.validate();
  triangulation_result result;
  result.graph = input;
  embedded_graph& g = result.graph;

  // Collect inner face walks of the input; chords added inside one face never
  // change another face's walk, so the walks stay valid while we work.
  std::vector<std::vector<vertex_id>> inner;
  bool outer_seen = false;
  for (auto& walk : g.all_faces()) {
    if (!outer_seen && cyclic_equal(walk, g.outer_face)) {
      outer_seen = true;
      continue;
    }
    if (walk.size() > 3) inner.push_back(std::move(walk));
  }

  for (auto& walk : inner) {
    // Start the scan at the face's smallest vertex: on a simple face the clip
    // sequence below is then exactly the fan from that vertex.
    auto mn = std::min_element(walk.begin(), walk.end());
    std::rotate(walk.begin(), mn, walk.end());

    size_t guard = walk.size() * walk.size() + 8;
    while (walk.size() > 3) {
      require(guard-- > 0, errc::non_termination, "triangulation loop exceeded its cap");
      bool clipped = false;
      for (size_t i = 0; i < walk.size(); ++i) {
        size_t vi = (i + 1) % walk.size();
        vertex_id u = walk[i];
        vertex_id v = walk[vi];
        vertex_id w = walk[(i + 2) % walk.size()];
        if (u == v || v == w || u == w) continue;
        if (g.has_edge(u, w)) continue;
        // Cut the corner at v: chord u–w closes the triangle (u,v,w). The
        // chord enters rotation[u] just before {u,v} and rotation[w] just
        // after {w,v}, which splits exactly this corner off the face.
        edge_id e_uv = *g.find_edge(u, v);
        edge_id e_wv = *g.find_edge(w, v);
        edge_id chord = g.add_edge_spliced(u, e_uv, w, e_wv);
        result.added_edges.push_back(chord);
        walk.erase(walk.begin() + static_cast<long>(vi));
        clipped = true;
        break;
      }
      require(clipped, errc::no_host_face,
              "face admits no chord without creating parallel edges");
    }
  }
  return result;
}

// ─────────────────────────────────────────────────────────────────────────────
// Chord subdivision
// ─────────────────────────────────────────────────────────────────────────────

std::vector<edge_id> find_chords(const embedded_graph& g,
                                 const std::vector<vertex_id>& cycle) {
  std::unordered_map<vertex_id, int> pos;
  for (int i = 0; i < static_cast<int>(cycle.size()); ++i) {
    require(pos.emplace(cycle[i], i).second, errc::invariant_violation,
            "cycle repeats a vertex");
  }
  int k = static_cast<int>(cycle.size());
  std::vector<edge_id> chords;
  for (edge_id e = 0; e < static_cast<edge_id>(g.edges.size()); ++e) {
    auto iu = pos.find(g.edges[e].first);
    auto iv = pos.find(g.edges[e].second);
    if (iu == pos.end() || iv == pos.end()) continue;
    int gap = std::abs(iu->second - iv->second);
    if (gap != 1 && gap != k - 1) chords.push_back(e);
  }
  return chords;
}

namespace {

struct host_candidate {
  int score = 9;      // lower is better; 9 = unusable
  vertex_id w = -1;   // anchor vertex inside the face
  bool left_of_uv = false;
  std::vector<dart> walk;
};

host_candidate assess_host(const embedded_graph& g, dart side,
                           const std::unordered_set<vertex_id>& on_cycle,
                           vertex_id u, vertex_id v, bool left_of_uv) {
  host_candidate c;
  c.left_of_uv = left_of_uv;
  c.walk = g.trace_face_darts(side);

  std::vector<vertex_id> others;
  for (dart d : c.walk) {
    vertex_id t = g.tail(d);
    if (t != u && t != v) others.push_back(t);
  }
  std::sort(others.begin(), others.end());
  others.erase(std::unique(others.begin(), others.end()), others.end());
  if (others.empty()) return c;

  bool triangle = c.walk.size() == 3;
  vertex_id best_off = -1;
  for (vertex_id t : others)
    if (!on_cycle.count(t)) {
      best_off = t;
      break;
    }

  if (triangle && best_off >= 0) {
    c.score = 0;
    c.w = best_off;
  } else if (!triangle && best_off >= 0) {
    c.score = 1;
    c.w = best_off;
  } else if (triangle) {
    c.score = 2;
    c.w = others.front();
  } else {
    c.score = 3;
    c.w = others.front();
  }
  return c;
}

} // namespace

subdivision_result subdivide_chords(const embedded_graph& input,
                                    const std::vector<vertex_id>& cycle) {
  subdivision_result result;
  result.graph = input;
  embedded_graph& g = result.graph;

  std::unordered_set<vertex_id> on_cycle(cycle.begin(), cycle.end());
  size_t guard = find_chords(g, cycle).size() + 2;

  while (true) {
    auto chords = find_chords(g, cycle);
    if (chords.empty()) break;
    require(guard-- > 0, errc::non_termination, "chord subdivision failed to converge");

    edge_id c = chords.front();
    vertex_id u = g.edges[c].first;
    vertex_id v = g.edges[c].second;

    // Pick the face that will host the new vertex's anchor. Triangles with an
    // off-cycle apex win; then any face with an off-cycle vertex; then
    // triangles with an on-cycle apex; then anything with a third vertex.
    host_candidate a = assess_host(g, dart{c, true}, on_cycle, u, v, true);
    host_candidate b = assess_host(g, dart{c, false}, on_cycle, u, v, false);
    const host_candidate& host =
        std::tie(a.score, a.w) <= std::tie(b.score, b.w) ? a : b;
    require(host.score < 9, errc::no_host_face, "chord has no usable incident face");
    vertex_id w = host.w;

    // Replace the chord u–v with the path u–w'–v and anchor w' to w. The
    // chord's id is reused for the u-side path edge so rotations at u keep
    // their slot; the v-side slot is rewritten to the fresh edge.
    vertex_id wp = g.add_vertex();
    g.edges[c] = {u, wp};
    edge_id e2 = g.new_edge(wp, v);
    g.rotation[v][g.rotation_index(v, c)] = e2;
    // rotation_index above: slot still holds the old chord id, now edge u–w'.

    edge_id e3 = g.new_edge(w, wp);
    if (host.left_of_uv)
      g.rotation[wp] = {c, e3, e2};
    else
      g.rotation[wp] = {e2, e3, c};

    // Splice the anchor at w: find w's first visit in the host walk and put
    // the anchor right after the edge that walk enters w through, which aims
    // it into the host face.
    bool spliced = false;
    for (dart d : host.walk) {
      if (g.head(d) == w) {
        g.rotation_insert_after(w, d.e, e3);
        spliced = true;
        break;
      }
    }
    require(spliced, errc::invariant_violation, "anchor vertex missing from host walk");

    result.map.split_vertex_origin[wp] = c;
    result.map.replacement_edges[wp] = {c, e2};
    result.map.anchor_edges[wp] = e3;
    ++result.chords_removed;
  }
  return result;
}

} // namespace tracklay
