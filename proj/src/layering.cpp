#include "tracklay/layering.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

namespace tracklay {

const char* edge_class_name(edge_class c) {
  switch (c) {
    case edge_class::kept: return "kept";
    case edge_class::wire: return "wire";
    case edge_class::pile: return "pile";
    case edge_class::bridge: return "bridge";
  }
  return "?";
}

bool composite_layerlike::key_less(const order_key& a, const order_key& b) {
  return a < b; // lexicographic; a proper prefix compares smaller
}

std::vector<vertex_id> composite_layerlike::layer_in_order(int layer_no) const {
  std::vector<vertex_id> out;
  for (vertex_id v = 0; v < graph.n; ++v)
    if (layer[v] == layer_no) out.push_back(v);
  std::sort(out.begin(), out.end(),
            [&](vertex_id a, vertex_id b) { return key_less(key[a], key[b]); });
  return out;
}

namespace {

// ─────────────────────────────────────────────────────────────────────────────
// Block decomposition (biconnected components) of an induced subgraph
// ─────────────────────────────────────────────────────────────────────────────

struct block_decomp {
  std::vector<std::vector<edge_id>> block_edges;
  std::unordered_map<edge_id, int> edge_block;
  std::vector<std::vector<vertex_id>> block_vertices; // sorted, unique
};

block_decomp decompose_blocks(const embedded_graph& g,
                              const std::vector<vertex_id>& comp,
                              const std::unordered_set<vertex_id>& in_comp) {
  block_decomp out;
  std::unordered_map<vertex_id, int> disc, low;
  std::vector<edge_id> estack;
  int timer = 0;

  struct frame {
    vertex_id u;
    edge_id parent_edge;
    size_t next_idx;
  };

  for (vertex_id root : comp) {
    if (disc.count(root)) continue;
    std::vector<frame> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      frame& f = stack.back();
      const auto& rot = g.rotation[f.u];
      if (f.next_idx < rot.size()) {
        edge_id e = rot[f.next_idx++];
        if (e == f.parent_edge) continue;
        vertex_id v = g.other_end(e, f.u);
        if (!in_comp.count(v)) continue;
        auto it = disc.find(v);
        if (it == disc.end()) {
          estack.push_back(e);
          disc[v] = low[v] = timer++;
          stack.push_back({v, e, 0});
        } else if (it->second < disc[f.u]) {
          estack.push_back(e);
          low[f.u] = std::min(low[f.u], it->second);
        }
      } else {
        vertex_id u = f.u;
        edge_id pe = f.parent_edge;
        stack.pop_back();
        if (stack.empty()) break;
        vertex_id p = stack.back().u;
        low[p] = std::min(low[p], low[u]);
        if (low[u] >= disc[p]) {
          int b = static_cast<int>(out.block_edges.size());
          out.block_edges.emplace_back();
          while (true) {
            require(!estack.empty(), errc::decomposition_error, "edge stack underflow");
            edge_id t = estack.back();
            estack.pop_back();
            out.block_edges[b].push_back(t);
            out.edge_block[t] = b;
            if (t == pe) break;
          }
        }
      }
    }
  }

  out.block_vertices.resize(out.block_edges.size());
  for (size_t b = 0; b < out.block_edges.size(); ++b) {
    auto& verts = out.block_vertices[b];
    for (edge_id e : out.block_edges[b]) {
      verts.push_back(g.edges[e].first);
      verts.push_back(g.edges[e].second);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  }
  return out;
}

// ─────────────────────────────────────────────────────────────────────────────
// Reform driver
// ─────────────────────────────────────────────────────────────────────────────

struct reformer {
  composite_layerlike c;
  std::vector<std::unordered_set<vertex_id>> content; // per host
  std::map<vertex_id, std::uint32_t> group_counter;   // key groups per pivot
  std::deque<int> queue;

  embedded_graph& g() { return c.graph; }

  bool placed(vertex_id v) const { return c.layer[v] > 0; }

  // Next dart of the face around a vertex-filtered subgraph: at the head of
  // `d`, the first edge clockwise after d's edge whose far end satisfies
  // `allow` continues the walk. Traces the subgraph's face lying left of `d`.
  template <typename Allow>
  dart filtered_next(dart d, Allow&& allow) const {
    vertex_id v = c.graph.head(d);
    const auto& rot = c.graph.rotation[v];
    int idx = c.graph.rotation_index(v, d.e);
    int deg = static_cast<int>(rot.size());
    for (int k = 1; k <= deg; ++k) {
      edge_id e = rot[(idx + k) % deg];
      if (allow(e, c.graph.other_end(e, v))) return c.graph.dart_from(e, v);
    }
    fail(errc::decomposition_error, "filtered walk has nowhere to continue");
  }

  template <typename Allow>
  std::vector<dart> filtered_orbit(dart start, Allow&& allow) const {
    std::vector<dart> walk;
    size_t cap = c.graph.edges.size() * 2 + 2;
    dart d = start;
    do {
      walk.push_back(d);
      d = filtered_next(d, allow);
      require(walk.size() <= cap, errc::non_termination, "filtered face does not close");
    } while (!(d == start));
    return walk;
  }

  void assign(vertex_id v, int layer_no, const order_key& k) {
    require(c.layer[v] == 0, errc::invariant_violation, "vertex placed twice");
    c.layer[v] = layer_no;
    c.key[v] = k;
    c.layer_count = std::max(c.layer_count, layer_no);
  }

  int new_host(int parent, bool pocket, vertex_id pivot, std::vector<vertex_id> boundary,
               int content_layer, std::unordered_set<vertex_id> verts) {
    int id = static_cast<int>(c.hosts.size());
    host_rec h;
    h.id = id;
    h.parent = parent;
    h.pocket = pocket;
    h.pivot = pivot;
    h.boundary = std::move(boundary);
    h.content_layer = content_layer;
    c.hosts.push_back(std::move(h));
    content.push_back(std::move(verts));
    queue.push_back(id);
    return id;
  }

  void run(const embedded_graph& input);
  void process_host(int h);
};

// Rotates `walk` so it starts at the first occurrence of `v`.
void rotate_to(std::vector<vertex_id>& walk, vertex_id v) {
  auto it = std::find(walk.begin(), walk.end(), v);
  require(it != walk.end(), errc::invariant_violation, "rotate_to: vertex not on walk");
  std::rotate(walk.begin(), it, walk.end());
}

void reformer::run(const embedded_graph& input) {
  input.validate();
  require(input.n >= 3, errc::graph_too_small, "need at least a triangle");
  require(input.inner_faces_triangular(), errc::not_triangulated,
          "inner faces must be triangles");
  {
    std::set<vertex_id> uniq(input.outer_face.begin(), input.outer_face.end());
    require(uniq.size() == input.outer_face.size(), errc::not_triangulated,
            "outer face must be a simple cycle");
  }

  c.graph = input;
  c.layer.assign(input.n, 0);
  c.key.assign(input.n, {});
  c.eclass.assign(input.edges.size(), edge_class::kept);

  // Layer 1 is the outer cycle, read from its smallest vertex; that vertex
  // also serves as the root pivot.
  std::vector<vertex_id> boundary = input.outer_face;
  rotate_to(boundary, *std::min_element(boundary.begin(), boundary.end()));
  for (std::uint32_t i = 0; i < boundary.size(); ++i)
    assign(boundary[i], 1, order_key{i});

  std::unordered_set<vertex_id> interior;
  for (vertex_id v = 0; v < input.n; ++v)
    if (c.layer[v] == 0) interior.insert(v);

  new_host(-1, false, boundary[0], boundary, 2, std::move(interior));

  size_t guard = static_cast<size_t>(input.n) * 8 + 64;
  while (!queue.empty()) {
    require(guard-- > 0, errc::non_termination, "host queue did not drain");
    int h = queue.front();
    queue.pop_front();
    process_host(h);
  }
}

void reformer::process_host(int h) {
  // ── chord elimination ──
  // Boundary chords would put two same-layer vertices at odds with the disk
  // recursion, so each chord is split by a fresh interior vertex first.
  if (!c.hosts[h].pocket) {
    auto sres = subdivide_chords(c.graph, c.hosts[h].boundary);
    if (sres.chords_removed > 0) {
      c.graph = std::move(sres.graph);
      c.eclass.resize(c.graph.edges.size(), edge_class::kept);
      c.layer.resize(c.graph.n, 0);
      c.key.resize(c.graph.n, {});
      for (const auto& [wp, origin] : sres.map.split_vertex_origin) {
        content[h].insert(wp);
        c.submap.split_vertex_origin[wp] = origin;
        c.submap.replacement_edges[wp] = sres.map.replacement_edges.at(wp);
        c.submap.anchor_edges[wp] = sres.map.anchor_edges.at(wp);
      }
    }
  }

  const vertex_id pivot = c.hosts[h].pivot;
  const int CL = c.hosts[h].content_layer;
  const std::vector<vertex_id> boundary = c.hosts[h].boundary;
  std::unordered_set<vertex_id>& verts = content[h];
  require(placed(pivot), errc::root_not_found, "host pivot has no layer yet");

  if (verts.empty()) return;

  // ── anchor scan ──
  // The pivot's edges into the content, in clockwise order within the angular
  // arc facing the content. The boundary walk keeps content on its right, so
  // at each pivot occurrence that arc runs from just after the edge toward
  // the walk successor around to the edge toward the walk predecessor.
  std::vector<vertex_id> anchors;
  std::vector<edge_id> anchor_edges;
  {
    const auto& rot = c.graph.rotation[pivot];
    size_t L = boundary.size();
    for (size_t occ = 0; occ < L; ++occ) {
      if (boundary[occ] != pivot) continue;
      vertex_id succ = boundary[(occ + 1) % L];
      vertex_id pred = boundary[(occ + L - 1) % L];
      auto oe_s = c.graph.find_edge(pivot, succ);
      auto oe_p = c.graph.find_edge(pivot, pred);
      require(oe_s && oe_p, errc::invariant_violation, "boundary walk is not edge-connected");
      int start = c.graph.rotation_index(pivot, *oe_s);
      int deg = static_cast<int>(rot.size());
      for (int k = 1; k < deg; ++k) {
        edge_id e = rot[(start + k) % deg];
        if (e == *oe_p && *oe_p != *oe_s) break;
        vertex_id z = c.graph.other_end(e, pivot);
        if (verts.count(z)) {
          anchors.push_back(z);
          anchor_edges.push_back(e);
        }
      }
    }
    std::set<vertex_id> uniq(anchors.begin(), anchors.end());
    require(uniq.size() == anchors.size(), errc::decomposition_error,
            "anchor collected twice");
  }

  // ── connected components of the content ──
  std::unordered_map<vertex_id, int> comp_of;
  std::vector<std::vector<vertex_id>> comp_verts;
  {
    std::vector<vertex_id> order(verts.begin(), verts.end());
    std::sort(order.begin(), order.end());
    for (vertex_id s : order) {
      if (comp_of.count(s)) continue;
      int id = static_cast<int>(comp_verts.size());
      comp_verts.emplace_back();
      std::vector<vertex_id> bfs{s};
      comp_of[s] = id;
      while (!bfs.empty()) {
        vertex_id u = bfs.back();
        bfs.pop_back();
        comp_verts[id].push_back(u);
        for (edge_id e : c.graph.rotation[u]) {
          vertex_id w = c.graph.other_end(e, u);
          if (verts.count(w) && !comp_of.count(w)) {
            comp_of[w] = id;
            bfs.push_back(w);
          }
        }
      }
      std::sort(comp_verts[id].begin(), comp_verts[id].end());
    }
  }

  // Components adjacent to the pivot, in first-anchor order; the rest are
  // hidden behind them and go to pockets.
  std::vector<int> adjacent_comps;
  {
    std::set<int> seen;
    for (vertex_id z : anchors) {
      int ci = comp_of.at(z);
      if (seen.insert(ci).second) adjacent_comps.push_back(ci);
    }
  }

  struct bead_meta {
    int unit_idx; // index into c.units
    std::vector<vertex_id> cycle;
    vertex_id v1;
  };
  std::vector<bead_meta> beads_here;

  // ── contours, units, bridges ──
  for (size_t local = 0; local < adjacent_comps.size(); ++local) {
    int ci = adjacent_comps[local];
    const auto& X = comp_verts[ci];
    std::unordered_set<vertex_id> in_X(X.begin(), X.end());

    std::vector<vertex_id> anchors_X;
    for (vertex_id z : anchors)
      if (comp_of.at(z) == ci) anchors_X.push_back(z);

    std::uint32_t group = group_counter[pivot]++;
    std::uint32_t emit_idx = 0;
    order_key base = c.key[pivot];
    auto emit = [&](vertex_id v) {
      order_key k = base;
      k.push_back(group);
      k.push_back(emit_idx++);
      assign(v, CL, k);
    };

    auto new_unit = [&](bool bead) -> unit_rec& {
      unit_rec u;
      u.id = static_cast<int>(c.units.size());
      u.host = h;
      u.comp = static_cast<int>(local);
      u.bead = bead;
      c.units.push_back(std::move(u));
      c.hosts[h].units.push_back(c.units.back().id);
      return c.units.back();
    };

    if (X.size() == 1) {
      // Lone vertex hanging off the pivot.
      unit_rec& u = new_unit(false);
      u.run.push_back(X[0]);
      emit(X[0]);
      continue;
    }

    // Outer contour of the component: start at the first anchor's first
    // content edge clockwise past the pivot edge, which faces the gap between
    // component and pivot, then trace with the component interior on the right.
    vertex_id z1 = anchors_X.front();
    dart d0;
    {
      const auto& rot = c.graph.rotation[z1];
      edge_id em = *c.graph.find_edge(z1, pivot);
      int idx = c.graph.rotation_index(z1, em);
      int deg = static_cast<int>(rot.size());
      edge_id e0 = -1;
      for (int k = 1; k <= deg; ++k) {
        edge_id e = rot[(idx + k) % deg];
        if (in_X.count(c.graph.other_end(e, z1))) {
          e0 = e;
          break;
        }
      }
      require(e0 >= 0, errc::decomposition_error, "anchor has no component edge");
      d0 = c.graph.dart_from(e0, z1);
    }
    auto in_comp_edge = [&](edge_id, vertex_id far) { return in_X.count(far) > 0; };
    std::vector<dart> contour = filtered_orbit(d0, in_comp_edge);

    // Cut edges show up twice (once per direction); those that sit between
    // two placed stretches are dropped to the ledger as bridges. An edge to a
    // leaf stays: the leaf is placed right next to its support.
    std::map<edge_id, int> traversals;
    for (dart d : contour) ++traversals[d.e];
    auto x_degree = [&](vertex_id v) {
      int deg = 0;
      for (edge_id e : c.graph.rotation[v])
        if (in_X.count(c.graph.other_end(e, v))) ++deg;
      return deg;
    };
    for (const auto& [e, cnt] : traversals) {
      if (cnt < 2) continue;
      auto [a, b] = c.graph.edges[e];
      if (x_degree(a) >= 2 && x_degree(b) >= 2) {
        c.eclass[e] = edge_class::bridge;
        c.removed.push_back({e, edge_class::bridge, h, static_cast<int>(local)});
      }
    }

    block_decomp blocks = decompose_blocks(c.graph, X, in_X);

    // Bead = a contour block that contains a cycle. Its boundary cycle is the
    // block-filtered face seeded from the contour's first dart in the block.
    std::unordered_map<int, std::vector<vertex_id>> bead_cycle;
    for (dart d : contour) {
      int b = blocks.edge_block.at(d.e);
      if (blocks.block_edges[b].size() < 2 || bead_cycle.count(b)) continue;
      auto in_block = [&](edge_id e, vertex_id) {
        auto it = blocks.edge_block.find(e);
        return it != blocks.edge_block.end() && it->second == b;
      };
      std::vector<vertex_id> cyc;
      for (dart x : filtered_orbit(d, in_block)) cyc.push_back(c.graph.tail(x));
      std::set<vertex_id> uniq(cyc.begin(), cyc.end());
      require(uniq.size() == cyc.size(), errc::decomposition_error,
              "bead boundary is not a simple cycle");
      bead_cycle[b] = std::move(cyc);
    }

    // First placed vertex of a bead: the anchor that opens the widest
    // anchor-free stretch of its cycle, so the far side is walked first.
    auto pick_v1 = [&](const std::vector<vertex_id>& cyc) -> vertex_id {
      std::unordered_set<vertex_id> anchor_set(anchors_X.begin(), anchors_X.end());
      std::vector<int> ps;
      for (int i = 0; i < static_cast<int>(cyc.size()); ++i)
        if (anchor_set.count(cyc[i])) ps.push_back(i);
      if (ps.empty()) return cyc.front();
      int k = static_cast<int>(ps.size());
      int n = static_cast<int>(cyc.size());
      int best = 0, best_gap = -1;
      for (int i = 0; i < k; ++i) {
        int gap = (ps[(i + 1) % k] - ps[i] + n) % n;
        if (gap == 0) gap = n; // single anchor: the whole cycle
        if (gap > best_gap) {
          best_gap = gap;
          best = i;
        }
      }
      return cyc[ps[best]];
    };

    std::unordered_set<vertex_id> done;
    std::unordered_set<int> visited_blocks;
    std::vector<vertex_id> open_loose;
    auto flush_loose = [&]() {
      if (open_loose.empty()) return;
      unit_rec& u = new_unit(false);
      u.run = open_loose;
      open_loose.clear();
    };

    for (dart d : contour) {
      int b = blocks.edge_block.at(d.e);
      bool is_bead = bead_cycle.count(b) > 0;
      if (is_bead && !visited_blocks.count(b)) {
        visited_blocks.insert(b);
        flush_loose();
        std::vector<vertex_id> cyc = bead_cycle[b];
        vertex_id v1 = pick_v1(cyc);
        rotate_to(cyc, v1);
        unit_rec& u = new_unit(true);
        for (vertex_id v : cyc)
          if (!done.count(v)) {
            u.run.push_back(v);
            done.insert(v);
          }
        require(!u.run.empty(), errc::decomposition_error, "bead placed nothing");
        beads_here.push_back({u.id, cyc, v1});
      } else if (!is_bead) {
        vertex_id t = c.graph.tail(d);
        if (!done.count(t)) {
          done.insert(t);
          open_loose.push_back(t);
        }
      }
    }
    flush_loose();

    // Emission order = unit order; keys follow it.
    for (int uid : c.hosts[h].units) {
      const unit_rec& u = c.units[uid];
      if (u.comp != static_cast<int>(local)) continue;
      for (vertex_id v : u.run)
        if (c.layer[v] == 0) emit(v);
    }
  }

  // ── wires and piles ──
  // Every pivot-to-content edge leaves the embedding's class `kept`: spanning
  // a layer step it becomes a wire, staying inside one layer a pile.
  for (size_t i = 0; i < anchor_edges.size(); ++i) {
    edge_id e = anchor_edges[i];
    vertex_id z = anchors[i];
    require(c.layer[z] == CL, errc::invariant_violation, "anchor missed placement");
    int delta = CL - c.layer[pivot];
    require(delta == 0 || delta == 1, errc::decomposition_error,
            "pivot more than one layer above its content");
    edge_class cls = delta == 1 ? edge_class::wire : edge_class::pile;
    c.eclass[e] = cls;
    c.removed.push_back({e, cls, h, comp_of.count(z) ? comp_of.at(z) : -1});
  }

  // ── dummy repair ──
  // A placed vertex whose only upper connections were wires needs a stand-in
  // upper edge. It borrows the nearest sibling's upper neighbor on the facing
  // side; a fully orphaned unit falls back to the lowest-key boundary vertex
  // one layer up.
  auto kept_up_neighbors = [&](vertex_id v) {
    std::vector<vertex_id> ups;
    for (edge_id e : c.graph.rotation[v]) {
      if (c.eclass[e] != edge_class::kept) continue;
      vertex_id y = c.graph.other_end(e, v);
      if (c.layer[y] > 0 && c.layer[y] == c.layer[v] - 1) ups.push_back(y);
    }
    std::sort(ups.begin(), ups.end(), [&](vertex_id a, vertex_id b) {
      return composite_layerlike::key_less(c.key[a], c.key[b]);
    });
    return ups;
  };
  vertex_id fallback_upper = -1;
  for (vertex_id b : boundary)
    if (c.layer[b] == CL - 1 &&
        (fallback_upper < 0 ||
         composite_layerlike::key_less(c.key[b], c.key[fallback_upper])))
      fallback_upper = b;

  for (int uid : c.hosts[h].units) {
    const unit_rec& u = c.units[uid];
    int R = static_cast<int>(u.run.size());
    std::vector<std::vector<vertex_id>> ups(R);
    std::vector<int> support;
    for (int i = 0; i < R; ++i) {
      ups[i] = kept_up_neighbors(u.run[i]);
      if (!ups[i].empty()) support.push_back(i);
    }
    for (int i = 0; i < R; ++i) {
      if (!ups[i].empty()) continue;
      vertex_id upper = -1;
      if (!support.empty()) {
        int s = support.front();
        for (int cand : support)
          if (std::abs(cand - i) < std::abs(s - i)) s = cand;
        upper = i < s ? ups[s].front() : ups[s].back();
      } else {
        require(fallback_upper >= 0, errc::orphan_vertex,
                "no upper layer vertex available for dummy edge");
        upper = fallback_upper;
      }
      c.dummies.push_back({upper, u.run[i], h});
    }
  }

  // ── pockets ──
  // Components invisible to the pivot sit inside faces of what is now placed
  // and kept. Each such face becomes a host of its own.
  std::vector<int> buried;
  for (int ci = 0; ci < static_cast<int>(comp_verts.size()); ++ci)
    if (std::find(adjacent_comps.begin(), adjacent_comps.end(), ci) ==
        adjacent_comps.end())
      buried.push_back(ci);

  struct pocket_acc {
    std::vector<vertex_id> walk;
    std::vector<int> comps;
    std::vector<vertex_id> attachments; // placed endpoints, with duplicates
  };
  std::vector<pocket_acc> pockets;
  std::map<std::pair<edge_id, bool>, int> pocket_by_face;

  auto placed_kept = [&](edge_id e, vertex_id far) {
    (void)far;
    return c.eclass[e] == edge_class::kept && placed(c.graph.edges[e].first) &&
           placed(c.graph.edges[e].second);
  };

  for (int ci : buried) {
    // Deterministic seed: the lexicographically first (content vertex,
    // placed neighbor) attachment pair.
    vertex_id y0 = -1, b0 = -1;
    edge_id eb = -1;
    std::vector<vertex_id> attach;
    for (vertex_id y : comp_verts[ci]) {
      for (edge_id e : c.graph.rotation[y]) {
        vertex_id b = c.graph.other_end(e, y);
        if (!placed(b)) continue;
        attach.push_back(b);
        if (y0 < 0 || std::make_pair(y, b) < std::make_pair(y0, b0)) {
          y0 = y;
          b0 = b;
          eb = e;
        }
      }
    }
    require(y0 >= 0, errc::decomposition_error, "buried component has no attachment");

    // The face of the placed-and-kept subgraph that contains this component:
    // seeded at the attachment, aimed into the gap the component sits in.
    dart seed;
    {
      const auto& rot = c.graph.rotation[b0];
      int idx = c.graph.rotation_index(b0, eb);
      int deg = static_cast<int>(rot.size());
      edge_id e0 = -1;
      for (int k = 1; k <= deg; ++k) {
        edge_id e = rot[(idx + k) % deg];
        if (placed_kept(e, -1)) {
          e0 = e;
          break;
        }
      }
      require(e0 >= 0, errc::decomposition_error, "attachment vertex has no kept edge");
      seed = c.graph.dart_from(e0, b0);
    }
    std::vector<dart> orbit = filtered_orbit(seed, placed_kept);
    std::pair<edge_id, bool> face_key{orbit.front().e, orbit.front().forward};
    for (dart d : orbit) face_key = std::min(face_key, {d.e, d.forward});

    auto it = pocket_by_face.find(face_key);
    int pi;
    if (it == pocket_by_face.end()) {
      pi = static_cast<int>(pockets.size());
      pocket_by_face[face_key] = pi;
      pockets.emplace_back();
      for (dart d : orbit) pockets[pi].walk.push_back(c.graph.tail(d));
      // The traced face sits left of the walk; hosts keep content on the
      // right, so flip the direction.
      std::reverse(pockets[pi].walk.begin(), pockets[pi].walk.end());
    } else {
      pi = it->second;
    }
    pockets[pi].comps.push_back(ci);
    pockets[pi].attachments.insert(pockets[pi].attachments.end(), attach.begin(),
                                   attach.end());
  }

  // ── child hosts ──
  // Bead interiors first, in unit order; then pockets.
  std::unordered_set<vertex_id> on_contour;
  for (int uid : c.hosts[h].units)
    for (vertex_id v : c.units[uid].run) on_contour.insert(v);

  // Leftover vertices live strictly inside exactly one bead cycle; find it by
  // checking which cycle's interior arc their attachment edge leaves through.
  std::unordered_map<int, std::unordered_set<vertex_id>> bead_content; // unit -> verts
  {
    std::unordered_map<vertex_id, std::vector<int>> beads_at; // cycle vertex -> bead idx
    for (int bi = 0; bi < static_cast<int>(beads_here.size()); ++bi)
      for (vertex_id v : beads_here[bi].cycle) beads_at[v].push_back(bi);

    auto inside_bead = [&](int bi, vertex_id cyc_v, edge_id down_edge) {
      const auto& cyc = beads_here[bi].cycle;
      int n = static_cast<int>(cyc.size());
      int at = static_cast<int>(std::find(cyc.begin(), cyc.end(), cyc_v) - cyc.begin());
      vertex_id prev = cyc[(at + n - 1) % n];
      vertex_id next = cyc[(at + 1) % n];
      edge_id e_in = *c.graph.find_edge(prev, cyc_v);
      edge_id e_out = *c.graph.find_edge(cyc_v, next);
      // The cycle keeps its interior on the right of the walk, which puts the
      // interior fan of edges clockwise between the outgoing and incoming side.
      const auto& rot = c.graph.rotation[cyc_v];
      int idx = c.graph.rotation_index(cyc_v, e_out);
      int deg = static_cast<int>(rot.size());
      for (int k = 1; k < deg; ++k) {
        edge_id e = rot[(idx + k) % deg];
        if (e == e_in) return false;
        if (e == down_edge) return true;
      }
      return false;
    };

    std::unordered_set<vertex_id> leftover;
    for (const auto& [v, ci] : comp_of)
      if (!on_contour.count(v) &&
          std::find(buried.begin(), buried.end(), ci) == buried.end())
        leftover.insert(v);
    // Components of the leftover set, each assigned to its enclosing bead.
    std::vector<vertex_id> order(leftover.begin(), leftover.end());
    std::sort(order.begin(), order.end());
    std::unordered_set<vertex_id> seen;
    for (vertex_id s : order) {
      if (seen.count(s)) continue;
      std::vector<vertex_id> comp{s};
      seen.insert(s);
      for (size_t qi = 0; qi < comp.size(); ++qi)
        for (edge_id e : c.graph.rotation[comp[qi]]) {
          vertex_id w = c.graph.other_end(e, comp[qi]);
          if (leftover.count(w) && !seen.count(w)) {
            seen.insert(w);
            comp.push_back(w);
          }
        }
      // Attachment into a bead cycle.
      int owner = -1;
      for (vertex_id y : comp) {
        for (edge_id e : c.graph.rotation[y]) {
          vertex_id cv = c.graph.other_end(e, y);
          auto it = beads_at.find(cv);
          if (it == beads_at.end()) continue;
          for (int bi : it->second)
            if (inside_bead(bi, cv, e)) {
              owner = bi;
              break;
            }
          if (owner >= 0) break;
        }
        if (owner >= 0) break;
      }
      require(owner >= 0, errc::decomposition_error,
              "interior component matches no bead cycle");
      auto& dst = bead_content[beads_here[owner].unit_idx];
      dst.insert(comp.begin(), comp.end());
    }
  }

  for (const auto& bm : beads_here) {
    std::unordered_set<vertex_id> sub = bead_content.count(bm.unit_idx)
                                            ? bead_content[bm.unit_idx]
                                            : std::unordered_set<vertex_id>{};
    if (sub.empty() && bm.cycle.size() == 3) continue; // nothing can hide in here
    std::vector<vertex_id> cyc = bm.cycle;
    rotate_to(cyc, bm.v1);
    int id = new_host(h, false, bm.v1, cyc, CL + 1, std::move(sub));
    c.units[bm.unit_idx].sub_host = id;
  }

  for (const auto& p : pockets) {
    // Pocket pivot: the deepest attachment endpoint, lowest key on ties.
    vertex_id pv = -1;
    for (vertex_id b : p.attachments) {
      if (pv < 0 || c.layer[b] > c.layer[pv] ||
          (c.layer[b] == c.layer[pv] &&
           composite_layerlike::key_less(c.key[b], c.key[pv])))
        pv = b;
    }
    require(pv >= 0, errc::decomposition_error, "pocket without attachments");
    std::vector<vertex_id> walk = p.walk;
    rotate_to(walk, pv);
    int min_layer = c.layer[walk[0]];
    for (vertex_id v : walk) min_layer = std::min(min_layer, c.layer[v]);
    std::unordered_set<vertex_id> sub;
    for (int ci : p.comps) sub.insert(comp_verts[ci].begin(), comp_verts[ci].end());
    int id = new_host(h, true, pv, walk, min_layer + 1, std::move(sub));
    c.hosts[h].pockets.push_back(id);
  }
}

} // namespace

composite_layerlike reform(const embedded_graph& triangulated) {
  reformer r;
  r.run(triangulated);
  return std::move(r.c);
}

// ─────────────────────────────────────────────────────────────────────────────
// Invariant checks
// ─────────────────────────────────────────────────────────────────────────────

void validate_layerlike(const composite_layerlike& c) {
  const embedded_graph& g = c.graph;
  require(static_cast<int>(c.layer.size()) == g.n &&
              static_cast<int>(c.key.size()) == g.n,
          errc::invariant_violation, "per-vertex arrays sized wrong");
  require(c.eclass.size() == g.edges.size(), errc::invariant_violation,
          "per-edge class array sized wrong");

  // Layers: everyone placed; layer 1 is exactly the root boundary.
  for (vertex_id v = 0; v < g.n; ++v)
    require(c.layer[v] >= 1 && c.layer[v] <= c.layer_count, errc::unplaced_vertex,
            "vertex missing a layer");
  require(!c.hosts.empty(), errc::invariant_violation, "no hosts");
  {
    std::set<vertex_id> root(c.hosts[0].boundary.begin(), c.hosts[0].boundary.end());
    for (vertex_id v = 0; v < g.n; ++v)
      require((c.layer[v] == 1) == (root.count(v) > 0), errc::invariant_violation,
              "layer 1 differs from the root boundary");
  }

  // Keys: unique, and ordering each layer without collisions.
  {
    std::set<order_key> seen;
    for (vertex_id v = 0; v < g.n; ++v) {
      require(!c.key[v].empty(), errc::invariant_violation, "vertex without a key");
      require(seen.insert(c.key[v]).second, errc::invariant_violation,
              "duplicate ordering key");
    }
  }

  // Edge classes: kept edges stay within one layer step; wires step exactly
  // one layer; piles and bridges stay level. The removal ledger matches the
  // class tags one for one.
  std::map<edge_id, edge_class> ledger;
  for (const auto& r : c.removed) {
    require(r.e >= 0 && r.e < static_cast<edge_id>(g.edges.size()),
            errc::ledger_mismatch, "ledger references unknown edge");
    require(ledger.emplace(r.e, r.cls).second, errc::ledger_mismatch,
            "edge removed twice");
  }
  for (edge_id e = 0; e < static_cast<edge_id>(g.edges.size()); ++e) {
    auto [u, v] = g.edges[e];
    int delta = std::abs(c.layer[u] - c.layer[v]);
    switch (c.eclass[e]) {
      case edge_class::kept:
        require(delta <= 1, errc::invariant_violation, "kept edge skips a layer");
        require(!ledger.count(e), errc::ledger_mismatch, "kept edge in ledger");
        break;
      case edge_class::wire:
        require(delta == 1, errc::invariant_violation, "wire not spanning one layer");
        break;
      case edge_class::pile:
        require(delta == 0, errc::invariant_violation, "pile spans layers");
        break;
      case edge_class::bridge:
        require(delta == 0, errc::invariant_violation, "bridge spans layers");
        break;
    }
    if (c.eclass[e] != edge_class::kept) {
      auto it = ledger.find(e);
      require(it != ledger.end() && it->second == c.eclass[e], errc::ledger_mismatch,
              "class tag without matching ledger entry");
    }
  }

  // Dummies span exactly one layer, downward.
  for (const auto& d : c.dummies) {
    require(d.upper >= 0 && d.upper < g.n && d.lower >= 0 && d.lower < g.n,
            errc::invariant_violation, "dummy endpoint out of range");
    require(c.layer[d.lower] == c.layer[d.upper] + 1, errc::invariant_violation,
            "dummy must span one layer");
  }

  // Upward connectivity: every vertex below layer 1 reaches the layer above
  // through a kept edge or a dummy.
  std::vector<char> has_up(g.n, 0);
  for (edge_id e = 0; e < static_cast<edge_id>(g.edges.size()); ++e) {
    if (c.eclass[e] != edge_class::kept) continue;
    auto [u, v] = g.edges[e];
    if (c.layer[u] == c.layer[v] + 1) has_up[u] = 1;
    if (c.layer[v] == c.layer[u] + 1) has_up[v] = 1;
  }
  for (const auto& d : c.dummies) has_up[d.lower] = 1;
  for (vertex_id v = 0; v < g.n; ++v)
    require(c.layer[v] == 1 || has_up[v], errc::orphan_vertex,
            "vertex has no upper neighbor");

  // Units place every vertex exactly once (jointly with the root boundary).
  {
    std::vector<char> covered(g.n, 0);
    for (vertex_id v : c.hosts[0].boundary) covered[v] = 1;
    for (const auto& u : c.units)
      for (vertex_id v : u.run) {
        require(!covered[v], errc::invariant_violation, "vertex in two runs");
        covered[v] = 1;
      }
    for (vertex_id v = 0; v < g.n; ++v)
      require(covered[v], errc::unplaced_vertex, "vertex missing from every run");
  }

  // Host tree sanity.
  for (const auto& hrec : c.hosts) {
    require(hrec.parent < hrec.id, errc::invariant_violation, "host parent order");
    require(hrec.pivot >= 0 && hrec.pivot < g.n, errc::invariant_violation,
            "host pivot out of range");
    for (vertex_id v : hrec.boundary)
      require(c.layer[v] >= 1, errc::invariant_violation, "unplaced boundary vertex");
  }
}

} // namespace tracklay
