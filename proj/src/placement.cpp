#include "tracklay/placement.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>

#include "json.hpp"
#include "tracklay/errors.hpp"

namespace tracklay {

namespace {

// ─────────────────────────────────────────────────────────────────────────────
// Placement state
//
// Tracks grow by appending only, so the left-to-right order on every track is
// simply the order blocks were placed in; positions are densified at the end.
// ─────────────────────────────────────────────────────────────────────────────

struct placer {
  const composite_layerlike& cl;
  const composite_layerlike mirror; // right-part chains carry mirror orientation
  const raising_path_set rp;
  const tie_adjacency ties;
  placement_config cfg;

  std::vector<std::vector<vertex_id>> tracks; // [t-1] = track t, left to right
  std::vector<int> track_of;                  // 1-based; 0 = unplaced
  std::vector<block_trace>* trace = nullptr;

  placer(const composite_layerlike& c, const placement_config& f)
      : cl(c), mirror(mirrored(c)), rp(build_raising_paths(c)), ties(c), cfg(f),
        track_of(c.graph.n, 0) {}

  void put(vertex_id v, int track, block_trace& rec) {
    if (track_of[v] != 0) return; // wings may revisit an inherited boundary
    require(track >= 1, errc::invariant_violation, "track number fell below 1");
    if (static_cast<int>(tracks.size()) < track) tracks.resize(track);
    tracks[track - 1].push_back(v);
    track_of[v] = track;
    rec.vertices.push_back(v);
    if (rec.start_track == 0 || track < rec.start_track) rec.start_track = track;
  }

  /// Appends one skeleton's own vertices: left-part chains in creation order,
  /// then the right part as the exact mirror image of how its construction
  /// placed it (concatenate rows in the mirror, then flip every row).
  ///
  /// Row tracks follow the root shape — the first content row lands 2Z below
  /// the root, one track per layer after that — but each row also bows to
  /// what its vertices actually hang from: the top row is capped to stay
  /// within 2Z of its highest already-placed upper tie, and any row is
  /// pushed down below its deepest placed tie and below the previous row.
  void place_skeleton(const skeleton& sk, int base_track, int base_layer) {
    block_trace rec;
    rec.root = sk.root;

    std::map<int, std::vector<vertex_id>> row; // layer -> vertices, left to right
    for (const auto& node : sk.left_part.nodes) {
      const placement_plan plan = fan_placement_order(cl, node.chain);
      for (size_t i = 0; i < plan.layers.size(); ++i) {
        auto& out = row[plan.layers[i]];
        out.insert(out.end(), plan.per_layer[i].begin(), plan.per_layer[i].end());
      }
    }
    std::map<int, std::vector<vertex_id>> flipped; // right part, mirror order
    for (const auto& node : sk.right_part.nodes) {
      const placement_plan plan = fan_placement_order(mirror, node.chain);
      for (size_t i = 0; i < plan.layers.size(); ++i) {
        auto& out = flipped[plan.layers[i]];
        out.insert(out.end(), plan.per_layer[i].begin(), plan.per_layer[i].end());
      }
    }
    for (auto& [n, r] : flipped) {
      std::reverse(r.begin(), r.end());
      auto& out = row[n];
      out.insert(out.end(), r.begin(), r.end());
    }
    for (vertex_id v : sk.path_vertices) row[cl.layer[v]].push_back(v);
    if (row.empty()) return;

    const int top = row.begin()->first;
    int high = 0; // highest (smallest-track) placed tie of the top row
    for (vertex_id v : row.begin()->second)
      for (vertex_id u : ties.uppers[v])
        if (track_of[u] != 0 && (high == 0 || track_of[u] < high)) high = track_of[u];
    int nominal;
    if (base_layer == 0) {
      // No single root vertex: hang the block one band below whatever the
      // top row actually ties to, so it never shares a band with content
      // that hangs one generation higher.
      nominal = (high != 0 ? high : 1) + 2 * cfg.z;
    } else {
      nominal = base_track + 2 * cfg.z + (top - base_layer - 1);
      if (high != 0) nominal = std::min(nominal, high + 2 * cfg.z);
    }

    int prev = 0;
    int prev_layer = top - 1;
    for (const auto& [n, r] : row) {
      int t = nominal + (n - top);
      if (prev != 0) t = std::max(t, prev + (n - prev_layer));
      for (vertex_id v : r)
        for (vertex_id u : ties.uppers[v])
          if (track_of[u] != 0) t = std::max(t, track_of[u] + 1);
      for (vertex_id v : r) put(v, t, rec);
      prev = t;
      prev_layer = n;
    }
    if (trace && !rec.vertices.empty()) trace->push_back(rec);
  }

  /// The sub-regions of one skeleton in the order their contents will appear.
  /// Chain rows are emitted in ambient order for both parts (the right part's
  /// mirror rows are flipped back), so survivors also queue up left to right —
  /// content must appear in the same direction as the vertices it hangs from,
  /// or the returning removed edges would cross.
  static std::vector<region> placement_ordered(const skeleton& sk) {
    std::vector<region> out;
    for (const auto& sr : sk.regions)
      if (!sr.from_right) out.push_back(sr.r);
    for (const auto& sr : sk.regions)
      if (sr.from_right) out.push_back(sr.r);
    return out;
  }

  /// Pops one region off the outer queue: assembles skeletons until every
  /// child of the root is on one, placing each block as it is built, and
  /// returns the regions that survived the whole cascade, in placed order.
  std::vector<region> process(const region& q) {
    const int base_track = q.root == -1 ? 1 : track_of[q.root];
    const int base_layer = q.root == -1 ? 1 : cl.layer[q.root];
    require(base_track != 0, errc::invariant_violation,
            "region root reached the queue before being placed");

    std::set<vertex_id> uncovered;
    if (q.root != -1)
      for (vertex_id c : ties.fan_lowers[q.root])
        if (q.contains(c)) uncovered.insert(c);

    std::deque<region> pending{q};
    std::vector<region> survivors;
    bool first = true;
    std::size_t guard = 0;
    while (!pending.empty()) {
      require(++guard <= 2 * static_cast<std::size_t>(cl.graph.n) + 8,
              errc::non_termination, "skeleton cascade failed to cover the root's children");
      const region w = pending.front();
      pending.pop_front();
      const bool holds = first || std::any_of(uncovered.begin(), uncovered.end(),
                                              [&](vertex_id c) { return w.contains(c); });
      first = false;
      if (!holds) {
        survivors.push_back(w);
        continue;
      }
      const skeleton sk = assemble_skeleton(cl, rp, w);
      place_skeleton(sk, base_track, base_layer);
      for (vertex_id v : sk.vertices()) uncovered.erase(v);
      for (region& sub : placement_ordered(sk)) {
        if (sub.empty()) continue;
        if (uncovered.empty())
          survivors.push_back(std::move(sub));
        else
          pending.push_back(std::move(sub));
      }
      if (uncovered.empty()) {
        for (auto& rest : pending) survivors.push_back(std::move(rest));
        pending.clear();
      }
    }
    require(uncovered.empty(), errc::decomposition_error,
            "skeleton cascade left a child of the root uncovered");
    return survivors;
  }

  ladder_layout run() {
    // The first layer is the ladder's own root structure: track 1, key order.
    {
      block_trace rec;
      for (vertex_id v : cl.layer_in_order(1)) put(v, 1, rec);
      if (trace && !rec.vertices.empty()) trace->push_back(rec);
    }

    std::deque<region> queue{whole_graph_region(cl)};
    std::size_t guard = 0;
    while (!queue.empty()) {
      require(++guard <= 4 * static_cast<std::size_t>(cl.graph.n) + 16,
              errc::non_termination, "region queue failed to drain");
      const region q = queue.front();
      queue.pop_front();
      for (region& s : process(q))
        if (!s.empty()) queue.push_back(std::move(s));
    }

    ladder_layout l;
    l.track_count = static_cast<int>(tracks.size());
    l.track_of = track_of;
    l.pos_of.assign(cl.graph.n, 0);
    l.config = cfg;
    for (const auto& row : tracks)
      for (size_t p = 0; p < row.size(); ++p) l.pos_of[row[p]] = static_cast<int>(p);
    for (vertex_id v = 0; v < cl.graph.n; ++v)
      require(l.track_of[v] != 0, errc::unplaced_vertex,
              "vertex " + std::to_string(v) + " was never placed");
    l.validate();
    return l;
  }
};

} // namespace

// ─────────────────────────────────────────────────────────────────────────────
// Entry points
// ─────────────────────────────────────────────────────────────────────────────

placement_config derive_config(const composite_layerlike& cl) {
  // Dry-run one skeleton and measure the widest layer span along its own
  // edges; that is the largest in-block track gap the instance can force.
  int j = 1;
  if (cl.graph.n > 0) {
    const raising_path_set rp = build_raising_paths(cl);
    const skeleton sk = assemble_skeleton(cl, rp, whole_graph_region(cl));
    const auto span = [&](const forest_like& f) {
      for (const auto& node : f.nodes)
        for (const auto& [a, b] : fan_edges(rp, node.chain))
          j = std::max(j, std::abs(cl.layer[a] - cl.layer[b]));
    };
    span(sk.left_part);
    span(sk.right_part);
  }
  placement_config cfg;
  cfg.j = j;
  cfg.z = j + 1;
  cfg.d = 2 * cfg.z + 1; // strict margin: wrapping must never fold a maximal
                         // span onto an equal opposite one
  cfg.validate();
  return cfg;
}

ladder_layout place(const composite_layerlike& cl, const placement_config& cfg,
                    std::vector<block_trace>* trace) {
  cfg.validate();
  require(cl.graph.n > 0, errc::graph_too_small, "cannot place an empty graph");
  placer p(cl, cfg);
  p.trace = trace;
  return p.run();
}

std::vector<vpair> placed_edges(const composite_layerlike& cl) {
  std::vector<vpair> out;
  for (edge_id e = 0; e < static_cast<edge_id>(cl.graph.edges.size()); ++e)
    if (cl.eclass[e] == edge_class::kept)
      out.push_back({cl.graph.edges[e].first, cl.graph.edges[e].second});
  for (const auto& d : cl.dummies) out.push_back({d.upper, d.lower});
  return out;
}

std::vector<vpair> reinsert_deleted(const ladder_layout& l, const composite_layerlike& cl) {
  require(static_cast<int>(l.track_of.size()) == cl.graph.n, errc::ledger_mismatch,
          "layout and composite disagree on the vertex count");
  require(cl.eclass.size() == cl.graph.edges.size(), errc::ledger_mismatch,
          "edge classes do not cover the edge list");
  std::size_t tagged = 0;
  for (const auto& rem : cl.removed) {
    require(rem.e >= 0 && rem.e < static_cast<edge_id>(cl.eclass.size()),
            errc::ledger_mismatch, "removed-edge record points outside the edge list");
    require(cl.eclass[rem.e] == rem.cls && rem.cls != edge_class::kept,
            errc::ledger_mismatch, "removed-edge record disagrees with the edge class");
    ++tagged;
  }
  std::size_t loose = 0;
  for (edge_class c : cl.eclass)
    if (c != edge_class::kept) ++loose;
  require(tagged == loose, errc::ledger_mismatch,
          "removed-edge records do not account for every non-kept edge");

  std::vector<vpair> out;
  for (const auto& [a, b] : cl.graph.edges) {
    require(l.track_of[a] != 0 && l.track_of[b] != 0, errc::unplaced_vertex,
            "edge endpoint was never placed");
    out.push_back({a, b});
  }
  return out;
}

ladder_layout wrap(const ladder_layout& l, int fold, const std::vector<vpair>& edges) {
  require(fold >= 1, errc::config_invalid, "wrap bound must be at least 1");
  l.validate();
  for (const auto& [a, b] : edges) {
    const int gap = std::abs(l.track_of[a] - l.track_of[b]);
    require(gap <= fold, errc::distance_exceeds_bound,
            "edge spans " + std::to_string(gap) + " tracks, beyond the bound " +
                std::to_string(fold));
  }

  const int width = 2 * fold;
  const auto rows = l.rows();
  ladder_layout out;
  out.track_count = std::min(l.track_count, width);
  out.track_of.assign(l.track_of.size(), 0);
  out.pos_of.assign(l.pos_of.size(), 0);
  out.wrapped = true;
  out.config = l.config;
  out.config.d = fold;
  for (int target = 1; target <= out.track_count; ++target) {
    int pos = 0;
    for (int t = target; t <= l.track_count; t += width)
      for (vertex_id v : rows[t - 1]) {
        out.track_of[v] = target;
        out.pos_of[v] = pos++;
      }
  }
  out.validate();
  return out;
}

std::string layout_json(const ladder_layout& l, const composite_layerlike& cl) {
  nlohmann::json j;
  j["track_count"] = l.track_count;
  j["wrapped"] = l.wrapped;
  j["config"] = {{"j", l.config.j}, {"z", l.config.z}, {"d", l.config.d}};
  nlohmann::json tracks = nlohmann::json::array();
  for (const auto& row : l.rows()) tracks.push_back(row);
  j["tracks"] = std::move(tracks);
  nlohmann::json edges = nlohmann::json::array();
  for (edge_id e = 0; e < static_cast<edge_id>(cl.graph.edges.size()); ++e)
    edges.push_back({{"u", cl.graph.edges[e].first},
                     {"v", cl.graph.edges[e].second},
                     {"class", edge_class_name(cl.eclass[e])}});
  j["edges"] = std::move(edges);
  return j.dump(2);
}

} // namespace tracklay
