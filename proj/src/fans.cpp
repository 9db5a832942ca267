#include "tracklay/fans.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "json.hpp"
#include "tracklay/errors.hpp"

namespace tracklay {

// ─────────────────────────────────────────────────────────────────────────────
// Tie adjacency
// ─────────────────────────────────────────────────────────────────────────────

tie_adjacency::tie_adjacency(const composite_layerlike& cl) {
  const int n = cl.graph.n;
  pos_in_layer.assign(n, -1);
  for (int lv = 1; lv <= cl.layer_count; ++lv) {
    const auto row = cl.layer_in_order(lv);
    for (size_t i = 0; i < row.size(); ++i) pos_in_layer[row[i]] = static_cast<int>(i);
  }
  uppers.assign(n, {});
  fan_uppers.assign(n, {});
  auto note = [&](std::vector<std::vector<vertex_id>>& into, vertex_id a, vertex_id b) {
    if (cl.layer[a] == cl.layer[b] + 1)
      into[a].push_back(b);
    else if (cl.layer[b] == cl.layer[a] + 1)
      into[b].push_back(a);
  };
  for (edge_id e = 0; e < static_cast<edge_id>(cl.graph.edges.size()); ++e) {
    const auto [a, b] = cl.graph.edges[e];
    if (cl.eclass[e] == edge_class::kept) note(uppers, a, b);
    note(fan_uppers, a, b);
  }
  for (const auto& d : cl.dummies) {
    note(uppers, d.lower, d.upper);
    note(fan_uppers, d.lower, d.upper);
  }
  auto by_pos = [&](vertex_id a, vertex_id b) { return pos_in_layer[a] < pos_in_layer[b]; };
  for (auto* side : {&uppers, &fan_uppers})
    for (auto& us : *side) {
      std::sort(us.begin(), us.end(), by_pos);
      us.erase(std::unique(us.begin(), us.end()), us.end());
    }
  fan_lowers.assign(n, {});
  for (vertex_id m = 0; m < n; ++m)
    for (vertex_id u : fan_uppers[m]) fan_lowers[u].push_back(m);
  for (auto& ls : fan_lowers) std::sort(ls.begin(), ls.end(), by_pos);
}

std::vector<fan> tie_adjacency::fans_of(vertex_id m, const region& r) const {
  std::vector<fan> out;
  for (vertex_id u : fan_uppers[m]) {
    if (!r.contains(u)) continue;
    if (!out.empty() && pos_in_layer[u] == pos_in_layer[out.back().upper.back()] + 1)
      out.back().upper.push_back(u);
    else
      out.push_back({m, {u}});
  }
  return out;
}

// ─────────────────────────────────────────────────────────────────────────────
// Raising paths
// ─────────────────────────────────────────────────────────────────────────────

std::vector<vertex_id> raising_path_set::path(vertex_id v) const {
  std::vector<vertex_id> p;
  for (; v != -1; v = parent[v]) p.push_back(v);
  return p;
}

std::vector<vertex_id> raising_fan::spine() const {
  std::vector<vertex_id> s = middle_path;
  s.insert(s.end(), spine_extension.begin(), spine_extension.end());
  return s;
}

raising_path_set build_raising_paths(const composite_layerlike& cl) {
  const tie_adjacency ties(cl);
  const int n = cl.graph.n;
  raising_path_set rp;
  rp.parent.assign(n, -1);
  for (vertex_id v = 0; v < n; ++v) {
    if (cl.layer[v] <= 1) continue;
    require(!ties.uppers[v].empty(), errc::orphan_vertex,
            "vertex " + std::to_string(v) + " has no tie to the layer above");
    rp.parent[v] = ties.uppers[v].front();
  }
  rp.children.assign(n, {});
  std::vector<vertex_id> by_key(n);
  std::iota(by_key.begin(), by_key.end(), 0);
  std::sort(by_key.begin(), by_key.end(), [&](vertex_id a, vertex_id b) {
    return composite_layerlike::key_less(cl.key[a], cl.key[b]);
  });
  for (vertex_id v : by_key)
    if (rp.parent[v] != -1) rp.children[rp.parent[v]].push_back(v);
  return rp;
}

// ─────────────────────────────────────────────────────────────────────────────
// Regions
// ─────────────────────────────────────────────────────────────────────────────

bool region::contains(vertex_id v) const {
  return std::binary_search(members.begin(), members.end(), v);
}

region whole_graph_region(const composite_layerlike& cl) {
  region r;
  r.members.resize(cl.graph.n);
  std::iota(r.members.begin(), r.members.end(), 0);
  return r;
}

// ─────────────────────────────────────────────────────────────────────────────
// Fan chains
// ─────────────────────────────────────────────────────────────────────────────

raising_fan leftmost_raising_fan(const composite_layerlike& cl, const raising_path_set& rp,
                                 const region& r, vertex_id v) {
  require(v >= 0 && v < cl.graph.n && r.contains(v), errc::malformed_input,
          "fan anchor lies outside the region");
  const tie_adjacency ties(cl);
  raising_fan rf;

  // A region that shrank to one climbing path carries no fan.
  std::map<int, int> per_layer;
  bool degenerate = true;
  for (vertex_id w : r.members)
    if (++per_layer[cl.layer[w]] > 1) {
      degenerate = false;
      break;
    }
  if (degenerate) return rf;

  auto first_fan = ties.fans_of(v, r);
  if (first_fan.empty()) return rf;
  fan cur = first_fan.front();

  const int guard = 2 * cl.graph.n + 2;
  for (int step = 0; step <= guard; ++step) {
    require(step < guard, errc::non_termination, "fan chain failed to terminate");
    rf.fans.push_back(cur);
    rf.middle_path.push_back(cur.lower);

    const int span_lo = ties.pos_in_layer[cur.upper.front()];
    const int span_hi = ties.pos_in_layer[cur.upper.back()];
    const int upper_layer = cl.layer[cur.upper.front()];

    // Same-layer widening: the narrowest fan on the same layers whose upper
    // run strictly contains the current one and holds its own parent.
    std::optional<fan> widened;
    int best_width = -1, best_lo = -1;
    for (vertex_id m : cl.layer_in_order(upper_layer + 1)) {
      if (m == cur.lower || !r.contains(m)) continue;
      for (const auto& cand : ties.fans_of(m, r)) {
        const int lo = ties.pos_in_layer[cand.upper.front()];
        const int hi = ties.pos_in_layer[cand.upper.back()];
        if (lo > span_lo || hi < span_hi || (lo == span_lo && hi == span_hi)) continue;
        if (rp.parent[m] == -1 || !std::binary_search(cand.upper.begin(), cand.upper.end(),
                                                      rp.parent[m],
                                                      [&](vertex_id a, vertex_id b) {
                                                        return ties.pos_in_layer[a] <
                                                               ties.pos_in_layer[b];
                                                      }))
          continue;
        const int width = hi - lo;
        if (widened && (width > best_width || (width == best_width && lo >= best_lo))) continue;
        widened = cand;
        best_width = width;
        best_lo = lo;
      }
    }
    if (widened) {
      cur = *widened;
      continue;
    }

    // Layer step: climb into the leftmost upper vertex that carries a fan.
    bool climbed = false;
    for (vertex_id u : cur.upper) {
      auto next = ties.fans_of(u, r);
      if (!next.empty()) {
        cur = next.front();
        climbed = true;
        break;
      }
    }
    if (!climbed) break;
  }

  // The spine continues past the last fan's lower along its raising path,
  // clipped to the region; it is the dividing line the wings hang off.
  int anchor_layer = cl.layer_count;
  for (vertex_id w : r.members) anchor_layer = std::min(anchor_layer, cl.layer[w]);
  for (vertex_id w = rp.parent[rf.middle_path.back()]; w != -1; w = rp.parent[w]) {
    if (!r.contains(w) || cl.layer[w] < anchor_layer) break;
    rf.spine_extension.push_back(w);
  }

  // Wings: the non-spine upper vertices climb toward the region's top layer,
  // splitting left or right of where the spine crosses their layer. Left
  // wings claim their paths first; every claimed vertex stops later paths so
  // the wing families stay disjoint.
  const auto spine = rf.spine();
  const std::set<vertex_id> middle(spine.begin(), spine.end());
  std::map<int, int> spine_pos; // layer -> position where the spine enters it
  for (vertex_id s : spine) spine_pos.emplace(cl.layer[s], ties.pos_in_layer[s]);
  std::set<vertex_id> claimed;
  auto climb = [&](vertex_id from, std::vector<vertex_id>& into) {
    for (vertex_id w = from; w != -1; w = rp.parent[w]) {
      if (middle.count(w) || claimed.count(w)) break;
      if (cl.layer[w] < anchor_layer || !r.contains(w)) break;
      claimed.insert(w);
      into.push_back(w);
    }
  };
  auto is_left = [&](vertex_id u) {
    const auto it = spine_pos.find(cl.layer[u]);
    if (it == spine_pos.end()) return false; // spine merged into the left boundary
    return ties.pos_in_layer[u] < it->second;
  };
  rf.wings_left.resize(rf.fans.size());
  rf.wings_right.resize(rf.fans.size());
  for (size_t i = 0; i < rf.fans.size(); ++i)
    for (vertex_id u : rf.fans[i].upper)
      if (!middle.count(u) && is_left(u)) climb(u, rf.wings_left[i]);
  for (size_t i = 0; i < rf.fans.size(); ++i) {
    const auto& f = rf.fans[i];
    for (auto it = f.upper.rbegin(); it != f.upper.rend(); ++it)
      if (!middle.count(*it) && !is_left(*it)) climb(*it, rf.wings_right[i]);
  }
  return rf;
}

// ─────────────────────────────────────────────────────────────────────────────
// Fan-induced partition
// ─────────────────────────────────────────────────────────────────────────────

namespace {

/// Wing bases (upper vertices that head their own climbing path), split by
/// the side their wing took and sorted by key. An upper vertex absorbed by an
/// earlier path heads no cut of its own.
std::pair<std::vector<vertex_id>, std::vector<vertex_id>> wing_bases(
    const composite_layerlike& cl, const raising_fan& rf) {
  std::vector<vertex_id> left, right;
  std::set<vertex_id> seen;
  for (size_t i = 0; i < rf.fans.size(); ++i) {
    const std::set<vertex_id> in_left(rf.wings_left[i].begin(), rf.wings_left[i].end());
    const std::set<vertex_id> in_right(rf.wings_right[i].begin(), rf.wings_right[i].end());
    for (vertex_id u : rf.fans[i].upper) {
      if (!seen.insert(u).second) continue;
      if (in_left.count(u))
        left.push_back(u);
      else if (in_right.count(u))
        right.push_back(u);
    }
  }
  auto by_key = [&](vertex_id a, vertex_id b) {
    return composite_layerlike::key_less(cl.key[a], cl.key[b]);
  };
  std::sort(left.begin(), left.end(), by_key);
  std::sort(right.begin(), right.end(), by_key);
  return {left, right};
}

} // namespace

fan_regions fan_partition(const composite_layerlike& cl, const raising_path_set& rp,
                          const region& r, const raising_fan& rf) {
  fan_regions out;
  if (rf.empty()) return out;

  std::set<vertex_id> excluded; // the chain itself and the delimiting paths
  for (const auto& f : rf.fans) {
    excluded.insert(f.lower);
    excluded.insert(f.upper.begin(), f.upper.end());
  }
  excluded.insert(rf.spine_extension.begin(), rf.spine_extension.end());
  for (const auto& w : rf.wings_left) excluded.insert(w.begin(), w.end());
  for (const auto& w : rf.wings_right) excluded.insert(w.begin(), w.end());
  excluded.insert(r.left_boundary.begin(), r.left_boundary.end());
  excluded.insert(r.right_boundary.begin(), r.right_boundary.end());

  const auto [left_bases, right_bases] = wing_bases(cl, rf);

  // Interior vertices are dealt to the gaps between consecutive cut paths by
  // key order; the cut paths themselves are excluded above.
  using cut = std::pair<std::optional<vertex_id>, std::vector<vertex_id>>; // base, path
  auto cut_of = [&](vertex_id base) { return cut{base, rp.path(base)}; };
  std::vector<cut> cuts;
  cuts.push_back({std::nullopt, r.left_boundary});
  for (vertex_id b : left_bases) cuts.push_back(cut_of(b));
  const size_t straddle_gap = cuts.size() - 1; // between last left and first right
  for (vertex_id b : right_bases) cuts.push_back(cut_of(b));
  cuts.push_back({std::nullopt, r.right_boundary});

  auto below = [&](const cut& c, vertex_id w) { // cut key strictly below w's key
    if (!c.first) return false;
    return composite_layerlike::key_less(cl.key[*c.first], cl.key[w]);
  };
  std::vector<region> gaps(cuts.size() - 1);
  for (size_t g = 0; g + 1 < cuts.size(); ++g) {
    gaps[g].left_boundary = cuts[g].second;
    gaps[g].right_boundary = cuts[g + 1].second;
  }
  for (vertex_id w : r.members) {
    if (excluded.count(w)) continue;
    size_t g = 0;
    while (g + 2 < cuts.size() && below(cuts[g + 1], w)) ++g;
    gaps[g].members.push_back(w);
  }
  for (auto& gap : gaps) std::sort(gap.members.begin(), gap.members.end());

  for (size_t g = 0; g < gaps.size(); ++g) {
    if (gaps[g].empty()) continue;
    if (g < straddle_gap)
      out.left.push_back(std::move(gaps[g]));
    else if (g == straddle_gap)
      out.middle = std::move(gaps[g]);
    else
      out.right.push_back(std::move(gaps[g]));
  }
  return out;
}

// ─────────────────────────────────────────────────────────────────────────────
// Placement plans
// ─────────────────────────────────────────────────────────────────────────────

placement_plan fan_placement_order(const composite_layerlike& cl, const raising_fan& rf) {
  struct slot {
    std::vector<vertex_id> left, right;
    std::vector<std::pair<int, vertex_id>> middle; // chain index, vertex
  };
  std::map<int, slot> rows;
  for (const auto& w : rf.wings_left)
    for (vertex_id v : w) rows[cl.layer[v]].left.push_back(v);
  for (const auto& w : rf.wings_right)
    for (vertex_id v : w) rows[cl.layer[v]].right.push_back(v);
  const auto spine = rf.spine();
  for (size_t i = 0; i < spine.size(); ++i)
    rows[cl.layer[spine[i]]].middle.push_back({static_cast<int>(i), spine[i]});

  auto by_key = [&](vertex_id a, vertex_id b) {
    return composite_layerlike::key_less(cl.key[a], cl.key[b]);
  };
  placement_plan plan;
  for (auto& [layer, row] : rows) {
    std::sort(row.left.begin(), row.left.end(), by_key);
    std::sort(row.right.begin(), row.right.end(), by_key);
    std::sort(row.middle.begin(), row.middle.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<vertex_id> order = row.left;
    for (const auto& [idx, v] : row.middle) order.push_back(v);
    for (auto it = row.right.rbegin(); it != row.right.rend(); ++it) order.push_back(*it);
    plan.layers.push_back(layer);
    plan.per_layer.push_back(std::move(order));
  }
  return plan;
}

ladder_layout materialize_plan(const composite_layerlike& cl, const placement_plan& plan) {
  ladder_layout l;
  l.track_count = static_cast<int>(plan.layers.size());
  l.track_of.assign(cl.graph.n, 0);
  l.pos_of.assign(cl.graph.n, 0);
  for (size_t t = 0; t < plan.per_layer.size(); ++t)
    for (size_t p = 0; p < plan.per_layer[t].size(); ++p) {
      l.track_of[plan.per_layer[t][p]] = static_cast<int>(t) + 1;
      l.pos_of[plan.per_layer[t][p]] = static_cast<int>(p);
    }
  return l;
}

std::vector<vpair> fan_edges(const raising_path_set& rp, const raising_fan& rf) {
  std::set<vertex_id> in_plan;
  for (const auto& f : rf.fans) {
    in_plan.insert(f.lower);
    in_plan.insert(f.upper.begin(), f.upper.end());
  }
  in_plan.insert(rf.spine_extension.begin(), rf.spine_extension.end());
  for (const auto& w : rf.wings_left) in_plan.insert(w.begin(), w.end());
  for (const auto& w : rf.wings_right) in_plan.insert(w.begin(), w.end());

  std::set<std::pair<vertex_id, vertex_id>> seen;
  std::vector<vpair> edges;
  auto push = [&](vertex_id a, vertex_id b) {
    const auto p = std::minmax(a, b);
    if (seen.insert({p.first, p.second}).second) edges.push_back({a, b});
  };
  for (const auto& f : rf.fans)
    for (vertex_id u : f.upper) push(f.lower, u);
  for (vertex_id v : rf.spine())
    if (rp.parent[v] != -1 && in_plan.count(rp.parent[v])) push(v, rp.parent[v]);
  for (const auto& side : {&rf.wings_left, &rf.wings_right})
    for (const auto& w : *side)
      for (vertex_id v : w)
        if (rp.parent[v] != -1 && in_plan.count(rp.parent[v])) push(v, rp.parent[v]);
  return edges;
}

fan_edge_families fan_edge_sides(const raising_path_set& rp, const raising_fan& rf) {
  const auto sp = rf.spine();
  const std::set<vertex_id> spine(sp.begin(), sp.end());
  std::set<vertex_id> zone_left, zone_right, in_plan(spine.begin(), spine.end());
  for (const auto& w : rf.wings_left) zone_left.insert(w.begin(), w.end());
  for (const auto& w : rf.wings_right) zone_right.insert(w.begin(), w.end());
  in_plan.insert(zone_left.begin(), zone_left.end());
  in_plan.insert(zone_right.begin(), zone_right.end());
  for (const auto& f : rf.fans) {
    in_plan.insert(f.lower);
    in_plan.insert(f.upper.begin(), f.upper.end());
  }

  fan_edge_families out;
  std::set<std::pair<vertex_id, vertex_id>> seen_left, seen_right;
  auto push = [&](vertex_id a, vertex_id b, bool left, bool right) {
    const auto p = std::minmax(a, b);
    if (left && seen_left.insert({p.first, p.second}).second) out.left.push_back({a, b});
    if (right && seen_right.insert({p.first, p.second}).second) out.right.push_back({a, b});
  };
  for (const auto& f : rf.fans)
    for (vertex_id u : f.upper) {
      // An arm that lands on the spine itself sits on neither side; nested
      // same-layer fans force it to cross the wider fans' outer arms, which
      // is the bounded allowance, not a per-side defect.
      if (spine.count(u)) continue;
      push(f.lower, u, zone_left.count(u) > 0, zone_right.count(u) > 0);
    }
  // The spine's own climb: the last lower's ascent through the extension.
  // Other parent ties touching the spine are arms and were classified above.
  for (vertex_id v = rf.middle_path.back();
       rp.parent[v] != -1 && in_plan.count(rp.parent[v]); v = rp.parent[v])
    push(v, rp.parent[v], true, true);
  for (const auto& w : rf.wings_left)
    for (vertex_id v : w)
      if (rp.parent[v] != -1 && in_plan.count(rp.parent[v])) push(v, rp.parent[v], true, false);
  for (const auto& w : rf.wings_right)
    for (vertex_id v : w)
      if (rp.parent[v] != -1 && in_plan.count(rp.parent[v])) push(v, rp.parent[v], false, true);
  return out;
}

std::string raising_fan_json(const raising_fan& rf) {
  nlohmann::json j;
  j["fans"] = nlohmann::json::array();
  for (const auto& f : rf.fans) j["fans"].push_back({{"lower", f.lower}, {"upper", f.upper}});
  j["middle_path"] = rf.middle_path;
  j["spine_extension"] = rf.spine_extension;
  j["wings_left"] = rf.wings_left;
  j["wings_right"] = rf.wings_right;
  return j.dump(2);
}

} // namespace tracklay
