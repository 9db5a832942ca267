#include "tracklay/skeleton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>

#include "json.hpp"
#include "tracklay/errors.hpp"

namespace tracklay {

namespace {

// ─────────────────────────────────────────────────────────────────────────────
// Shared helpers
// ─────────────────────────────────────────────────────────────────────────────

std::vector<vertex_id> chain_vertices(const raising_fan& rf) {
  std::set<vertex_id> s;
  for (const auto& f : rf.fans) {
    s.insert(f.lower);
    s.insert(f.upper.begin(), f.upper.end());
  }
  s.insert(rf.spine_extension.begin(), rf.spine_extension.end());
  for (const auto& w : rf.wings_left) s.insert(w.begin(), w.end());
  for (const auto& w : rf.wings_right) s.insert(w.begin(), w.end());
  return {s.begin(), s.end()};
}

/// Deepest vertex the two bounding paths share — the point they merge at.
/// Bounding paths are climbing paths: once they meet they stay together, so
/// the shared part is a common suffix.
vertex_id root_of(const region& r) {
  const auto& l = r.left_boundary;
  const auto& rt = r.right_boundary;
  size_t t = 0;
  while (t < l.size() && t < rt.size() && l[l.size() - 1 - t] == rt[rt.size() - 1 - t]) ++t;
  if (t == 0) return -1;
  return l[l.size() - t];
}

/// Neighbor sets over every edge regardless of class, plus the added ties.
std::vector<std::vector<vertex_id>> neighbor_sets(const composite_layerlike& cl) {
  std::vector<std::vector<vertex_id>> adj(cl.graph.n);
  for (const auto& [a, b] : cl.graph.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (const auto& d : cl.dummies) {
    adj[d.upper].push_back(d.lower);
    adj[d.lower].push_back(d.upper);
  }
  for (auto& ns : adj) {
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  }
  return adj;
}

bool touches(const std::vector<vertex_id>& verts, const std::set<vertex_id>& boundary,
             const std::vector<std::vector<vertex_id>>& adj) {
  for (vertex_id x : verts)
    for (vertex_id nb : adj[x])
      if (boundary.count(nb)) return true;
  return false;
}

/// The fan whose first upper sits leftmost decides where the next chain
/// starts; the scan walks the deepest layer first so the chain always
/// contains the region's lowest fans.
std::optional<vertex_id> pick_seed(const composite_layerlike& cl, const tie_adjacency& ties,
                                   const region& r) {
  int deepest = 0, shallowest = cl.layer_count + 1;
  for (vertex_id v : r.members) {
    deepest = std::max(deepest, cl.layer[v]);
    shallowest = std::min(shallowest, cl.layer[v]);
  }
  for (int lv = deepest; lv >= shallowest; --lv) {
    std::optional<vertex_id> best;
    std::pair<int, int> best_key{0, 0};
    for (vertex_id v : cl.layer_in_order(lv)) {
      if (!r.contains(v)) continue;
      const auto fans = ties.fans_of(v, r);
      if (fans.empty()) continue;
      const std::pair<int, int> key{ties.pos_in_layer[fans.front().upper.front()],
                                    ties.pos_in_layer[v]};
      if (!best || key < best_key) {
        best = v;
        best_key = key;
      }
    }
    if (best) return best;
  }
  return std::nullopt;
}

// ─────────────────────────────────────────────────────────────────────────────
// Forest construction
// ─────────────────────────────────────────────────────────────────────────────

/// The coloring loop in its construction orientation: anchored chains are
/// colored leftmost-first, each partition replacing its host in the pool.
forest_like build_forest_impl(const composite_layerlike& cl, const raising_path_set& rp,
                              const region& w0, forest_side side) {
  forest_like f;
  f.side = side;
  const tie_adjacency ties(cl);
  const auto adj = neighbor_sets(cl);
  const auto& bl0 = w0.left_boundary;
  const auto& br0 = w0.right_boundary;
  const std::set<vertex_id> brset(br0.begin(), br0.end());

  f.regions.push_back({w0, -1, -1});
  f.regions[0].r.root = w0.root != -1 ? w0.root : root_of(w0);
  std::vector<int> pool{0};

  size_t i = 0;
  int guard = 0;
  while (i < pool.size()) {
    require(++guard <= 2 * cl.graph.n + 4, errc::non_termination,
            "boundary forest failed to terminate");
    const int ri = pool[i];
    const region r = f.regions[ri].r; // copy: the vector grows below
    const bool left_anchored = r.left_boundary == bl0;
    const bool corner_lineage = r.right_boundary == br0;
    if (!left_anchored && !corner_lineage) {
      ++i;
      continue;
    }
    const auto seed = pick_seed(cl, ties, r);
    if (!seed) {
      ++i;
      continue;
    }
    const raising_fan chain = leftmost_raising_fan(cl, rp, r, *seed);
    if (chain.empty()) {
      ++i;
      continue;
    }
    // Down the right-corner lineage only chains that actually reach the
    // right boundary belong to this forest; the rest wait for later stages.
    if (!left_anchored && !touches(chain_vertices(chain), brset, adj)) {
      ++i;
      continue;
    }

    const int node_id = static_cast<int>(f.nodes.size());
    f.nodes.push_back({chain, f.regions[ri].producer, ri, {}});
    f.regions[ri].consumed_by = node_id;

    auto parts = fan_partition(cl, rp, r, chain);
    std::vector<region> seq = std::move(parts.left);
    if (parts.middle) seq.push_back(std::move(*parts.middle));
    for (auto& g : parts.right) seq.push_back(std::move(g));

    std::vector<int> produced_ids;
    for (auto& sub : seq) {
      sub.root = root_of(sub);
      produced_ids.push_back(static_cast<int>(f.regions.size()));
      f.regions.push_back({std::move(sub), node_id, -1});
    }
    f.nodes[node_id].produced = produced_ids;
    pool.erase(pool.begin() + static_cast<long>(i));
    pool.insert(pool.begin() + static_cast<long>(i), produced_ids.begin(), produced_ids.end());
  }

  f.pool = pool;
  for (int n = 0; n < static_cast<int>(f.nodes.size()); ++n)
    if (f.nodes[n].parent == -1) f.roots.push_back(n);
  return f;
}

void swap_boundaries(region& r) { std::swap(r.left_boundary, r.right_boundary); }

} // namespace

composite_layerlike mirrored(const composite_layerlike& cl) {
  composite_layerlike m = cl;
  std::vector<vertex_id> order(cl.graph.n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](vertex_id a, vertex_id b) {
    return composite_layerlike::key_less(cl.key[a], cl.key[b]);
  });
  for (size_t i = 0; i < order.size(); ++i)
    m.key[order[i]] = {static_cast<std::uint32_t>(order.size() - 1 - i)};
  return m;
}

forest_like build_forest(const composite_layerlike& cl, const raising_path_set& rp,
                         const region& w, forest_side side) {
  if (side == forest_side::left) return build_forest_impl(cl, rp, w, side);

  const composite_layerlike mir = mirrored(cl);
  const raising_path_set mrp = build_raising_paths(mir);
  region mw = w;
  swap_boundaries(mw);
  forest_like f = build_forest_impl(mir, mrp, mw, forest_side::right);

  // Back to ambient orientation: swap every region's boundaries and flip
  // every left-to-right list. Chains stay in construction orientation.
  for (auto& tr : f.regions) swap_boundaries(tr.r);
  for (auto& node : f.nodes) std::reverse(node.produced.begin(), node.produced.end());
  std::reverse(f.pool.begin(), f.pool.end());
  return f;
}

// ─────────────────────────────────────────────────────────────────────────────
// Decomposition
// ─────────────────────────────────────────────────────────────────────────────

skeleton_decomposition decompose(const composite_layerlike& cl, const forest_like& f,
                                 const region& w) {
  int wi = -1;
  for (int t = 0; t < static_cast<int>(f.regions.size()); ++t)
    if (f.regions[t].r.members == w.members) {
      wi = t;
      break;
    }
  require(wi != -1, errc::malformed_input, "region is not tracked by the forest");

  // Nodes living inside w: its consumer and everything below it.
  std::vector<int> scope;
  std::deque<int> q{wi};
  while (!q.empty()) {
    const int t = q.front();
    q.pop_front();
    const int c = f.regions[t].consumed_by;
    if (c == -1) continue;
    scope.push_back(c);
    for (int sub : f.nodes[c].produced) q.push_back(sub);
  }
  std::sort(scope.begin(), scope.end());

  skeleton_decomposition out;
  if (scope.empty()) return out;

  const auto adj = neighbor_sets(cl);
  const std::set<vertex_id> brset(w.right_boundary.begin(), w.right_boundary.end());
  std::vector<int> touching;
  for (int n : scope)
    if (touches(chain_vertices(f.nodes[n].chain), brset, adj)) touching.push_back(n);

  auto black_hole_of = [&](int n) -> int {
    const auto& host_rb = f.regions[f.nodes[n].host].r.right_boundary;
    int found = -1, count = 0;
    for (int sub : f.nodes[n].produced)
      if (f.regions[sub].r.right_boundary == host_rb) {
        found = sub;
        ++count;
      }
    require(count <= 1, errc::decomposition_error,
            "more than one region of a chain still borders the right boundary");
    return found;
  };

  if (!touching.empty()) {
    const std::set<int> in_chain(touching.begin(), touching.end());
    // The chain starts at the unique member whose parent does not reach the
    // boundary, then must descend parent to child through the black holes.
    std::vector<int> starts;
    for (int n : touching)
      if (!in_chain.count(f.nodes[n].parent)) starts.push_back(n);
    require(starts.size() == 1, errc::decomposition_error,
            "chains reaching the right boundary do not form a single path");
    int cur = starts.front();
    size_t used = 0;
    while (true) {
      out.right_chain.push_back(cur);
      ++used;
      const int bh = black_hole_of(cur);
      out.black_holes.push_back(bh);
      const int next = bh == -1 ? -1 : f.regions[bh].consumed_by;
      if (next == -1 || !in_chain.count(next)) break;
      require(f.nodes[next].parent == cur, errc::decomposition_error,
              "right-boundary chain skips a generation");
      cur = next;
    }
    require(used == touching.size(), errc::decomposition_error,
            "a chain reaching the right boundary sits outside the descent");
  }

  // The top-level chain, when clear of the right boundary, forms the left
  // run on its own; deeper non-touching chains belong to later stages.
  const int top = f.regions[wi].consumed_by;
  if (top != -1 &&
      (out.right_chain.empty() || out.right_chain.front() != top)) {
    require(!touches(chain_vertices(f.nodes[top].chain), brset, adj),
            errc::decomposition_error, "left-run chain touches the right boundary");
    out.left_chain.push_back(top);
  }
  return out;
}

// ─────────────────────────────────────────────────────────────────────────────
// Skeletons
// ─────────────────────────────────────────────────────────────────────────────

std::vector<vertex_id> skeleton::vertices() const {
  std::set<vertex_id> s;
  if (root != -1) s.insert(root);
  for (const auto* part : {&left_part, &right_part}) {
    for (const auto& node : part->nodes) {
      const auto cv = chain_vertices(node.chain);
      s.insert(cv.begin(), cv.end());
    }
    for (int t : part->pool) {
      const auto& r = part->regions[t].r;
      s.insert(r.left_boundary.begin(), r.left_boundary.end());
      s.insert(r.right_boundary.begin(), r.right_boundary.end());
    }
  }
  s.insert(path_vertices.begin(), path_vertices.end());
  return {s.begin(), s.end()};
}

namespace {

/// Children of `u` that live strictly inside `w` (not on its bounding paths).
std::vector<vertex_id> inner_children(const tie_adjacency& ties, const region& w,
                                      const std::set<vertex_id>& w_bounds, vertex_id u) {
  std::vector<vertex_id> out;
  for (vertex_id c : ties.fan_lowers[u])
    if (w.contains(c) && !w_bounds.count(c)) out.push_back(c);
  return out;
}

/// The defining property: every child of a boundary vertex or of the root is
/// a skeleton vertex or lies inside exactly one surviving region. Flags each
/// region with whose children it holds; throws on any violation.
void verify_skeleton(const composite_layerlike& cl, const region& w, skeleton& sk) {
  const tie_adjacency ties(cl);
  const auto skel_list = sk.vertices();
  const std::set<vertex_id> skel(skel_list.begin(), skel_list.end());
  std::set<vertex_id> w_bounds(w.left_boundary.begin(), w.left_boundary.end());
  w_bounds.insert(w.right_boundary.begin(), w.right_boundary.end());

  std::set<vertex_id> seen;
  for (const auto& sr : sk.regions)
    for (vertex_id v : sr.r.members)
      require(seen.insert(v).second, errc::decomposition_error,
              "surviving regions overlap at vertex " + std::to_string(v));

  auto check = [&](vertex_id u, bool skeleton_region::* flag) {
    for (vertex_id c : inner_children(ties, w, w_bounds, u)) {
      if (skel.count(c)) continue;
      int holders = 0;
      for (auto& sr : sk.regions)
        if (sr.r.contains(c)) {
          sr.*flag = true;
          ++holders;
        }
      require(holders == 1, errc::decomposition_error,
              "child " + std::to_string(c) + " of " + std::to_string(u) +
                  " is covered by " + std::to_string(holders) + " regions");
    }
  };
  for (vertex_id u : w.left_boundary) check(u, &skeleton_region::holds_left);
  for (vertex_id u : w.right_boundary) check(u, &skeleton_region::holds_right);
  if (w.root != -1) check(w.root, &skeleton_region::holds_middle);
}

} // namespace

skeleton assemble_skeleton(const composite_layerlike& cl, const raising_path_set& rp,
                           const region& w) {
  skeleton sk;
  sk.root = w.root != -1 ? w.root : root_of(w);

  sk.left_part = build_forest(cl, rp, w, forest_side::left);
  if (sk.left_part.empty()) {
    // No chain fits: the interior is a bare climbing path (or empty) and
    // stands in as the skeleton itself.
    sk.path_vertices = w.members;
    verify_skeleton(cl, w, sk);
    return sk;
  }

  // The leftover that still owns w's right boundary is emptied from that
  // boundary by the mirror-image construction.
  int rest = -1;
  for (int t : sk.left_part.pool)
    if (sk.left_part.regions[t].r.right_boundary == w.right_boundary) {
      require(rest == -1, errc::decomposition_error,
              "two leftovers still border the right boundary");
      rest = t;
    }
  if (rest != -1) sk.right_part = build_forest(cl, rp, sk.left_part.regions[rest].r,
                                               forest_side::right);

  for (int t : sk.left_part.pool) {
    if (t == rest) continue;
    sk.regions.push_back({sk.left_part.regions[t].r, false, false, false, false});
  }
  if (rest != -1)
    for (int t : sk.right_part.pool)
      sk.regions.push_back({sk.right_part.regions[t].r, true, false, false, false});

  verify_skeleton(cl, w, sk);
  return sk;
}

std::vector<skeleton> skeleton_sequence(const composite_layerlike& cl,
                                        const raising_path_set& rp, const region& w) {
  require(w.root != -1, errc::malformed_input, "skeleton sequence needs a rooted region");
  const tie_adjacency ties(cl);
  std::set<vertex_id> w_bounds(w.left_boundary.begin(), w.left_boundary.end());
  w_bounds.insert(w.right_boundary.begin(), w.right_boundary.end());
  const std::vector<vertex_id> children = inner_children(ties, w, w_bounds, w.root);

  std::vector<skeleton> out;
  if (children.empty()) return out;

  std::set<vertex_id> uncovered(children.begin(), children.end());
  std::deque<region> work{w};
  while (!uncovered.empty()) {
    require(out.size() <= children.size(), errc::non_termination,
            "skeleton count exceeded the root's child count");
    require(!work.empty(), errc::non_termination,
            "uncovered root children left in no surviving region");
    const region r = work.front();
    work.pop_front();
    bool holds = false;
    for (vertex_id c : uncovered)
      if (r.contains(c)) holds = true;
    if (!holds) continue;

    skeleton sk = assemble_skeleton(cl, rp, r);
    for (vertex_id v : sk.vertices()) uncovered.erase(v);
    for (const auto& sr : sk.regions) {
      for (vertex_id c : uncovered)
        if (sr.r.contains(c)) {
          work.push_back(sr.r);
          break;
        }
    }
    out.push_back(std::move(sk));
  }
  return out;
}

// ─────────────────────────────────────────────────────────────────────────────
// Dumps
// ─────────────────────────────────────────────────────────────────────────────

namespace {

nlohmann::json region_json(const region& r) {
  return {{"members", r.members},
          {"left_boundary", r.left_boundary},
          {"right_boundary", r.right_boundary},
          {"root", r.root}};
}

nlohmann::json forest_value(const forest_like& f) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& node : f.nodes) {
    nlohmann::json fans = nlohmann::json::array();
    for (const auto& fa : node.chain.fans) fans.push_back({{"lower", fa.lower}, {"upper", fa.upper}});
    nodes.push_back({{"parent", node.parent},
                     {"host", node.host},
                     {"produced", node.produced},
                     {"middle_path", node.chain.middle_path},
                     {"fans", fans}});
  }
  nlohmann::json regions = nlohmann::json::array();
  for (const auto& tr : f.regions)
    regions.push_back({{"producer", tr.producer},
                       {"consumed_by", tr.consumed_by},
                       {"region", region_json(tr.r)}});
  return {{"side", f.side == forest_side::left ? "left" : "right"},
          {"roots", f.roots},
          {"nodes", nodes},
          {"regions", regions},
          {"pool", f.pool}};
}

} // namespace

std::string forest_json(const forest_like& f) { return forest_value(f).dump(2); }

std::string skeleton_json(const skeleton& sk) {
  nlohmann::json regions = nlohmann::json::array();
  for (const auto& sr : sk.regions)
    regions.push_back({{"region", region_json(sr.r)},
                       {"from_right", sr.from_right},
                       {"holds_left", sr.holds_left},
                       {"holds_middle", sr.holds_middle},
                       {"holds_right", sr.holds_right}});
  nlohmann::json j{{"root", sk.root},
                   {"left_part", forest_value(sk.left_part)},
                   {"right_part", forest_value(sk.right_part)},
                   {"path_vertices", sk.path_vertices},
                   {"regions", regions}};
  return j.dump(2);
}

} // namespace tracklay
