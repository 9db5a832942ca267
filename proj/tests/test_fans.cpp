#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "tracklay/errors.hpp"
#include "tracklay/fans.hpp"
#include "tracklay/generate.hpp"
#include "tracklay/layering.hpp"
#include "tracklay/verify.hpp"

using namespace tracklay;
using namespace tracklay::testing;

namespace {

composite_layerlike reformed(const embedded_graph& g) {
  auto t = triangulate(g);
  return reform(t.graph);
}

/// The instances every property in this file runs over: the fixtures plus a
/// spread of random stacked triangulations.
std::vector<composite_layerlike> property_instances(int max_n) {
  std::vector<composite_layerlike> out;
  out.push_back(reformed(make_k4()));
  out.push_back(reformed(make_octahedron()));
  out.push_back(reformed(make_octahedron_stacked()));
  out.push_back(reformed(make_chord_pocket()));
  out.push_back(reformed(make_dumbbell()));
  for (unsigned seed = 1; seed <= 8; ++seed) {
    const int n = 10 + static_cast<int>((seed * 7) % static_cast<unsigned>(max_n - 10));
    out.push_back(reformed(gen_stacked_triangulation(n, seed)));
  }
  return out;
}

vertex_id deepest_vertex(const composite_layerlike& cl) {
  return cl.layer_in_order(cl.layer_count).front();
}

bool is_suffix(const std::vector<vertex_id>& suffix, const std::vector<vertex_id>& whole) {
  if (suffix.size() > whole.size()) return false;
  return std::equal(suffix.rbegin(), suffix.rend(), whole.rbegin());
}

std::set<vertex_id> chain_vertex_set(const raising_fan& rf) {
  std::set<vertex_id> s;
  for (const auto& f : rf.fans) {
    s.insert(f.lower);
    s.insert(f.upper.begin(), f.upper.end());
  }
  s.insert(rf.spine_extension.begin(), rf.spine_extension.end());
  for (const auto& w : rf.wings_left) s.insert(w.begin(), w.end());
  for (const auto& w : rf.wings_right) s.insert(w.begin(), w.end());
  return s;
}

/// The fan anchored at the deepest member of `r` (ties broken by ambient
/// order, which `region::members`' sorted ids approximate via layer scan).
vertex_id deepest_member(const composite_layerlike& cl, const region& r) {
  int best_layer = 0;
  for (vertex_id v : r.members) best_layer = std::max(best_layer, cl.layer[v]);
  for (vertex_id v : cl.layer_in_order(best_layer))
    if (r.contains(v)) return v;
  return r.members.front();
}

} // namespace

// ─────────────────────────────────────────────────────────────────────────────
// Raising paths
// ─────────────────────────────────────────────────────────────────────────────

TEST_CASE("raising paths: first-layer vertices stand alone") {
  const auto cl = reformed(make_k4());
  const auto rp = build_raising_paths(cl);
  for (vertex_id v : cl.layer_in_order(1)) {
    CHECK(rp.parent[v] == -1);
    CHECK(rp.path(v) == std::vector<vertex_id>{v});
  }
}

TEST_CASE("raising paths: every path climbs one layer per step to the top") {
  for (const auto& cl : property_instances(30)) {
    const auto rp = build_raising_paths(cl);
    for (vertex_id v = 0; v < cl.graph.n; ++v) {
      const auto p = rp.path(v);
      REQUIRE(!p.empty());
      CHECK(p.front() == v);
      CHECK(cl.layer[p.back()] == 1);
      for (size_t i = 0; i + 1 < p.size(); ++i)
        CHECK(cl.layer[p[i]] == cl.layer[p[i + 1]] + 1);
    }
  }
}

TEST_CASE("raising paths: pairwise upward-merging, checked by brute force") {
  for (const auto& cl : property_instances(20)) {
    const auto rp = build_raising_paths(cl);
    std::vector<std::vector<vertex_id>> paths;
    for (vertex_id v = 0; v < cl.graph.n; ++v) paths.push_back(rp.path(v));
    for (size_t i = 0; i < paths.size(); ++i)
      for (size_t j = i + 1; j < paths.size(); ++j) {
        std::vector<vertex_id> common;
        std::set<vertex_id> in_i(paths[i].begin(), paths[i].end());
        for (vertex_id v : paths[j])
          if (in_i.count(v)) common.push_back(v);
        if (common.empty()) continue;
        CHECK(is_suffix(common, paths[i]));
        CHECK(is_suffix(common, paths[j]));
      }
  }
}

TEST_CASE("raising paths: siblings share their parent's whole path") {
  bool found_siblings = false;
  for (const auto& cl : property_instances(30)) {
    const auto rp = build_raising_paths(cl);
    for (vertex_id p = 0; p < cl.graph.n; ++p) {
      const auto& kids = rp.children[p];
      for (size_t a = 0; a + 1 < kids.size(); ++a) {
        found_siblings = true;
        const auto pa = rp.path(kids[a]);
        const auto pb = rp.path(kids[a + 1]);
        CHECK(is_suffix(rp.path(p), pa));
        CHECK(is_suffix(rp.path(p), pb));
      }
    }
  }
  CHECK(found_siblings);
}

TEST_CASE("raising paths: a vertex with no upward tie is rejected") {
  composite_layerlike cl;
  cl.graph.n = 2;
  cl.graph.edges = {{0, 1}};
  cl.graph.rotation = {{0}, {0}};
  cl.graph.outer_face = {0};
  cl.layer = {1, 2};
  cl.key = {{0}, {1}};
  cl.eclass = {edge_class::wire}; // the only upward edge was removed
  cl.layer_count = 2;
  try {
    build_raising_paths(cl);
    FAIL("expected an error");
  } catch (const error& e) {
    CHECK(e.code == errc::orphan_vertex);
  }
}

// ─────────────────────────────────────────────────────────────────────────────
// Fan chains
// ─────────────────────────────────────────────────────────────────────────────

TEST_CASE("fan chain: one interior vertex fans out to the whole first layer") {
  const auto cl = reformed(make_k4());
  const auto rp = build_raising_paths(cl);
  const auto r = whole_graph_region(cl);
  const auto rf = leftmost_raising_fan(cl, rp, r, deepest_vertex(cl));
  REQUIRE(rf.fans.size() == 1);
  CHECK(cl.layer[rf.fans[0].lower] == 2);
  CHECK(rf.fans[0].upper.size() == 3);
  CHECK(rf.middle_path == std::vector<vertex_id>{rf.fans[0].lower});
}

TEST_CASE("fan chain: structural invariants hold on every instance") {
  for (const auto& cl : property_instances(40)) {
    const auto rp = build_raising_paths(cl);
    const auto r = whole_graph_region(cl);
    const auto rf = leftmost_raising_fan(cl, rp, r, deepest_vertex(cl));
    if (cl.layer_count == 1) {
      CHECK(rf.empty());
      continue;
    }
    REQUIRE(!rf.empty());
    REQUIRE(rf.middle_path.size() == rf.fans.size());

    std::map<int, int> pos; // ambient position per vertex
    for (int lv = 1; lv <= cl.layer_count; ++lv) {
      const auto row = cl.layer_in_order(lv);
      for (size_t i = 0; i < row.size(); ++i) pos[row[i]] = static_cast<int>(i);
    }
    for (size_t i = 0; i < rf.fans.size(); ++i) {
      const auto& f = rf.fans[i];
      CHECK(rf.middle_path[i] == f.lower);
      REQUIRE(!f.upper.empty());
      // The upper run sits one layer above its lower vertex, consecutively.
      for (vertex_id u : f.upper) CHECK(cl.layer[u] == cl.layer[f.lower] - 1);
      for (size_t k = 0; k + 1 < f.upper.size(); ++k)
        CHECK(pos[f.upper[k + 1]] == pos[f.upper[k]] + 1);
      if (i == 0) continue;
      // Each step either widens on the same layer or climbs into an upper.
      const auto& prev = rf.fans[i - 1];
      const bool same_layer = cl.layer[f.lower] == cl.layer[prev.lower];
      if (same_layer) {
        CHECK(pos[f.upper.front()] <= pos[prev.upper.front()]);
        CHECK(pos[f.upper.back()] >= pos[prev.upper.back()]);
        CHECK(pos[f.upper.back()] - pos[f.upper.front()] >
              pos[prev.upper.back()] - pos[prev.upper.front()]);
      } else {
        CHECK(cl.layer[f.lower] == cl.layer[prev.lower] - 1);
        CHECK(std::count(prev.upper.begin(), prev.upper.end(), f.lower) == 1);
      }
    }

    // The spine extension climbs the last lower's path, one layer per step.
    vertex_id walk = rf.middle_path.back();
    for (vertex_id w : rf.spine_extension) {
      CHECK(rp.parent[walk] == w);
      CHECK(cl.layer[w] == cl.layer[walk] - 1);
      walk = w;
    }

    // Wings never touch the spine and the two sides never overlap.
    const auto sp = rf.spine();
    const std::set<vertex_id> middle(sp.begin(), sp.end());
    std::set<vertex_id> left, right;
    for (const auto& w : rf.wings_left)
      for (vertex_id v : w) {
        CHECK(!middle.count(v));
        CHECK(left.insert(v).second); // also: claimed at most once
      }
    for (const auto& w : rf.wings_right)
      for (vertex_id v : w) {
        CHECK(!middle.count(v));
        CHECK(!left.count(v));
        CHECK(right.insert(v).second);
      }
  }
}

TEST_CASE("fan chain: a deep instance climbs through several layers") {
  const auto cl = reformed(make_octahedron_stacked());
  REQUIRE(cl.layer_count >= 3);
  const auto rp = build_raising_paths(cl);
  const auto rf = leftmost_raising_fan(cl, rp, whole_graph_region(cl), deepest_vertex(cl));
  REQUIRE(rf.fans.size() >= 2);
  CHECK(cl.layer[rf.fans.front().lower] == cl.layer_count);
  CHECK(cl.layer[rf.fans.back().lower] == 2);
}

TEST_CASE("fan chain: a single-path region carries no fan") {
  const auto cl = reformed(make_octahedron());
  const auto rp = build_raising_paths(cl);
  const vertex_id v = deepest_vertex(cl);
  region r;
  r.members = rp.path(v);
  std::sort(r.members.begin(), r.members.end());
  r.root = v;
  CHECK(leftmost_raising_fan(cl, rp, r, v).empty());

  region lone;
  lone.members = {cl.layer_in_order(1).front()};
  CHECK(leftmost_raising_fan(cl, rp, lone, lone.members[0]).empty());
}

TEST_CASE("fan chain: anchors outside the region are rejected") {
  const auto cl = reformed(make_k4());
  const auto rp = build_raising_paths(cl);
  region r;
  r.members = {0, 1};
  try {
    leftmost_raising_fan(cl, rp, r, 3);
    FAIL("expected an error");
  } catch (const error& e) {
    CHECK(e.code == errc::malformed_input);
  }
}

// ─────────────────────────────────────────────────────────────────────────────
// Fan-induced partition
// ─────────────────────────────────────────────────────────────────────────────

TEST_CASE("fan partition: a fan that uses up the region leaves nothing") {
  const auto cl = reformed(make_k4());
  const auto rp = build_raising_paths(cl);
  const auto r = whole_graph_region(cl);
  const auto rf = leftmost_raising_fan(cl, rp, r, deepest_vertex(cl));
  const auto parts = fan_partition(cl, rp, r, rf);
  CHECK(parts.left.empty());
  CHECK(parts.right.empty());
  CHECK(!parts.middle.has_value());
}

TEST_CASE("fan partition: interiors plus the chain cover the region exactly") {
  for (const auto& cl : property_instances(30)) {
    if (cl.layer_count == 1) continue;
    const auto rp = build_raising_paths(cl);
    const auto r = whole_graph_region(cl);
    const auto rf = leftmost_raising_fan(cl, rp, r, deepest_vertex(cl));
    REQUIRE(!rf.empty());
    const auto parts = fan_partition(cl, rp, r, rf);

    std::vector<const region*> all;
    for (const auto& w : parts.left) all.push_back(&w);
    for (const auto& w : parts.right) all.push_back(&w);
    if (parts.middle) all.push_back(&*parts.middle);

    std::set<vertex_id> covered = chain_vertex_set(rf);
    for (const region* w : all) {
      CHECK(!w->empty());
      for (vertex_id v : w->members) {
        CHECK(r.contains(v));
        CHECK(covered.insert(v).second); // regions and chain pairwise disjoint
      }
    }
    CHECK(covered == std::set<vertex_id>(r.members.begin(), r.members.end()));

    // Every region's delimiting paths are climbing paths of the forest.
    for (const region* w : all) {
      for (const auto* b : {&w->left_boundary, &w->right_boundary}) {
        if (b->empty()) continue;
        CHECK(*b == rp.path(b->front()));
      }
    }
  }
}

TEST_CASE("fan partition: an empty chain splits nothing") {
  const auto cl = reformed(make_octahedron());
  const auto rp = build_raising_paths(cl);
  const auto parts = fan_partition(cl, rp, whole_graph_region(cl), raising_fan{});
  CHECK(parts.left.empty());
  CHECK(parts.right.empty());
  CHECK(!parts.middle.has_value());
}

// ─────────────────────────────────────────────────────────────────────────────
// Placement plans
// ─────────────────────────────────────────────────────────────────────────────

TEST_CASE("placement plan: per-layer order is left ascending, middle reversed, right descending") {
  for (const auto& cl : property_instances(40)) {
    if (cl.layer_count == 1) continue;
    const auto rp = build_raising_paths(cl);
    const auto rf = leftmost_raising_fan(cl, rp, whole_graph_region(cl), deepest_vertex(cl));
    const auto plan = fan_placement_order(cl, rf);

    std::set<vertex_id> left, right;
    for (const auto& w : rf.wings_left) left.insert(w.begin(), w.end());
    for (const auto& w : rf.wings_right) right.insert(w.begin(), w.end());
    const auto sp = rf.spine();
    std::map<vertex_id, int> chain_index;
    for (size_t i = 0; i < sp.size(); ++i) chain_index[sp[i]] = static_cast<int>(i);

    std::set<vertex_id> placed;
    for (size_t t = 0; t < plan.per_layer.size(); ++t) {
      const auto& row = plan.per_layer[t];
      // zones: 0 = left wing, 1 = middle, 2 = right wing; never out of order
      int zone = 0;
      vertex_id prev = -1;
      for (vertex_id v : row) {
        CHECK(placed.insert(v).second);
        CHECK(cl.layer[v] == plan.layers[t]);
        const int z = left.count(v) ? 0 : (right.count(v) ? 2 : 1);
        CHECK(z >= zone);
        if (z == zone && prev != -1) {
          const bool prev_same = (left.count(prev) ? 0 : (right.count(prev) ? 2 : 1)) == z;
          if (prev_same) {
            if (z == 0) CHECK(composite_layerlike::key_less(cl.key[prev], cl.key[v]));
            if (z == 2) CHECK(composite_layerlike::key_less(cl.key[v], cl.key[prev]));
            if (z == 1) CHECK(chain_index[prev] > chain_index[v]);
          }
        }
        zone = z;
        prev = v;
      }
    }
    CHECK(placed == chain_vertex_set(rf));
  }
}

TEST_CASE("placement plan: each side of a materialized chain is crossing-free") {
  // A placed chain keeps each side of the spine internally free of crossings:
  // the left arms, left wing paths and spine ties never cross one another,
  // and likewise on the right. Only a left-family edge against a right-family
  // edge may cross — nested same-layer fans force exactly such pairs, which
  // stay bounded and are absorbed by track refinement downstream.
  //
  // The guarantee is stated for regions bounded by climbing paths, where each
  // layer's members form one linear stretch. The whole graph is not such a
  // region — its outermost cycle closes up, so a tie may wrap around the cut
  // between the first and last position. The check therefore walks the
  // partition tree: every region produced by a split is path-bounded, and
  // each gets its chain materialized and measured.
  int measured = 0;
  for (const auto& cl : property_instances(60)) {
    if (cl.layer_count == 1) continue;
    const auto rp = build_raising_paths(cl);

    std::vector<std::pair<region, int>> pool{{whole_graph_region(cl), 0}};
    int budget = 200;
    while (!pool.empty() && budget-- > 0) {
      const auto [r, depth] = std::move(pool.back());
      pool.pop_back();
      const auto rf = leftmost_raising_fan(cl, rp, r, deepest_member(cl, r));
      if (rf.empty()) continue;
      if (depth > 0) {
        const auto plan = fan_placement_order(cl, rf);
        const auto ladder = materialize_plan(cl, plan);
        const auto sides = fan_edge_sides(rp, rf);
        for (const auto* fam : {&sides.left, &sides.right}) {
          const auto m = measure(ladder, *fam);
          CHECK(m.x <= 1); // a largest "crossing family" of one edge = no pair crosses
          CHECK(m.d <= 1); // structural edges never skip a layer
        }
        CHECK(measure(ladder, fan_edges(rp, rf)).d <= 1);
        ++measured;
      }
      const auto parts = fan_partition(cl, rp, r, rf);
      for (const auto* side : {&parts.left, &parts.right})
        for (const auto& w : *side) pool.push_back({w, depth + 1});
      if (parts.middle) pool.push_back({*parts.middle, depth + 1});
    }
  }
  CHECK(measured > 10); // the property must not hold vacuously
}

TEST_CASE("placement plan: fan dump is valid JSON with the chain inside") {
  const auto cl = reformed(make_octahedron_stacked());
  const auto rp = build_raising_paths(cl);
  const auto rf = leftmost_raising_fan(cl, rp, whole_graph_region(cl), deepest_vertex(cl));
  const auto dump = raising_fan_json(rf);
  CHECK(dump.find("\"fans\"") != std::string::npos);
  CHECK(dump.find("\"middle_path\"") != std::string::npos);
  CHECK(dump.find("\"wings_left\"") != std::string::npos);
}
