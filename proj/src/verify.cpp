#include "tracklay/verify.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace tracklay {

namespace {

// ─────────────────────────────────────────────────────────────────────────────
// Chain machinery
//
// Both nesting and crossing numbers reduce to the same chain problem: after
// normalizing each item to a pair (a, b) and sorting by (a asc, b asc), a
// largest pairwise-compatible family is a longest strictly decreasing
// subsequence of the b components. Strictness makes shared endpoints (equal
// a or equal b) mutually exclusive, which is exactly the rule for both
// relations.
// ─────────────────────────────────────────────────────────────────────────────

/// Longest strictly decreasing subsequence of `vals` after the caller sorted
/// the items; returns the indices of one optimal chain.
std::vector<int> longest_strict_decrease(const std::vector<int>& vals) {
  const int m = static_cast<int>(vals.size());
  std::vector<int> tail_idx;         // tail_idx[k] = index ending a chain of length k+1
  std::vector<int> prev(m, -1);      // chain predecessor per index
  std::vector<int> tail_val;         // negated values of the tails, increasing
  for (int i = 0; i < m; ++i) {
    const int key = -vals[i];
    // strictly increasing on negated values == strictly decreasing on vals
    auto it = std::lower_bound(tail_val.begin(), tail_val.end(), key);
    const int k = static_cast<int>(it - tail_val.begin());
    if (k > 0) prev[i] = tail_idx[k - 1];
    if (it == tail_val.end()) {
      tail_val.push_back(key);
      tail_idx.push_back(i);
    } else {
      *it = key;
      tail_idx[k] = i;
    }
  }
  std::vector<int> chain;
  if (!tail_idx.empty()) {
    for (int i = tail_idx.back(); i != -1; i = prev[i]) chain.push_back(i);
    std::reverse(chain.begin(), chain.end());
  }
  return chain;
}

/// Normalizes items to (a <= b), sorts by (a asc, b asc), and returns the
/// indices (into the input) of one largest family whose members pairwise
/// satisfy a1 < a2 and b1 > b2 — nesting for same-track chords, crossing for
/// inter-track spans.
std::vector<int> largest_reversal_family(std::vector<std::pair<int, int>> items) {
  std::vector<int> idx(items.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int l, int r) {
    return items[l] < items[r];
  });
  std::vector<int> bs(items.size());
  for (size_t i = 0; i < idx.size(); ++i) bs[i] = items[idx[i]].second;
  std::vector<int> chain = longest_strict_decrease(bs);
  for (int& c : chain) c = idx[c];
  return chain;
}

std::vector<int> positions_of(const std::vector<vertex_id>& order) {
  vertex_id hi = -1;
  for (vertex_id v : order) hi = std::max(hi, v);
  std::vector<int> pos(hi + 1, -1);
  for (int i = 0; i < static_cast<int>(order.size()); ++i) {
    require(order[i] >= 0, errc::malformed_input, "negative vertex id in order");
    require(pos[order[i]] == -1, errc::malformed_input, "vertex repeated in order");
    pos[order[i]] = i;
  }
  return pos;
}

bool nested(std::pair<int, int> outer, std::pair<int, int> inner) {
  return outer.first < inner.first && inner.second < outer.second;
}

bool crossing(std::pair<int, int> e, std::pair<int, int> f) {
  const long da = e.first - f.first, db = e.second - f.second;
  return da != 0 && db != 0 && (da > 0) != (db > 0);
}

} // namespace

int max_crossing(const std::vector<std::pair<int, int>>& spans) {
  return static_cast<int>(largest_reversal_family(spans).size());
}

int max_nesting(const std::vector<vertex_id>& order, const std::vector<vpair>& chords,
                std::vector<vpair>* witness) {
  const std::vector<int> pos = positions_of(order);
  std::vector<std::pair<int, int>> items;
  items.reserve(chords.size());
  for (const auto& [u, v] : chords) {
    require(u >= 0 && v >= 0 && u < static_cast<int>(pos.size()) &&
                v < static_cast<int>(pos.size()) && pos[u] != -1 && pos[v] != -1,
            errc::malformed_input, "chord endpoint missing from the order");
    require(u != v, errc::malformed_input, "chord may not be a self-loop");
    items.emplace_back(std::min(pos[u], pos[v]), std::max(pos[u], pos[v]));
  }
  // A strictly-decreasing chain over right endpoints after an (asc, asc) sort
  // is outermost-first: consecutive members satisfy a_i < a_j and b_j < b_i,
  // and a_j < b_j by normalization, so every pair nests with all endpoints
  // distinct.
  const std::vector<int> family = largest_reversal_family(std::move(items));
  if (witness) {
    witness->clear();
    for (int i : family) witness->push_back(chords[i]);
  }
  return static_cast<int>(family.size());
}

metrics measure(const ladder_layout& l, const std::vector<vpair>& edges) {
  metrics m;
  std::map<int, std::vector<vpair>> track_chords;
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> pair_spans;
  for (const auto& [u, v] : edges) {
    require(u >= 0 && u < l.size() && v >= 0 && v < l.size(), errc::malformed_input,
            "edge endpoint outside the layout");
    if (l.track_of[u] == 0)
      fail(errc::unplaced_vertex, "edge endpoint " + std::to_string(u) + " is unplaced");
    if (l.track_of[v] == 0)
      fail(errc::unplaced_vertex, "edge endpoint " + std::to_string(v) + " is unplaced");
    const int tu = l.track_of[u], tv = l.track_of[v];
    m.d = std::max(m.d, std::abs(tu - tv));
    if (tu == tv) {
      track_chords[tu].push_back({u, v});
    } else {
      vertex_id a = u, b = v;
      if (tu > tv) std::swap(a, b);
      pair_spans[{std::min(tu, tv), std::max(tu, tv)}].emplace_back(l.pos_of[a], l.pos_of[b]);
    }
  }
  for (int t = 1; t <= l.track_count; ++t) m.per_track_q[t] = 0;
  for (const auto& [t, chords] : track_chords) {
    std::vector<std::pair<int, int>> items;
    items.reserve(chords.size());
    for (const auto& [u, v] : chords)
      items.emplace_back(std::min(l.pos_of[u], l.pos_of[v]), std::max(l.pos_of[u], l.pos_of[v]));
    m.per_track_q[t] = static_cast<int>(largest_reversal_family(std::move(items)).size());
    m.q = std::max(m.q, m.per_track_q[t]);
  }
  for (const auto& [tp, spans] : pair_spans) {
    m.per_pair_x[tp] = max_crossing(spans);
    m.x = std::max(m.x, m.per_pair_x[tp]);
  }
  return m;
}

// ─────────────────────────────────────────────────────────────────────────────
// Track layout validation
// ─────────────────────────────────────────────────────────────────────────────

namespace {

void check_track_structure(const track_layout& t) {
  require(t.track_count == static_cast<int>(t.order.size()), errc::malformed_input,
          "track count disagrees with the order table");
  const int n = static_cast<int>(t.color_of.size());
  std::vector<char> seen(n, 0);
  for (int c = 1; c <= t.track_count; ++c) {
    for (vertex_id v : t.order[c - 1]) {
      require(v >= 0 && v < n, errc::malformed_input, "track order names an unknown vertex");
      require(!seen[v], errc::malformed_input, "vertex appears twice in the track orders");
      require(t.color_of[v] == c, errc::malformed_input,
              "vertex color disagrees with the track that lists it");
      seen[v] = 1;
    }
  }
  for (vertex_id v = 0; v < n; ++v)
    require(seen[v], errc::malformed_input,
            "vertex " + std::to_string(v) + " is missing from every track");
}

} // namespace

std::optional<layout_violation> validate_track_layout(const track_layout& t,
                                                      const std::vector<vpair>& edges) {
  check_track_structure(t);
  const int n = static_cast<int>(t.color_of.size());
  std::vector<int> pos(n, -1);
  for (const auto& row : t.order)
    for (int i = 0; i < static_cast<int>(row.size()); ++i) pos[row[i]] = i;

  for (const auto& [u, v] : edges) {
    require(u >= 0 && u < n && v >= 0 && v < n && u != v, errc::malformed_input,
            "edge endpoint outside the layout");
    if (t.color_of[u] == t.color_of[v]) {
      layout_violation viol;
      viol.kind = "intra-track-edge";
      viol.first = {u, v};
      viol.detail = "edge lies inside track " + std::to_string(t.color_of[u]);
      return viol;
    }
  }

  std::map<std::pair<int, int>, std::vector<std::pair<vpair, std::pair<int, int>>>> by_pair;
  for (const auto& [u, v] : edges) {
    vertex_id a = u, b = v;
    if (t.color_of[a] > t.color_of[b]) std::swap(a, b);
    by_pair[{t.color_of[a], t.color_of[b]}].push_back({{a, b}, {pos[a], pos[b]}});
  }
  for (const auto& [tp, list] : by_pair) {
    for (size_t i = 0; i < list.size(); ++i)
      for (size_t j = i + 1; j < list.size(); ++j)
        if (crossing(list[i].second, list[j].second)) {
          layout_violation viol;
          viol.kind = "x-crossing";
          viol.first = list[i].first;
          viol.second = list[j].first;
          viol.detail = "edges between tracks " + std::to_string(tp.first) + " and " +
                        std::to_string(tp.second) + " reverse order";
          return viol;
        }
  }
  return std::nullopt;
}

// ─────────────────────────────────────────────────────────────────────────────
// Refinement
// ─────────────────────────────────────────────────────────────────────────────

namespace {

/// Greedy proper coloring in decreasing conflict-degree order; ties broken by
/// position so the result is deterministic.
std::vector<int> color_conflicts(const std::vector<vertex_id>& members,
                                 const std::set<std::pair<vertex_id, vertex_id>>& conflicts) {
  const int k = static_cast<int>(members.size());
  std::vector<int> index_of;
  {
    vertex_id hi = -1;
    for (vertex_id v : members) hi = std::max(hi, v);
    index_of.assign(hi + 1, -1);
    for (int i = 0; i < k; ++i) index_of[members[i]] = i;
  }
  std::vector<std::vector<int>> adj(k);
  for (const auto& [a, b] : conflicts) {
    adj[index_of[a]].push_back(index_of[b]);
    adj[index_of[b]].push_back(index_of[a]);
  }
  std::vector<int> by_degree(k);
  std::iota(by_degree.begin(), by_degree.end(), 0);
  std::stable_sort(by_degree.begin(), by_degree.end(), [&](int l, int r) {
    if (adj[l].size() != adj[r].size()) return adj[l].size() > adj[r].size();
    return l < r;
  });
  std::vector<int> color(k, -1);
  for (int i : by_degree) {
    std::set<int> used;
    for (int nb : adj[i])
      if (color[nb] != -1) used.insert(color[nb]);
    int c = 0;
    while (used.count(c)) ++c;
    color[i] = c;
  }
  return color;
}

} // namespace

track_layout refine_to_track_layout(const ladder_layout& l, const std::vector<vpair>& edges) {
  l.validate();
  const int n = l.size();
  const auto original = l.rows();

  // Conflicts are recorded per original track, keyed by normalized pairs.
  std::vector<std::set<std::pair<vertex_id, vertex_id>>> conflicts(l.track_count);
  auto add_conflict = [&](vertex_id a, vertex_id b) {
    if (a == b) return false;
    const int t = l.track_of[a] - 1;
    const auto p = std::minmax(a, b);
    return conflicts[t].insert({p.first, p.second}).second;
  };

  // Seed conflicts: the endpoints of every intra-track chord must part ways.
  // Everything else is discovered by validation below.
  std::vector<int> comp(n);
  std::iota(comp.begin(), comp.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (comp[v] != v) v = comp[v] = comp[comp[v]];
    return v;
  };
  for (const auto& [u, v] : edges)
    if (l.track_of[u] == l.track_of[v]) {
      add_conflict(u, v);
      comp[find(u)] = find(v);
    }

  // Sub-tracks do not simply inherit the original position order. Chords that
  // nest on one track would then reappear as a crossing between the two
  // sub-tracks carrying their endpoints: for positions u < x < y < v with
  // chords (u,v) and (x,y), any proper split leaves the pairs (u,v) and (x,y)
  // in reversed relative order. Sorting each chord-connected component as a
  // contiguous block — blocks ordered by their leftmost original position —
  // turns nested families into parallel ones instead. Vertices without any
  // intra-track chord stay inline: they ride with the innermost chord
  // component whose position span encloses them.
  struct block_ref {
    int key = 0;   // leftmost original position of the component
    int width = 0; // span width, used to find the innermost enclosing block
  };
  std::map<int, block_ref> blocks; // component root -> block
  for (int v = 0; v < n; ++v) {
    const int r = find(v);
    auto it = blocks.find(r);
    if (it == blocks.end()) {
      blocks[r] = {l.pos_of[v], 0};
    } else {
      it->second.key = std::min(it->second.key, l.pos_of[v]);
    }
  }
  for (int v = 0; v < n; ++v) {
    const int r = find(v);
    blocks[r].width = std::max(blocks[r].width, l.pos_of[v] - blocks[r].key);
  }
  // sort_key[v]: chorded vertices use their component's block key; chordless
  // ones borrow the key of the tightest enclosing block on their track.
  std::vector<int> sort_key(n);
  for (int t = 0; t < l.track_count; ++t) {
    for (vertex_id v : original[t]) {
      const int r = find(v);
      if (blocks[r].width > 0) {
        sort_key[v] = blocks[r].key;
        continue;
      }
      int best_key = l.pos_of[v];
      int best_width = std::numeric_limits<int>::max();
      for (vertex_id w : original[t]) {
        const int rw = find(w);
        const auto& b = blocks[rw];
        if (b.width == 0) continue;
        if (b.key < l.pos_of[v] && l.pos_of[v] < b.key + b.width && b.width < best_width) {
          best_key = b.key;
          best_width = b.width;
        }
      }
      sort_key[v] = best_key;
    }
  }

  // Split, validate, add conflicts for whatever still breaks, repeat. Every
  // round separates the endpoints of a concrete violation for good, so the
  // loop reaches a fixed point after finitely many rounds (all-singleton
  // tracks are always valid).
  const int max_rounds = 2 * n + 4;
  for (int round = 0; round < max_rounds; ++round) {
    track_layout refined;
    refined.color_of.assign(n, 0);
    for (int t = 0; t < l.track_count; ++t) {
      const auto& members = original[t];
      if (members.empty()) continue;
      const std::vector<int> color = color_conflicts(members, conflicts[t]);
      const int groups = 1 + *std::max_element(color.begin(), color.end());
      std::vector<std::vector<vertex_id>> sub(groups);
      for (size_t i = 0; i < members.size(); ++i) sub[color[i]].push_back(members[i]);
      for (auto& row : sub) {
        std::stable_sort(row.begin(), row.end(), [&](vertex_id a, vertex_id b) {
          if (sort_key[a] != sort_key[b]) return sort_key[a] < sort_key[b];
          return l.pos_of[a] < l.pos_of[b];
        });
        refined.order.push_back(std::move(row));
        for (vertex_id v : refined.order.back())
          refined.color_of[v] = static_cast<int>(refined.order.size());
      }
    }
    refined.track_count = static_cast<int>(refined.order.size());

    const auto verdict = validate_track_layout(refined, edges);
    if (!verdict) return refined;
    bool grew = false;
    if (verdict->kind == "intra-track-edge") {
      grew = add_conflict(verdict->first.first, verdict->first.second);
    } else {
      // The crossing pair spans one sub-track pair, so first endpoints share a
      // sub-track (hence an original track) and so do second endpoints.
      const auto& e = verdict->first;
      const auto& f = verdict->second;
      if (l.track_of[e.first] == l.track_of[f.first]) grew |= add_conflict(e.first, f.first);
      if (l.track_of[e.second] == l.track_of[f.second]) grew |= add_conflict(e.second, f.second);
    }
    require(grew, errc::non_termination,
            "refinement found a violation but no conflict left to add");
  }
  fail(errc::non_termination, "track refinement exceeded its round budget");
}

// ─────────────────────────────────────────────────────────────────────────────
// Queue layouts
// ─────────────────────────────────────────────────────────────────────────────

queue_layout track_to_queue(const track_layout& t, const std::vector<vpair>& edges) {
  if (auto viol = validate_track_layout(t, edges))
    fail(errc::malformed_input, "track layout invalid (" + viol->kind + "): " + viol->detail);
  queue_layout q;
  for (const auto& row : t.order) q.order.insert(q.order.end(), row.begin(), row.end());
  q.queue_of.reserve(edges.size());
  std::set<int> labels;
  for (const auto& [u, v] : edges) {
    const int gap = std::abs(t.color_of[u] - t.color_of[v]);
    q.queue_of.push_back(gap);
    labels.insert(gap);
  }
  q.queue_count = static_cast<int>(labels.size());
  return q;
}

std::optional<layout_violation> validate_queue_layout(const queue_layout& q,
                                                      const std::vector<vpair>& edges) {
  require(q.queue_of.size() == edges.size(), errc::malformed_input,
          "queue assignment does not cover the edge list");
  const std::vector<int> pos = positions_of(q.order);
  std::map<int, std::vector<size_t>> by_queue;
  for (size_t i = 0; i < edges.size(); ++i) by_queue[q.queue_of[i]].push_back(i);
  auto span_of = [&](size_t i) {
    const auto& [u, v] = edges[i];
    return std::make_pair(std::min(pos[u], pos[v]), std::max(pos[u], pos[v]));
  };
  for (const auto& [label, members] : by_queue) {
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = i + 1; j < members.size(); ++j) {
        const auto si = span_of(members[i]), sj = span_of(members[j]);
        if (nested(si, sj) || nested(sj, si)) {
          layout_violation viol;
          viol.kind = "queue-nesting";
          viol.first = edges[members[i]];
          viol.second = edges[members[j]];
          viol.detail = "both edges sit in queue " + std::to_string(label);
          return viol;
        }
      }
  }
  return std::nullopt;
}

int min_queues_for_order(const std::vector<vertex_id>& order, const std::vector<vpair>& chords) {
  const std::vector<int> pos = positions_of(order);
  std::vector<std::pair<int, int>> items;
  items.reserve(chords.size());
  for (const auto& [u, v] : chords)
    items.emplace_back(std::min(pos[u], pos[v]), std::max(pos[u], pos[v]));
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second > b.second;
  });
  std::vector<std::vector<std::pair<int, int>>> queues;
  for (const auto& it : items) {
    bool placed = false;
    for (auto& qu : queues) {
      bool clash = false;
      for (const auto& member : qu)
        if (nested(member, it) || nested(it, member)) {
          clash = true;
          break;
        }
      if (!clash) {
        qu.push_back(it);
        placed = true;
        break;
      }
    }
    if (!placed) queues.push_back({it});
  }
  return static_cast<int>(queues.size());
}

oracle_result min_queue_oracle(int n, const std::vector<vpair>& edges) {
  require(n >= 1, errc::graph_too_small, "oracle needs at least one vertex");
  require(n <= 9, errc::graph_too_large, "exhaustive queue oracle supports at most 9 vertices");
  for (const auto& [u, v] : edges)
    require(u >= 0 && u < n && v >= 0 && v < n && u != v, errc::malformed_input,
            "edge endpoint out of range");
  std::vector<vertex_id> order(n);
  std::iota(order.begin(), order.end(), 0);
  oracle_result best;
  best.queues = edges.empty() ? 0 : static_cast<int>(edges.size());
  best.best_order = order;
  if (edges.empty()) return best;
  do {
    // Reversing an order preserves every nesting, so half the orders suffice.
    if (n > 1 && order.front() > order.back()) continue;
    const int q = max_nesting(order, edges);
    if (q < best.queues) {
      best.queues = q;
      best.best_order = order;
      if (q <= 1) break; // one queue is optimal for any nonempty edge set
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

} // namespace tracklay
