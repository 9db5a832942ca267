#include "tracklay/layout.hpp"

#include <algorithm>
#include <string>

namespace tracklay {

void placement_config::validate() const {
  require(j >= 1, errc::config_invalid, "skeleton gap bound must be at least 1");
  require(z > j, errc::config_invalid,
          "crown offset must exceed the skeleton gap bound (z > j)");
  require(d >= 1, errc::config_invalid, "wrap bound must be at least 1");
}

std::vector<std::vector<vertex_id>> ladder_layout::rows() const {
  std::vector<std::vector<vertex_id>> out(track_count);
  for (vertex_id v = 0; v < size(); ++v) {
    if (track_of[v] == 0) continue;
    out[track_of[v] - 1].push_back(v);
  }
  for (auto& row : out)
    std::sort(row.begin(), row.end(),
              [&](vertex_id a, vertex_id b) { return pos_of[a] < pos_of[b]; });
  return out;
}

void ladder_layout::validate() const {
  require(static_cast<int>(pos_of.size()) == size(), errc::invariant_violation,
          "track and position arrays disagree in length");
  for (vertex_id v = 0; v < size(); ++v) {
    if (track_of[v] == 0)
      fail(errc::unplaced_vertex, "vertex " + std::to_string(v) + " has no track");
    require(track_of[v] >= 1 && track_of[v] <= track_count, errc::invariant_violation,
            "vertex " + std::to_string(v) + " sits on an out-of-range track");
  }
  for (const auto& row : rows()) {
    for (int i = 0; i < static_cast<int>(row.size()); ++i)
      require(pos_of[row[i]] == i, errc::invariant_violation,
              "positions on a track must be dense and unique");
  }
}

} // namespace tracklay
