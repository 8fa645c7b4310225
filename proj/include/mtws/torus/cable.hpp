#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "mtws/grid_diagram.hpp"
#include "mtws/torus/graph.hpp"

namespace mtws::torus {

namespace detail {

struct CableVertical {
  Rational angle;
  int bottom_disc;  // disc at which the following horizontal arc sits
  bool behind;
};

// The knot descends the fronts of the blocks two at a time, sitting where the
// two blocks meet; one vertical instead hides behind `behind_block`.
inline std::vector<CableVertical> cable_verticals(const BlockDiscPresentation& p, int meridian_count,
                                                  int longitude_count, int behind_block) {
  auto bad = [](const std::string& m) { throw TorusError(TorusErrc::BadPresentation, m); };
  try {
    check_structure(p);
  } catch (const TorusError& e) {
    bad(e.what());
  }
  if (!is_standard(p)) bad("blocks do not share angular positions");
  if (longitude_count != 2) bad("verticals span exactly two blocks");
  if (behind_block < 0 || behind_block >= static_cast<int>(p.blocks.size())) bad("behind block out of range");
  const int visits = meridian_count * static_cast<int>(p.blocks.size());
  if (meridian_count < 1 || (visits - 1) % longitude_count != 0) bad("passes do not pair up");

  std::vector<int> seq;
  for (int j = behind_block; static_cast<int>(seq.size()) < visits; j = p.block_below(p.blocks[j].lower))
    seq.push_back(j);

  std::vector<CableVertical> out;
  const auto& hb = p.blocks[behind_block];
  out.push_back({wrap_angle(hb.start + hb.width() / 2), hb.lower, true});
  for (int i = 1; i < visits; i += 2) {
    int upper = seq[i], lower = seq[i + 1];
    out.push_back({p.blocks[upper].start, p.blocks[lower].lower, false});
  }
  return out;
}

}  // namespace detail

// Columns run in angular order from theta = 0, a later pass standing left of an
// earlier one at the same angle. Rows run down the axis from the cut between
// disc 0 and disc 1, an earlier pass above a later one on the same disc.
inline GridDiagram cable_on_torus(const BlockDiscPresentation& p, int meridian_count = 3, int longitude_count = 2,
                                  int behind_block = -1) {
  if (behind_block < 0) behind_block = static_cast<int>(p.blocks.size()) - 1;
  auto verts = detail::cable_verticals(p, meridian_count, longitude_count, behind_block);
  const int n = static_cast<int>(verts.size());
  std::vector<int> by_col(n), by_row(n);
  std::iota(by_col.begin(), by_col.end(), 0);
  std::iota(by_row.begin(), by_row.end(), 0);
  std::sort(by_col.begin(), by_col.end(), [&](int a, int b) {
    if (verts[a].angle != verts[b].angle) return verts[a].angle < verts[b].angle;
    return a > b;
  });
  auto height = [&](int k) { return verts[k].bottom_disc == 0 ? p.discs : verts[k].bottom_disc; };
  std::sort(by_row.begin(), by_row.end(), [&](int a, int b) {
    if (height(a) != height(b)) return height(a) > height(b);
    return a < b;
  });
  std::vector<int> col(n), row(n);
  for (int i = 0; i < n; ++i) col[by_col[i]] = i, row[by_row[i]] = i;
  std::vector<int> x(n), o(n);
  for (int k = 0; k < n; ++k) {
    o[row[k]] = col[k];
    x[row[k]] = col[(k + 1) % n];
  }
  try {
    return GridDiagram(x, o);
  } catch (const GridError& e) {
    throw TorusError(TorusErrc::BadPresentation, e.what());
  }
}

// Homology class traced by the cable on the torus, in C'_K coordinates:
// one longitude per pass along the core, one negative meridian per front vertical.
inline KnotTrace cable_trace(const BlockDiscPresentation& p, int meridian_count = 3, int longitude_count = 2,
                             int behind_block = -1) {
  if (behind_block < 0) behind_block = static_cast<int>(p.blocks.size()) - 1;
  auto verts = detail::cable_verticals(p, meridian_count, longitude_count, behind_block);
  auto front = std::count_if(verts.begin(), verts.end(), [](const auto& v) { return !v.behind; });
  return {{meridian_count, -static_cast<std::int64_t>(front)}};
}

}  // namespace mtws::torus
