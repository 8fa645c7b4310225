#pragma once

#include <algorithm>
#include <array>
#include <iterator>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <utility>
#include <vector>

#include "mtws/torus/presentation.hpp"

namespace mtws::torus {

struct Elliptic {
  int id;
  int disc;
  int parity;  // -1 just below the disc centre, +1 just above
};

inline int elliptic_id(int disc, int parity) { return 2 * disc + (parity > 0 ? 1 : 0); }

// A saddle of H_theta. (plus_u, plus_v) are the positive elliptic points it joins,
// (minus_u, minus_v) the negative ones; *_steps is the signed number of blocks
// between them along the core, climbing counted positive.
struct Hyperbolic {
  int id;
  int block;
  int parity;  // -1 where the block opens, +1 where it closes
  Rational theta;
  int plus_u, plus_v, plus_steps;
  int minus_u, minus_v, minus_steps;

  std::array<int, 4> neighbours() const {
    return {elliptic_id(plus_u, 1), elliptic_id(plus_v, 1), elliptic_id(minus_u, -1),
            elliptic_id(minus_v, -1)};
  }
};

struct StandardTiling {
  int discs = 0;
  int core_length = 0;
  std::vector<Elliptic> elliptic;
  std::vector<Hyperbolic> hyperbolic;
};

namespace detail {

using Arc = std::pair<int, int>;  // (e+ of one disc, e- of the next disc in the region)

struct Forest {
  std::vector<int> parent;
  explicit Forest(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
};

inline bool closes_loop(const BlockDiscPresentation& p, const std::set<int>& active, int j) {
  Forest f(p.discs);
  for (int i : active) f.parent[f.find(p.blocks[i].lower)] = f.find(p.blocks[i].upper);
  return f.find(p.blocks[j].lower) == f.find(p.blocks[j].upper);
}

inline std::set<Arc> arcs_of(const BlockDiscPresentation& p, const std::set<int>& active) {
  Forest f(p.discs);
  for (int j : active) {
    int a = f.find(p.blocks[j].lower), b = f.find(p.blocks[j].upper);
    if (a == b) throw TorusError(TorusErrc::BadPresentation, "blocks close a loop in a page");
    f.parent[a] = b;
  }
  std::map<int, std::vector<int>> regions;
  for (int d = 0; d < p.discs; ++d) regions[f.find(d)].push_back(d);
  std::set<Arc> arcs;
  for (auto& [root, ds] : regions)
    for (std::size_t i = 0; i < ds.size(); ++i) arcs.insert({ds[i], ds[(i + 1) % ds.size()]});
  return arcs;
}

// Signed core steps from disc a to disc b through the active blocks.
inline int tree_steps(const BlockDiscPresentation& p, const std::set<int>& active, int a, int b) {
  std::vector<std::vector<std::pair<int, int>>> adj(p.discs);
  for (int j : active) {
    adj[p.blocks[j].lower].push_back({p.blocks[j].upper, 1});
    adj[p.blocks[j].upper].push_back({p.blocks[j].lower, -1});
  }
  std::vector<int> dist(p.discs, 0);
  std::vector<bool> seen(p.discs, false);
  std::queue<int> q;
  q.push(a);
  seen[a] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    if (v == b) return dist[v];
    for (auto [w, s] : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        dist[w] = dist[v] + s;
        q.push(w);
      }
  }
  throw TorusError(TorusErrc::BadPresentation, "saddle joins separate regions");
}

inline bool covers_just_before(const Block& b, const Rational& theta) {
  if (b.start < b.end) return b.start < theta && theta <= b.end;
  return theta > b.start || theta <= b.end;
}

}  // namespace detail

// Sweeps the pages H_theta once around. At a shared angle, openings are handled
// before closings, except an opening that would close a loop waits for the closings.
inline StandardTiling tiling_from_blocks(const BlockDiscPresentation& p) {
  check_structure(p);
  StandardTiling t;
  t.discs = p.discs;
  t.core_length = static_cast<int>(p.blocks.size());
  for (int d = 0; d < p.discs; ++d) {
    t.elliptic.push_back({elliptic_id(d, -1), d, -1});
    t.elliptic.push_back({elliptic_id(d, 1), d, 1});
  }

  std::map<Rational, std::pair<std::vector<int>, std::vector<int>>> events;  // angle -> (opens, closes)
  for (std::size_t j = 0; j < p.blocks.size(); ++j) {
    events[p.blocks[j].start].first.push_back(static_cast<int>(j));
    events[p.blocks[j].end].second.push_back(static_cast<int>(j));
  }
  const Rational theta0 = events.begin()->first;
  std::set<int> active;
  for (std::size_t j = 0; j < p.blocks.size(); ++j)
    if (detail::covers_just_before(p.blocks[j], theta0)) active.insert(static_cast<int>(j));
  const std::set<int> initial = active;

  auto fire = [&](int j, int parity, const Rational& theta) {
    auto before = detail::arcs_of(p, active);
    if (parity < 0) active.insert(j); else active.erase(j);
    auto after = detail::arcs_of(p, active);
    std::vector<detail::Arc> removed, added;
    std::set_difference(before.begin(), before.end(), after.begin(), after.end(), std::back_inserter(removed));
    std::set_difference(after.begin(), after.end(), before.begin(), before.end(), std::back_inserter(added));
    if (removed.size() != 2 || added.size() != 2)
      throw TorusError(TorusErrc::BadPresentation, "saddle of block " + std::to_string(j) + " is not 4-valent");
    const auto& joined = parity > 0 ? removed : added;
    const int L = p.blocks[j].lower, U = p.blocks[j].upper;
    detail::Arc other;
    if (joined[0] == detail::Arc{L, U}) other = joined[1];
    else if (joined[1] == detail::Arc{L, U}) other = joined[0];
    else throw TorusError(TorusErrc::BadPresentation, "block " + std::to_string(j) + " does not bound its own arc");
    std::set<int> region = active;
    region.insert(j);
    Hyperbolic h;
    h.id = static_cast<int>(t.hyperbolic.size());
    h.block = j;
    h.parity = parity;
    h.theta = theta;
    h.plus_u = L;
    h.plus_v = other.first;
    h.plus_steps = detail::tree_steps(p, region, L, other.first);
    h.minus_u = U;
    h.minus_v = other.second;
    h.minus_steps = detail::tree_steps(p, region, U, other.second);
    t.hyperbolic.push_back(h);
  };

  for (auto& [theta, oc] : events) {
    auto& [opens, closes] = oc;
    std::sort(opens.begin(), opens.end());
    std::sort(closes.begin(), closes.end());
    std::vector<int> deferred;
    for (int j : opens) {
      if (detail::closes_loop(p, active, j)) deferred.push_back(j);
      else fire(j, -1, theta);
    }
    for (int j : closes) fire(j, 1, theta);
    for (int j : deferred) fire(j, -1, theta);
  }
  if (active != initial) throw TorusError(TorusErrc::BadPresentation, "sweep does not close up");
  return t;
}

}  // namespace mtws::torus

namespace mtws::torus {

// Resizes blocks and glues out discs; the result must still sweep to a tiling.
inline BlockDiscPresentation thin_thicken(const BlockDiscPresentation& p, const std::vector<ResizeStep>& steps) {
  auto q = p;
  auto fail = [](const std::string& m) { throw TorusError(TorusErrc::Disconnects, m); };
  for (const auto& step : steps) {
    if (const auto* r = std::get_if<Resize>(&step)) {
      if (r->block < 0 || r->block >= static_cast<int>(q.blocks.size())) fail("no such block");
      auto s = wrap_angle(r->start), e = wrap_angle(r->end);
      if (s == e) fail("block " + std::to_string(r->block) + " cut through");
      q.blocks[r->block].start = s;
      q.blocks[r->block].end = e;
    } else {
      const int d = std::get<RemoveDisc>(step).disc;
      if (d < 0 || d >= q.discs || q.discs < 2) fail("cannot remove disc " + std::to_string(d));
      const int below = q.block_below(d), above = q.block_above(d);
      if (below < 0 || above < 0 || below == above) fail("disc " + std::to_string(d) + " holds the core together");
      Block merged = q.blocks[below];
      merged.upper = q.blocks[above].upper;
      merged.end = q.blocks[above].end;
      if (merged.lower == merged.upper || merged.start == merged.end) fail("gluing closes the core");
      q.blocks[below] = merged;
      q.blocks.erase(q.blocks.begin() + above);
      for (auto& b : q.blocks) {
        if (b.lower > d) --b.lower;
        if (b.upper > d) --b.upper;
      }
      --q.discs;
    }
  }
  if (!steps.empty()) q.core_braid.reset();
  try {
    tiling_from_blocks(q);
  } catch (const TorusError& e) {
    fail(e.what());
  }
  return q;
}

}  // namespace mtws::torus
