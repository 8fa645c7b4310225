// Development tool: hunts for the vertical-axis flype script on the cable fixture.
// Random walk from S+(L+) through commutations, cyclic flips and tb-nondecreasing
// destabilizations; a walk that climbs to tb = 6 crossed the flype at its first
// positive destabilization. Prints the macro (stabilization + isotopy + destab).
#include <chrono>
#include <iostream>
#include <random>

#include "mtws/explore/search.hpp"
#include "mtws/torus/cable.hpp"

using namespace mtws;

int main(int argc, char** argv) {
  const int walks = argc > 1 ? std::atoi(argv[1]) : 200;
  const int steps = argc > 2 ? std::atoi(argv[2]) : 3000;
  const int probe_depth = argc > 3 ? std::atoi(argv[3]) : 4;
  const auto lplus = torus::cable_on_torus(torus::trefoil_presentation(11));
  std::vector<Move> stabs;
  for (int r = 0; r < lplus.size(); ++r)
    for (int c : {lplus.x_col(r), lplus.o_col(r)}) {
      Marker m;
      lplus.has_marker(r, c, &m);
      stabs.push_back(Move::stabilization(r, c, stabilization_corner(m, StabilizationType::Positive)));
    }
  std::size_t best = SIZE_MAX;
  for (int w = 0; w < walks; ++w) {
    std::mt19937_64 rng(w);
    const Move stab = stabs[w % stabs.size()];
    GridDiagram cur = apply_move(lplus, stab);
    std::vector<Move> iso;
    for (int s = 0; s < steps && iso.size() < best; ++s) {
      std::optional<DestabilizationSite> neutral;
      bool done = false;
      for (const auto& site : destabilization_sites(cur)) {
        if (site.type == StabilizationType::Neutral && !neutral) neutral = site;
        if (site.type != StabilizationType::Positive) continue;
        auto after = destabilize(cur, site);
        SearchBudget b;
        b.max_depth = probe_depth;
        b.max_states = 100000;
        b.wall_clock_seconds = 20;
        b.workers = 1;
        auto res = find_destabilization(after, +1, b);
        if (!res.found) continue;
        std::size_t len = iso.size() + res.script.steps.size();
        if (len < best) {
          best = len;
          std::cout << "# walk " << w << " isotopy " << iso.size() << " probe " << res.script.steps.size() << "\n";
          std::cout << to_string(stab) << "\n";
          for (auto& m : iso) std::cout << to_string(m) << "\n";
          std::cout << "DESTAB " << site.row << " " << site.col << "\n";
          for (auto& m : res.script.steps) std::cout << "# " << to_string(m) << "\n";
          std::cout.flush();
        }
        done = true;
        break;
      }
      if (done) break;
      Move m;
      if (neutral) {
        m = Move::destabilization(neutral->row, neutral->col);
      } else {
        auto ms = search_moves(cur, {MoveKind::Commutation, MoveKind::CyclicFlip}, 64);
        m = ms[std::uniform_int_distribution<std::size_t>(0, ms.size() - 1)(rng)];
      }
      cur = apply_move(cur, m);
      iso.push_back(m);
    }
  }
  return best == SIZE_MAX ? 2 : 0;
}
