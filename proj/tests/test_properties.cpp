#include <catch_amalgamated.hpp>

#include <random>

#include "mtws/alexander.hpp"
#include "mtws/braid.hpp"
#include "mtws/explore/replay.hpp"
#include "mtws/explore/search.hpp"
#include "oracles.hpp"

using namespace mtws;

namespace {

constexpr int kGrids = 1200;

template <class F>
void for_random_grids(std::uint64_t seed, F&& f) {
  std::mt19937_64 rng(seed);
  for (int k = 0; k < kGrids; ++k) {
    auto d = oracle::random_grid(2 + k % 7, rng);  // n = 2..8
    f(d, rng);
  }
}

const std::set<MoveKind> kAll{MoveKind::Commutation, MoveKind::CyclicFlip, MoveKind::Stabilize,
                              MoveKind::Destabilize};

}  // namespace

TEST_CASE("every move preserves the Alexander polynomial", "[property]") {
  for_random_grids(1001, [](const GridDiagram& d, std::mt19937_64& rng) {
    const auto alex = alexander_polynomial(d);
    auto moves = enumerate_moves(d, kAll);
    REQUIRE_FALSE(moves.empty());
    for (int i = 0; i < 3; ++i) {
      const auto& m = moves[rng() % moves.size()];
      auto e = apply_move(d, m);
      CAPTURE(to_string(m));
      CHECK(alexander_polynomial(e) == alex);
      // the move undoes
      CHECK(apply_move(e, inverse(m, d)) == d);
    }
    auto t = transpose_flip(d);
    CHECK(alexander_polynomial(t) == alex);
  });
  // and the production determinant agrees with the exact oracle
  for_random_grids(1002, [](const GridDiagram& d, std::mt19937_64&) {
    if (d.size() <= 6) CHECK(alexander_polynomial(d) == oracle::grid_alexander(d));
  });
}

TEST_CASE("sl = tb - r matches e - n_b on the braided form", "[property]") {
  for_random_grids(1003, [](const GridDiagram& d, std::mt19937_64&) {
    auto b = to_braided_form(d, BraidAxis::Vertical);
    auto w = braid_word(b);
    CHECK(w.exponent_sum() - w.strands == classical_invariants(d).sl());
    CHECK(w.strands == b.flips);
  });
}

TEST_CASE("stabilize then destabilize is the identity", "[property]") {
  for_random_grids(1004, [](const GridDiagram& d, std::mt19937_64& rng) {
    const int n = d.size();
    const int r = static_cast<int>(rng() % n);
    const bool at_x = rng() % 2;
    const int c = at_x ? d.x_col(r) : d.o_col(r);
    const Compass corner = static_cast<Compass>(rng() % 4);
    auto s = stabilize(d, r, c, corner);
    CHECK(s.size() == n + 1);
    auto ci = classical_invariants(d), cs = classical_invariants(s);
    switch (stabilization_type(at_x ? Marker::X : Marker::O, corner)) {
      case StabilizationType::Positive: CHECK(cs == ClassicalInvariants{ci.tb - 1, ci.r + 1}); break;
      case StabilizationType::Negative: CHECK(cs == ClassicalInvariants{ci.tb - 1, ci.r - 1}); break;
      case StabilizationType::Neutral: CHECK(cs == ci); break;
    }
    bool undone = false;
    for (const auto& site : destabilization_sites(s))
      if (destabilize(s, site) == d) undone = true;
    CHECK(undone);
  });
}

TEST_CASE("transpose_flip is an involution fixing tb and negating r", "[property]") {
  for_random_grids(1005, [](const GridDiagram& d, std::mt19937_64&) {
    auto t = transpose_flip(d);
    CHECK(transpose_flip(t) == d);
    auto a = classical_invariants(d), b = classical_invariants(t);
    CHECK(b.tb == a.tb);
    CHECK(b.r == -a.r);
  });
}

TEST_CASE("search scripts replay exactly", "[property]") {
  const std::set<MoveKind> iso{MoveKind::Commutation, MoveKind::CyclicFlip, MoveKind::Destabilize};
  for_random_grids(1006, [&](const GridDiagram& d, std::mt19937_64& rng) {
    auto target = d;
    for (int i = 0; i < 2; ++i) {
      auto ms = search_moves(target, iso, 64);
      if (ms.empty()) break;
      target = apply_move(target, ms[rng() % ms.size()]);
    }
    SearchBudget b;
    b.max_depth = 3;
    b.workers = 1;
    auto res = search_equivalence(d, [&](const GridDiagram& g) { return g == target; }, iso, b);
    REQUIRE(res.found);
    CHECK(res.script.steps.size() <= 2u);
    CHECK(replay(res.script, d) == target);
    auto text = format_script(res.script);
    CHECK(replay(parse_script(text), d) == target);
  });
}
