#include <catch_amalgamated.hpp>

#include "mtws/alexander.hpp"
#include "mtws/grid_diagram.hpp"
#include "mtws/invariants.hpp"
#include "mtws/moves.hpp"
#include "oracles.hpp"

using namespace mtws;

namespace {
const GridDiagram kUnknot({1, 0}, {0, 1});
const GridDiagram kTrefoil({2, 3, 4, 0, 1}, {0, 1, 2, 3, 4});

GridErrc error_of(std::vector<int> x, std::vector<int> o) {
  try {
    GridDiagram d(std::move(x), std::move(o));
  } catch (const GridError& e) {
    return e.code();
  }
  FAIL("expected an error");
  return GridErrc::Parse;
}

// Brute-force crossing count straight from the cell picture.
int brute_writhe(const GridDiagram& d) {
  const int n = d.size();
  int w = 0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      const bool in_row = c > std::min(d.x_col(r), d.o_col(r)) && c < std::max(d.x_col(r), d.o_col(r));
      const bool in_col = r > std::min(d.x_row(c), d.o_row(c)) && r < std::max(d.x_row(c), d.o_row(c));
      if (!in_row || !in_col) continue;
      // horizontal direction (dx, 0), vertical (0, dy) in screen coords with y up
      const int hx = d.x_col(r) > d.o_col(r) ? 1 : -1;
      const int vy = d.o_row(c) < d.x_row(c) ? 1 : -1;
      // over = vertical; sign = (over x under) . z
      w += (0 * 0 - vy * hx) > 0 ? 1 : -1;
    }
  return w;
}
}  // namespace

TEST_CASE("validation rejects malformed grids") {
  CHECK(error_of({0, 1}, {0, 1}) == GridErrc::CoincidentMarkers);
  CHECK(error_of({1, 0, 3, 2}, {0, 1, 2, 3}) == GridErrc::MultiComponent);
  CHECK(error_of({0, 0}, {1, 1}) == GridErrc::NotPermutation);
  CHECK(error_of({0}, {0}) == GridErrc::TooSmall);
  CHECK(error_of({1, 0}, {0}) == GridErrc::NotPermutation);
  CHECK_NOTHROW(validate_grid({1, 0}, {0, 1}));
}

TEST_CASE("grid file round trip") {
  const std::string text = format_grid(kTrefoil);
  CHECK(text == "5\nO.X..\n.O.X.\n..O.X\nX..O.\n.X..O\n");
  CHECK(parse_grid(text) == kTrefoil);
  CHECK_THROWS_AS(parse_grid("2\nXO\nXO\n"), GridError);
  CHECK_THROWS_AS(parse_grid("2\nX.\n.O\n"), GridError);
  CHECK_THROWS_AS(parse_grid("2\nOX\nXO\njunk\n"), GridError);
}

TEST_CASE("writhe") {
  CHECK(writhe(kUnknot) == 0);
  CHECK(writhe(kTrefoil) == 3);
  CHECK(crossings(kTrefoil).size() == 3);
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    auto d = oracle::random_grid(2 + k % 7, rng);
    CHECK(writhe(d) == brute_writhe(d));
  }
}

TEST_CASE("cusp convention calibration") {
  CHECK(classical_invariants(kUnknot) == ClassicalInvariants{-1, 0});
  CHECK(classical_invariants(kTrefoil).tb == 1);
  CHECK(classical_invariants(kTrefoil).r == 0);
  // Both candidate conventions agree on the unknot; only one gives the
  // trefoil its maximal tb.
  CHECK(classical_invariants(kUnknot, CuspConvention::NortheastSouthwest).tb == -1);
  CHECK(classical_invariants(kTrefoil, CuspConvention::NortheastSouthwest).tb != 1);
}

TEST_CASE("corner census") {
  auto census = corner_census(kUnknot);
  int total = 0;
  for (auto [k, v] : census) total += v;
  CHECK(total == 4);
  std::mt19937_64 rng(5);
  for (int k = 0; k < 300; ++k) {
    auto d = oracle::random_grid(2 + k % 7, rng);
    int sum = 0, ne_sw = 0, nw_se = 0;
    for (auto [t, v] : corner_census(d)) {
      sum += v;
      (t.kind == Compass::NE || t.kind == Compass::SW ? ne_sw : nw_se) += v;
    }
    CHECK(sum == 2 * d.size());
    CHECK(ne_sw + nw_se == 2 * d.size());
    CHECK(nw_se % 2 == 0);  // tb is an integer
    CHECK(nw_se == 2 * (writhe(d) - classical_invariants(d).tb));
  }
}

TEST_CASE("alexander polynomial") {
  CHECK(alexander_polynomial(kUnknot) == LaurentPoly(1));
  CHECK(alexander_polynomial(kTrefoil) == LaurentPoly::from_coefficients({1, -1, 1}));
  CHECK(oracle::grid_alexander(kTrefoil) == LaurentPoly::from_coefficients({1, -1, 1}));
  std::mt19937_64 rng(7);
  for (int k = 0; k < 300; ++k) {
    auto d = oracle::random_grid(2 + k % 7, rng);
    const auto a = alexander_polynomial(d);
    INFO(format_grid(d));
    CHECK(a == oracle::grid_alexander(d));
    CHECK(a == a.inverted().normalized());
  }
}

TEST_CASE("commutation legality") {
  // rows 0 and 1 of this grid have interleaved spans [0,2] and [1,3]
  const GridDiagram d({2, 3, 0, 1}, {0, 1, 3, 2});
  CHECK(d.size() == 4);
  CHECK_THROWS_AS(apply_commutation(d, Axis::Row, 0), GridError);
  try {
    apply_commutation(d, Axis::Row, 0);
  } catch (const GridError& e) {
    CHECK(e.code() == GridErrc::Interleaved);
  }
  CHECK_THROWS_AS(apply_commutation(d, Axis::Row, 3), GridError);
}

TEST_CASE("transpose flip") {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    auto d = oracle::random_grid(2 + k % 7, rng);
    auto t = transpose_flip(d);
    CHECK(transpose_flip(t) == d);
    auto a = classical_invariants(d), b = classical_invariants(t);
    CHECK(b.tb == a.tb);
    CHECK(b.r == -a.r);
    CHECK(alexander_polynomial(t) == alexander_polynomial(d));
  }
}

TEST_CASE("stabilization dictionary") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 200; ++k) {
    auto d = oracle::random_grid(2 + k % 6, rng);
    const auto base = classical_invariants(d);
    for (const Move& m : enumerate_moves(d, {MoveKind::Stabilize})) {
      auto s = apply_move(d, m);
      CHECK(s.size() == d.size() + 1);
      Marker mk;
      REQUIRE(d.has_marker(m.row, m.col, &mk));
      const auto inv = classical_invariants(s);
      switch (stabilization_type(mk, m.corner)) {
        case StabilizationType::Positive: CHECK(inv == ClassicalInvariants{base.tb - 1, base.r + 1}); break;
        case StabilizationType::Negative: CHECK(inv == ClassicalInvariants{base.tb - 1, base.r - 1}); break;
        case StabilizationType::Neutral: CHECK(inv == base); break;
      }
      auto back = apply_move(s, inverse(m, d));
      CHECK(back == d);
      auto site = destabilization_at(s, m.row, m.col);
      REQUIRE(site);
      CHECK(site->type == stabilization_type(mk, m.corner));
    }
  }
}

TEST_CASE("destabilization") {
  CHECK(destabilization_sites(kUnknot).empty());
  CHECK_THROWS_AS(destabilize(kUnknot, 0, 0), GridError);
  std::mt19937_64 rng(13);
  for (int k = 0; k < 200; ++k) {
    auto d = oracle::random_grid(3 + k % 6, rng);
    for (const auto& s : destabilization_sites(d)) {
      const Move m = Move::destabilization(s.row, s.col);
      auto e = apply_move(d, m);
      CHECK(apply_move(e, inverse(m, d)) == d);
    }
  }
}
