#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mtws/grid_diagram.hpp"
#include "mtws/invariants.hpp"

namespace mtws {

enum class MoveKind : std::uint8_t { Commutation, CyclicFlip, Stabilize, Destabilize, TransposeFlip, Flype };
enum class Axis : std::uint8_t { Row, Column };
enum class Side : std::uint8_t { Top, Bottom, Left, Right };

/// Classical effect of a (de)stabilization. `Neutral` covers the corner
/// insertions that leave (tb, r) alone (they change the diagram, not the
/// Legendrian class' invariants, and only show up transversally).
enum class StabilizationType : std::uint8_t { Positive, Negative, Neutral };

inline const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::Commutation: return "COMMUTE";
    case MoveKind::CyclicFlip: return "FLIP";
    case MoveKind::Stabilize: return "STAB";
    case MoveKind::Destabilize: return "DESTAB";
    case MoveKind::TransposeFlip: return "TRANSPOSE";
    case MoveKind::Flype: return "FLYPE";
  }
  return "?";
}
inline const char* to_string(Side s) {
  switch (s) {
    case Side::Top: return "top";
    case Side::Bottom: return "bottom";
    case Side::Left: return "left";
    case Side::Right: return "right";
  }
  return "?";
}
inline const char* to_string(StabilizationType t) {
  switch (t) {
    case StabilizationType::Positive: return "+";
    case StabilizationType::Negative: return "-";
    case StabilizationType::Neutral: return "0";
  }
  return "?";
}

/// A sited rewrite. Which fields matter depends on `kind`:
///  Commutation: axis, index (lines index and index+1)
///  CyclicFlip:  side
///  Stabilize:   row, col (the marker), corner (where the empty cell lands)
///  Destabilize: row, col (top-left cell of the 2x2 block)
///  Flype:       index (template site), axis (Column = vertical braid axis)
struct Move {
  MoveKind kind = MoveKind::Commutation;
  Axis axis = Axis::Row;
  Side side = Side::Top;
  int index = 0;
  int row = 0;
  int col = 0;
  Compass corner = Compass::NE;

  static Move commutation(Axis a, int i) { return {MoveKind::Commutation, a, Side::Top, i}; }
  static Move cyclic_flip(Side s) { return {MoveKind::CyclicFlip, Axis::Row, s}; }
  static Move stabilization(int r, int c, Compass e) {
    return {MoveKind::Stabilize, Axis::Row, Side::Top, 0, r, c, e};
  }
  static Move destabilization(int r, int c) { return {MoveKind::Destabilize, Axis::Row, Side::Top, 0, r, c}; }
  static Move transpose() { return {MoveKind::TransposeFlip}; }

  friend bool operator==(const Move&, const Move&) = default;
};

inline std::string to_string(const Move& m) {
  std::string s = to_string(m.kind);
  switch (m.kind) {
    case MoveKind::Commutation:
      return s + (m.axis == Axis::Row ? " row " : " col ") + std::to_string(m.index);
    case MoveKind::CyclicFlip: return s + " " + to_string(m.side);
    case MoveKind::Stabilize:
      return s + " " + std::to_string(m.row) + " " + std::to_string(m.col) + " " + to_string(m.corner);
    case MoveKind::Destabilize: return s + " " + std::to_string(m.row) + " " + std::to_string(m.col);
    case MoveKind::TransposeFlip: return s;
    case MoveKind::Flype: return s + (m.axis == Axis::Column ? " v " : " h ") + std::to_string(m.index);
  }
  return s;
}

namespace detail {

struct Span {
  int lo, hi;
};
inline Span row_span(const GridDiagram& d, int r) {
  return {std::min(d.x_col(r), d.o_col(r)), std::max(d.x_col(r), d.o_col(r))};
}
inline Span col_span(const GridDiagram& d, int c) {
  return {std::min(d.x_row(c), d.o_row(c)), std::max(d.x_row(c), d.o_row(c))};
}
/// Exchange is a planar isotopy iff the spans neither interleave nor share
/// an endpoint line. Shared endpoints look harmless but change tb.
inline bool spans_commute(Span a, Span b) {
  const bool disjoint = a.hi < b.lo || b.hi < a.lo;
  const bool nested = (a.lo < b.lo && b.hi < a.hi) || (b.lo < a.lo && a.hi < b.hi);
  return disjoint || nested;
}

struct Cells {
  int n;
  std::vector<int> x, o;  // per row; -1 if unset
};

}  // namespace detail

inline bool commutation_legal(const GridDiagram& d, Axis axis, int i) {
  if (i < 0 || i + 1 >= d.size()) return false;
  if (axis == Axis::Row) return detail::spans_commute(detail::row_span(d, i), detail::row_span(d, i + 1));
  return detail::spans_commute(detail::col_span(d, i), detail::col_span(d, i + 1));
}

inline GridDiagram apply_commutation(const GridDiagram& d, Axis axis, int i) {
  if (i < 0 || i + 1 >= d.size()) throw GridError(GridErrc::OutOfRange, "commutation index out of range");
  if (!commutation_legal(d, axis, i)) throw GridError(GridErrc::Interleaved, "spans interleave");
  std::vector<int> x(d.x_positions().begin(), d.x_positions().end());
  std::vector<int> o(d.o_positions().begin(), d.o_positions().end());
  if (axis == Axis::Row) {
    std::swap(x[i], x[i + 1]);
    std::swap(o[i], o[i + 1]);
  } else {
    auto swap_col = [i](int& c) {
      if (c == i) c = i + 1;
      else if (c == i + 1) c = i;
    };
    for (int& c : x) swap_col(c);
    for (int& c : o) swap_col(c);
  }
  return GridDiagram(std::move(x), std::move(o));
}

/// Moves the extreme line on `side` to the opposite extreme.
inline GridDiagram cyclic_flip(const GridDiagram& d, Side side) {
  const int n = d.size();
  std::vector<int> x(d.x_positions().begin(), d.x_positions().end());
  std::vector<int> o(d.o_positions().begin(), d.o_positions().end());
  switch (side) {
    case Side::Top:
      std::rotate(x.begin(), x.begin() + 1, x.end());
      std::rotate(o.begin(), o.begin() + 1, o.end());
      break;
    case Side::Bottom:
      std::rotate(x.begin(), x.end() - 1, x.end());
      std::rotate(o.begin(), o.end() - 1, o.end());
      break;
    case Side::Left:
      for (int& c : x) c = (c + n - 1) % n;
      for (int& c : o) c = (c + n - 1) % n;
      break;
    case Side::Right:
      for (int& c : x) c = (c + 1) % n;
      for (int& c : o) c = (c + 1) % n;
      break;
  }
  return GridDiagram(std::move(x), std::move(o));
}

struct FlipResult {
  GridDiagram diagram;
  bool preserved_classical;
};

inline FlipResult apply_cyclic_flip(const GridDiagram& d, Side side) {
  GridDiagram out = cyclic_flip(d, side);
  const bool same = classical_invariants(out) == classical_invariants(d);
  return {std::move(out), same};
}

inline Side inverse(Side s) {
  switch (s) {
    case Side::Top: return Side::Bottom;
    case Side::Bottom: return Side::Top;
    case Side::Left: return Side::Right;
    case Side::Right: return Side::Left;
  }
  return s;
}

/// Reflection in the anti-diagonal followed by orientation reversal:
/// cell (i, j) goes to (n-1-j, n-1-i) and markers keep their labels.
inline GridDiagram transpose_flip(const GridDiagram& d) {
  const int n = d.size();
  std::vector<int> x(n), o(n);
  for (int i = 0; i < n; ++i) {
    x[n - 1 - d.x_col(i)] = n - 1 - i;
    o[n - 1 - d.o_col(i)] = n - 1 - i;
  }
  return GridDiagram(std::move(x), std::move(o));
}

/// Classical effect of inserting a 2x2 block whose empty cell is at the
/// `corner` position and replaces a marker of type `m`. Fixed by the cusp
/// calibration (checked exhaustively in the test suite).
inline StabilizationType stabilization_type(Marker m, Compass corner) {
  if (corner == Compass::NE || corner == Compass::SW) return StabilizationType::Neutral;
  const bool nw = corner == Compass::NW;
  if (m == Marker::X) return nw ? StabilizationType::Positive : StabilizationType::Negative;
  return nw ? StabilizationType::Negative : StabilizationType::Positive;
}

/// The corner at which to place the empty cell when splitting a marker of
/// type `m` so as to get the requested classical effect.
inline Compass stabilization_corner(Marker m, StabilizationType t) {
  switch (t) {
    case StabilizationType::Positive: return m == Marker::X ? Compass::NW : Compass::SE;
    case StabilizationType::Negative: return m == Marker::X ? Compass::SE : Compass::NW;
    case StabilizationType::Neutral: return Compass::NE;
  }
  return Compass::NE;
}

/// Splits the marker at (row, col): it becomes the empty cell of a new 2x2
/// block sitting at `corner` of the block; the block's opposite cell gets the
/// other marker type, the remaining two cells the original type.
inline GridDiagram stabilize(const GridDiagram& d, int row, int col, Compass corner) {
  const int n = d.size();
  Marker m;
  if (row < 0 || row >= n || col < 0 || col >= n || !d.has_marker(row, col, &m))
    throw GridError(GridErrc::OutOfRange, "no marker at stabilization site");
  const bool north = corner == Compass::NE || corner == Compass::NW;
  const bool west = corner == Compass::NW || corner == Compass::SW;
  const int new_row = north ? row + 1 : row;
  const int new_col = west ? col + 1 : col;
  std::vector<int> x(n + 1, -1), o(n + 1, -1);
  auto shift_c = [&](int c) { return c + (c >= new_col ? 1 : 0); };
  for (int r = 0; r < n; ++r) {
    const int nr = r + (r >= new_row ? 1 : 0);
    if (!(r == row && m == Marker::X)) x[nr] = shift_c(d.x_col(r));
    if (!(r == row && m == Marker::O)) o[nr] = shift_c(d.o_col(r));
  }
  const int er = north ? row : row + 1, ec = west ? col : col + 1;
  const int fr = north ? er + 1 : er - 1, fc = west ? ec + 1 : ec - 1;
  auto& same = m == Marker::X ? x : o;
  auto& other = m == Marker::X ? o : x;
  other[fr] = fc;
  same[er] = fc;
  same[fr] = ec;
  return GridDiagram(std::move(x), std::move(o));
}

inline GridDiagram stabilize(const GridDiagram& d, int row, int col, StabilizationType t) {
  Marker m;
  if (row < 0 || row >= d.size() || col < 0 || col >= d.size() || !d.has_marker(row, col, &m))
    throw GridError(GridErrc::OutOfRange, "no marker at stabilization site");
  return stabilize(d, row, col, stabilization_corner(m, t));
}

struct DestabilizationSite {
  int row, col;          // top-left cell of the 2x2 block
  Marker doubled;        // marker type occurring twice in the block
  Compass empty_corner;  // position of the empty cell within the block
  StabilizationType type;
};

inline std::optional<DestabilizationSite> destabilization_at(const GridDiagram& d, int row, int col) {
  const int n = d.size();
  if (row < 0 || col < 0 || row + 1 >= n || col + 1 >= n) return std::nullopt;
  int empties = 0, xs = 0;
  Compass empty = Compass::NE;
  const Compass pos[2][2] = {{Compass::NW, Compass::NE}, {Compass::SW, Compass::SE}};
  for (int dr = 0; dr < 2; ++dr)
    for (int dc = 0; dc < 2; ++dc) {
      Marker m;
      if (!d.has_marker(row + dr, col + dc, &m)) {
        ++empties;
        empty = pos[dr][dc];
      } else if (m == Marker::X) {
        ++xs;
      }
    }
  if (empties != 1) return std::nullopt;
  const Marker doubled = xs == 2 ? Marker::X : Marker::O;
  return DestabilizationSite{row, col, doubled, empty, stabilization_type(doubled, empty)};
}

inline std::vector<DestabilizationSite> destabilization_sites(const GridDiagram& d) {
  std::vector<DestabilizationSite> out;
  if (d.size() <= 2) return out;
  for (int r = 0; r + 1 < d.size(); ++r)
    for (int c = 0; c + 1 < d.size(); ++c)
      if (auto s = destabilization_at(d, r, c)) out.push_back(*s);
  return out;
}

/// Removes the row and column of the block's lone marker and moves the
/// doubled marker type onto the empty cell.
inline GridDiagram destabilize(const GridDiagram& d, int row, int col) {
  const auto site = destabilization_at(d, row, col);
  if (!site || d.size() <= 2) throw GridError(GridErrc::NoDestabilizationHere, "no destabilization at site");
  const int n = d.size();
  const bool north = site->empty_corner == Compass::NE || site->empty_corner == Compass::NW;
  const bool west = site->empty_corner == Compass::NW || site->empty_corner == Compass::SW;
  const int er = north ? row : row + 1, ec = west ? col : col + 1;
  const int lr = north ? row + 1 : row, lc = west ? col + 1 : col;  // the lone marker is opposite
  std::vector<int> x, o;
  x.reserve(n - 1);
  o.reserve(n - 1);
  auto shift_c = [&](int c) { return c - (c > lc ? 1 : 0); };
  for (int r = 0; r < n; ++r) {
    if (r == lr) continue;
    int xc = d.x_col(r), oc = d.o_col(r);
    if (r == er) {
      if (site->doubled == Marker::X) xc = ec;
      else oc = ec;
    }
    x.push_back(shift_c(xc));
    o.push_back(shift_c(oc));
  }
  return GridDiagram(std::move(x), std::move(o));
}

inline GridDiagram destabilize(const GridDiagram& d, const DestabilizationSite& s) { return destabilize(d, s.row, s.col); }

/// Applies any move except Flype (which needs the template fixtures).
inline GridDiagram apply_move(const GridDiagram& d, const Move& m) {
  switch (m.kind) {
    case MoveKind::Commutation: return apply_commutation(d, m.axis, m.index);
    case MoveKind::CyclicFlip: return cyclic_flip(d, m.side);
    case MoveKind::Stabilize: return stabilize(d, m.row, m.col, m.corner);
    case MoveKind::Destabilize: return destabilize(d, m.row, m.col);
    case MoveKind::TransposeFlip: return transpose_flip(d);
    case MoveKind::Flype: break;
  }
  throw GridError(GridErrc::OutOfRange, "flype must go through the flype module");
}

/// The move undoing `m` when applied to `before` (the diagram `m` was applied to).
inline Move inverse(const Move& m, const GridDiagram& before) {
  switch (m.kind) {
    case MoveKind::Commutation:
    case MoveKind::TransposeFlip: return m;
    case MoveKind::CyclicFlip: return Move::cyclic_flip(inverse(m.side));
    // The new block's top-left cell is the split marker's cell.
    case MoveKind::Stabilize: return Move::destabilization(m.row, m.col);
    case MoveKind::Destabilize: {
      // The doubled marker lands on the block's top-left cell; splitting it
      // with the empty cell at the same corner restores the block.
      const auto site = destabilization_at(before, m.row, m.col);
      if (!site) throw GridError(GridErrc::NoDestabilizationHere, "no destabilization at site");
      return Move::stabilization(m.row, m.col, site->empty_corner);
    }
    case MoveKind::Flype: break;
  }
  return m;
}

/// All applicable moves of the requested kinds, ordered by kind, then
/// axis/side, then ascending indices. Flype is not enumerated here.
inline std::vector<Move> enumerate_moves(const GridDiagram& d, const std::set<MoveKind>& kinds) {
  std::vector<Move> out;
  const int n = d.size();
  if (kinds.count(MoveKind::Commutation)) {
    for (Axis a : {Axis::Row, Axis::Column})
      for (int i = 0; i + 1 < n; ++i)
        if (commutation_legal(d, a, i)) out.push_back(Move::commutation(a, i));
  }
  if (kinds.count(MoveKind::CyclicFlip)) {
    for (Side s : {Side::Top, Side::Bottom, Side::Left, Side::Right}) out.push_back(Move::cyclic_flip(s));
  }
  if (kinds.count(MoveKind::Stabilize)) {
    for (int r = 0; r < n; ++r) {
      const int a = std::min(d.x_col(r), d.o_col(r)), b = std::max(d.x_col(r), d.o_col(r));
      for (int c : {a, b})
        for (Compass k : {Compass::NE, Compass::NW, Compass::SE, Compass::SW})
          out.push_back(Move::stabilization(r, c, k));
    }
  }
  if (kinds.count(MoveKind::Destabilize)) {
    for (const auto& s : destabilization_sites(d)) out.push_back(Move::destabilization(s.row, s.col));
  }
  if (kinds.count(MoveKind::TransposeFlip)) out.push_back(Move::transpose());
  return out;
}

}  // namespace mtws
