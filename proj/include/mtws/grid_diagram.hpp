#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mtws {

enum class GridErrc {
  TooSmall,
  NotPermutation,
  CoincidentMarkers,
  MultiComponent,
  Interleaved,
  OutOfRange,
  NoDestabilizationHere,
  Parse,
};

inline const char* to_string(GridErrc e) {
  switch (e) {
    case GridErrc::TooSmall: return "TooSmall";
    case GridErrc::NotPermutation: return "NotPermutation";
    case GridErrc::CoincidentMarkers: return "CoincidentMarkers";
    case GridErrc::MultiComponent: return "MultiComponent";
    case GridErrc::Interleaved: return "Interleaved";
    case GridErrc::OutOfRange: return "OutOfRange";
    case GridErrc::NoDestabilizationHere: return "NoDestabilizationHere";
    case GridErrc::Parse: return "Parse";
  }
  return "?";
}

class GridError : public std::runtime_error {
 public:
  GridError(GridErrc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  GridErrc code() const noexcept { return code_; }

 private:
  GridErrc code_;
};

enum class Marker : std::uint8_t { X, O };

/// An oriented rectangular knot diagram stored as two permutations.
///
/// Row 0 is the top row and column 0 the leftmost column. Row i carries an X
/// in column x_positions()[i] and an O in column o_positions()[i]. The knot
/// runs horizontally from O to X in each row and vertically from X to O in
/// each column; vertical strands cross over horizontal ones.
class GridDiagram {
 public:
  GridDiagram() = default;

  /// Validating constructor. Throws GridError.
  GridDiagram(std::vector<int> x_positions, std::vector<int> o_positions)
      : x_(std::move(x_positions)), o_(std::move(o_positions)) {
    const int n = static_cast<int>(x_.size());
    if (o_.size() != x_.size()) {
      throw GridError(GridErrc::NotPermutation, "X and O sequences differ in length");
    }
    if (n < 2) throw GridError(GridErrc::TooSmall, "grid size must be at least 2");
    x_row_.assign(n, -1);
    o_row_.assign(n, -1);
    for (int i = 0; i < n; ++i) {
      if (x_[i] < 0 || x_[i] >= n || x_row_[x_[i]] != -1 || o_[i] < 0 || o_[i] >= n ||
          o_row_[o_[i]] != -1) {
        throw GridError(GridErrc::NotPermutation, "markers do not form permutations");
      }
      x_row_[x_[i]] = i;
      o_row_[o_[i]] = i;
    }
    for (int i = 0; i < n; ++i) {
      if (x_[i] == o_[i]) {
        throw GridError(GridErrc::CoincidentMarkers, "X and O share cell in row " + std::to_string(i));
      }
    }
    if (count_components() != 1) {
      throw GridError(GridErrc::MultiComponent,
                      "trace closes into " + std::to_string(count_components()) + " components");
    }
  }

  int size() const noexcept { return static_cast<int>(x_.size()); }

  int x_col(int row) const { return x_[row]; }
  int o_col(int row) const { return o_[row]; }
  int x_row(int col) const { return x_row_[col]; }
  int o_row(int col) const { return o_row_[col]; }

  std::span<const int> x_positions() const noexcept { return x_; }
  std::span<const int> o_positions() const noexcept { return o_; }

  /// Marker at (row, col), if any.
  bool has_marker(int row, int col, Marker* m = nullptr) const {
    if (x_[row] == col) {
      if (m) *m = Marker::X;
      return true;
    }
    if (o_[row] == col) {
      if (m) *m = Marker::O;
      return true;
    }
    return false;
  }

  /// Horizontal direction of the row segment: +1 east, -1 west.
  int row_direction(int row) const { return x_[row] > o_[row] ? 1 : -1; }
  /// Vertical direction of the column segment: +1 north (towards row 0), -1 south.
  int col_direction(int col) const { return o_row_[col] < x_row_[col] ? 1 : -1; }

  friend bool operator==(const GridDiagram& a, const GridDiagram& b) {
    return a.x_ == b.x_ && a.o_ == b.o_;
  }
  friend auto operator<=>(const GridDiagram& a, const GridDiagram& b) {
    if (auto c = a.x_ <=> b.x_; c != 0) return c;
    return a.o_ <=> b.o_;
  }

  int count_components() const {
    const int n = size();
    std::vector<char> seen(n, 0);
    int comps = 0;
    for (int start = 0; start < n; ++start) {
      if (seen[start]) continue;
      ++comps;
      for (int r = start; !seen[r]; r = o_row_[x_[r]]) seen[r] = 1;
    }
    return comps;
  }

 private:
  std::vector<int> x_, o_;
  std::vector<int> x_row_, o_row_;
};

inline GridDiagram validate_grid(std::vector<int> x_positions, std::vector<int> o_positions) {
  return GridDiagram(std::move(x_positions), std::move(o_positions));
}

/// Plain-text grid format: the size on the first line, then one line per row
/// over the alphabet {X, O, .}.
inline GridDiagram read_grid(std::istream& in) {
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, out)) {
      if (!out.empty() && out.back() == '\r') out.pop_back();
      if (!out.empty()) return true;
    }
    return false;
  };
  if (!next_line(line)) throw GridError(GridErrc::Parse, "empty grid file");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(line, &used);
    if (used != line.size()) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw GridError(GridErrc::Parse, "first line must be the grid size");
  }
  if (n < 2) throw GridError(GridErrc::TooSmall, "grid size must be at least 2");
  std::vector<int> x(n, -1), o(n, -1);
  for (int r = 0; r < n; ++r) {
    if (!next_line(line)) throw GridError(GridErrc::Parse, "missing row " + std::to_string(r));
    if (static_cast<int>(line.size()) != n) {
      throw GridError(GridErrc::Parse, "row " + std::to_string(r) + " has wrong width");
    }
    for (int c = 0; c < n; ++c) {
      const char ch = line[c];
      if (ch == 'X') {
        if (x[r] != -1) throw GridError(GridErrc::Parse, "two X in row " + std::to_string(r));
        x[r] = c;
      } else if (ch == 'O') {
        if (o[r] != -1) throw GridError(GridErrc::Parse, "two O in row " + std::to_string(r));
        o[r] = c;
      } else if (ch != '.') {
        throw GridError(GridErrc::Parse, std::string("unexpected character '") + ch + "'");
      }
    }
    if (x[r] == -1 || o[r] == -1) {
      throw GridError(GridErrc::Parse, "row " + std::to_string(r) + " lacks an X or an O");
    }
  }
  if (next_line(line)) throw GridError(GridErrc::Parse, "trailing content after grid");
  return GridDiagram(std::move(x), std::move(o));
}

inline GridDiagram parse_grid(const std::string& text) {
  std::istringstream in(text);
  return read_grid(in);
}

inline void write_grid(std::ostream& out, const GridDiagram& d) {
  const int n = d.size();
  out << n << '\n';
  std::string row(n, '.');
  for (int r = 0; r < n; ++r) {
    std::fill(row.begin(), row.end(), '.');
    row[d.x_col(r)] = 'X';
    row[d.o_col(r)] = 'O';
    out << row << '\n';
  }
}

inline std::string format_grid(const GridDiagram& d) {
  std::ostringstream out;
  write_grid(out, d);
  return out.str();
}

}  // namespace mtws
