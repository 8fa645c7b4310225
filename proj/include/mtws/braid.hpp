#pragma once

#include <algorithm>
#include <istream>
#include <list>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtws/grid_diagram.hpp"
#include "mtws/moves.hpp"

namespace mtws {

enum class BraidErrc { NotBraided, BadGenerator, Parse, TemplateMismatch, InconsistentOrbit };

inline const char* to_string(BraidErrc e) {
  switch (e) {
    case BraidErrc::NotBraided: return "NotBraided";
    case BraidErrc::BadGenerator: return "BadGenerator";
    case BraidErrc::Parse: return "Parse";
    case BraidErrc::TemplateMismatch: return "TemplateMismatch";
    case BraidErrc::InconsistentOrbit: return "InconsistentOrbit";
  }
  return "?";
}

class BraidError : public std::runtime_error {
 public:
  BraidError(BraidErrc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  BraidErrc code() const noexcept { return code_; }

 private:
  BraidErrc code_;
};

struct BraidWord {
  int strands = 1;
  std::vector<int> word;  // +-i for sigma_i^{+-1}, 1 <= i < strands

  BraidWord() = default;
  BraidWord(int n, std::vector<int> w) : strands(n), word(std::move(w)) {
    if (strands < 1) throw BraidError(BraidErrc::BadGenerator, "strand count must be positive");
    for (int g : word)
      if (g == 0 || std::abs(g) >= strands) throw BraidError(BraidErrc::BadGenerator, "generator out of range");
  }
  int exponent_sum() const {
    int e = 0;
    for (int g : word) e += g > 0 ? 1 : -1;
    return e;
  }
  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

inline int self_linking(const BraidWord& w) { return w.exponent_sum() - w.strands; }

inline void write_braid(std::ostream& out, const BraidWord& w) {
  out << "strands=" << w.strands << "\n";
  for (std::size_t i = 0; i < w.word.size(); ++i) out << (i ? " " : "") << w.word[i];
  out << "\n";
}

inline BraidWord read_braid(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("strands=", 0) != 0)
    throw BraidError(BraidErrc::Parse, "expected strands=<n>");
  int n = 0;
  try {
    std::size_t used = 0;
    n = std::stoi(line.substr(8), &used);
    if (used != line.size() - 8) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw BraidError(BraidErrc::Parse, "bad strand count");
  }
  std::vector<int> word;
  if (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        word.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw BraidError(BraidErrc::Parse, "bad generator '" + tok + "'");
      }
    }
  }
  while (std::getline(in, line))
    if (line.find_first_not_of(" \t\r") != std::string::npos) throw BraidError(BraidErrc::Parse, "trailing content");
  return BraidWord(n, std::move(word));
}

enum class BraidAxis : std::uint8_t { Vertical, Horizontal };

/// A grid read as a closed braid. About the vertical axis the strands sweep
/// left to right: every horizontal segment must run east, and the west-running
/// ones are flipped to the complementary arc through the left/right edge (the
/// grid lives on a torus). About the horizontal axis the same is done to the
/// vertical segments, which must all run south.
///
/// Internally both readings are done on a `working` grid by a single
/// north-to-south sweep: for the vertical axis that grid is transpose_flip of
/// the base, so that rows of the base become its columns; for the horizontal
/// axis it is the base itself. `wrapped[c]` marks flipped columns of the working grid.
struct BraidedRectDiagram {
  GridDiagram base;
  BraidAxis axis = BraidAxis::Vertical;
  bool braided = false;
  std::vector<bool> wrapped;
  int flips = 0;  // number of lines flipped by the last to_braided_form call

  /// The grid read in the vertical axis.
  GridDiagram working() const { return axis == BraidAxis::Vertical ? transpose_flip(base) : base; }
};

namespace detail {
inline BraidedRectDiagram braid_wrapped(const GridDiagram& d, BraidAxis axis) {
  BraidedRectDiagram b{d, axis, true, {}, 0};
  const GridDiagram w = b.working();
  b.wrapped.assign(w.size(), false);
  // Verticals running north are the incoherent ones; flip each around the axis.
  for (int c = 0; c < w.size(); ++c)
    if (w.col_direction(c) > 0) {
      b.wrapped[c] = true;
      ++b.flips;
    }
  return b;
}
}  // namespace detail

inline BraidedRectDiagram to_braided_form(const GridDiagram& d, BraidAxis axis = BraidAxis::Vertical) {
  return detail::braid_wrapped(d, axis);
}

/// Fixed point on diagrams that are already braided.
inline BraidedRectDiagram to_braided_form(const BraidedRectDiagram& b) {
  if (b.braided) {
    BraidedRectDiagram out = b;
    out.flips = 0;
    return out;
  }
  return detail::braid_wrapped(b.base, b.axis);
}

/// Reads the closed braid off the working grid from top to bottom. The
/// strands at the top edge are the wrapped columns, and each row moves one
/// strand from its O column to its X column, passing under the strands in
/// between. About the vertical axis, e - n_b = tb - r.
inline BraidWord braid_word(const BraidedRectDiagram& b) {
  if (!b.braided) throw BraidError(BraidErrc::NotBraided, "diagram is not in braided form");
  const GridDiagram d = b.working();
  const int n = d.size();
  std::vector<int> strands;
  for (int c = 0; c < n; ++c)
    if (b.wrapped[c]) strands.push_back(c);
  const int nb = static_cast<int>(strands.size());
  std::vector<int> word;
  for (int r = 0; r < n; ++r) {
    const int a = d.o_col(r), e = d.x_col(r);
    const auto it = std::find(strands.begin(), strands.end(), a);
    if (it == strands.end()) throw BraidError(BraidErrc::NotBraided, "strand missing at row");
    const int pos = static_cast<int>(it - strands.begin());
    const int lo = std::min(a, e), hi = std::max(a, e);
    int between = 0;
    for (int c : strands) between += (lo < c && c < hi);
    for (int k = 0; k < between; ++k) word.push_back(e > a ? pos + 1 + k : -(pos - k));
    strands.erase(it);
    strands.insert(std::upper_bound(strands.begin(), strands.end(), e), e);
  }
  return BraidWord(nb, std::move(word));
}

/// A grid whose braid reading about `axis` is the closure of `w`. Built for
/// the north-to-south sweep, then transposed for the vertical axis. Each generator becomes
/// one row; strands that no generator touches get a jog row, and the closure
/// rows return every strand to its starting column without crossings.
inline GridDiagram braid_to_grid(const BraidWord& w, BraidAxis axis = BraidAxis::Vertical) {
  const int s = w.strands;
  // Columns live in a linked list so a new one can be slotted between any
  // two; only the order relative to live strands matters.
  std::list<int> order;
  std::vector<std::list<int>::iterator> where;
  auto make_after = [&](int id) {
    where.push_back(order.insert(std::next(where[id]), static_cast<int>(where.size())));
    return static_cast<int>(where.size()) - 1;
  };
  auto make_before = [&](int id) {
    where.push_back(order.insert(where[id], static_cast<int>(where.size())));
    return static_cast<int>(where.size()) - 1;
  };
  std::vector<int> cols(s), init(s);
  for (int k = 0; k < s; ++k) {
    where.push_back(order.insert(order.end(), k));
    cols[k] = init[k] = k;
  }
  std::vector<std::pair<int, int>> rows;  // (O column, X column)
  std::vector<bool> used(s, false);
  for (int g : w.word) {
    const int i = std::abs(g) - 1;
    if (g > 0) {
      const int nc = make_after(cols[i + 1]);
      rows.push_back({cols[i], nc});
      used[cols[i]] = true;
      cols[i] = cols[i + 1];
      cols[i + 1] = nc;
    } else {
      const int nc = make_before(cols[i]);
      rows.push_back({cols[i + 1], nc});
      used[cols[i + 1]] = true;
      cols[i + 1] = cols[i];
      cols[i] = nc;
    }
  }
  for (int k = 0; k < s; ++k) {
    if (used[init[k]]) continue;
    const int nc = make_before(cols[k]);
    rows.push_back({cols[k], nc});
    cols[k] = nc;
  }
  std::vector<int> position(where.size());
  {
    int p = 0;
    for (int id : order) position[id] = p++;
  }
  std::vector<int> right, left;
  for (int k = 0; k < s; ++k) {
    if (position[cols[k]] < position[init[k]]) right.push_back(k);
    else if (position[cols[k]] > position[init[k]]) left.push_back(k);
  }
  std::sort(right.rbegin(), right.rend());
  for (int k : right) rows.push_back({cols[k], init[k]});
  for (int k : left) rows.push_back({cols[k], init[k]});
  if (rows.size() != where.size()) throw BraidError(BraidErrc::BadGenerator, "column allocation failed");
  std::vector<int> x, o;
  for (auto& [a, b] : rows) {
    o.push_back(position[a]);
    x.push_back(position[b]);
  }
  GridDiagram g(std::move(x), std::move(o));
  return axis == BraidAxis::Vertical ? transpose_flip(g) : g;
}

}  // namespace mtws
