#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <boost/rational.hpp>

#include "mtws/braid.hpp"

namespace mtws::torus {

using Rational = boost::rational<std::int64_t>;

enum class TorusErrc {
  TooFewBlocks,
  BadPresentation,
  Disconnects,
  NullHomotopic,
  MixedSlopes,
  InfiniteSlope,
  NothingToEliminate,
  Parse,
};

inline const char* to_string(TorusErrc e) {
  switch (e) {
    case TorusErrc::TooFewBlocks: return "TooFewBlocks";
    case TorusErrc::BadPresentation: return "BadPresentation";
    case TorusErrc::Disconnects: return "Disconnects";
    case TorusErrc::NullHomotopic: return "NullHomotopic";
    case TorusErrc::MixedSlopes: return "MixedSlopes";
    case TorusErrc::InfiniteSlope: return "InfiniteSlope";
    case TorusErrc::NothingToEliminate: return "NothingToEliminate";
    case TorusErrc::Parse: return "Parse";
  }
  return "?";
}

class TorusError : public std::runtime_error {
 public:
  TorusError(TorusErrc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  TorusErrc code() const noexcept { return code_; }

 private:
  TorusErrc code_;
};

// Angles live on [0, 1).
inline Rational wrap_angle(Rational a) {
  auto fl = a.numerator() / a.denominator();
  if (a.numerator() < 0 && a.numerator() % a.denominator() != 0) --fl;
  return a - Rational(fl);
}

inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      auto v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return Rational(v);
    }
    std::size_t u1 = 0, u2 = 0;
    auto num = std::stoll(s.substr(0, slash), &u1);
    auto den = std::stoll(s.substr(slash + 1), &u2);
    if (u1 != slash || u2 != s.size() - slash - 1 || den == 0) throw std::invalid_argument(s);
    return Rational(num, den);
  } catch (const std::logic_error&) {
    throw TorusError(TorusErrc::Parse, "bad rational '" + s + "'");
  }
}

inline std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// A rectangular block glued on top of disc `lower` and under disc `upper`,
// occupying the angular interval [start, end) (cyclically) of the boundary circle.
struct Block {
  int lower = 0;
  int upper = 0;
  Rational start;
  Rational end;
  Rational thickness{1};

  Rational width() const { return wrap_angle(end - start); }
  bool covers(const Rational& theta) const {
    if (start < end) return start <= theta && theta < end;
    return theta >= start || theta < end;
  }
  bool operator==(const Block&) const = default;
};

struct BlockDiscPresentation {
  int discs = 0;  // discs are indexed by axis position, bottom to top
  std::vector<Block> blocks;
  std::optional<BraidWord> core_braid;

  bool operator==(const BlockDiscPresentation& o) const {
    return discs == o.discs && blocks == o.blocks;
  }

  int block_above(int disc) const {
    for (std::size_t j = 0; j < blocks.size(); ++j)
      if (blocks[j].lower == disc) return static_cast<int>(j);
    return -1;
  }
  int block_below(int disc) const {
    for (std::size_t j = 0; j < blocks.size(); ++j)
      if (blocks[j].upper == disc) return static_cast<int>(j);
    return -1;
  }
};

// Blocks in core order starting from block 0; only meaningful on a valid presentation.
inline std::vector<int> core_order(const BlockDiscPresentation& p) {
  std::vector<int> order{0};
  for (;;) {
    int j = p.block_above(p.blocks[order.back()].upper);
    if (j == 0 || j < 0) break;
    if (order.size() > p.blocks.size()) break;
    order.push_back(j);
  }
  return order;
}

// Structural checks only; the tiling sweep adds the region checks.
inline void check_structure(const BlockDiscPresentation& p) {
  auto bad = [](const std::string& m) { throw TorusError(TorusErrc::BadPresentation, m); };
  if (p.discs < 2 || p.blocks.size() < 2) throw TorusError(TorusErrc::TooFewBlocks, "need at least 2 blocks");
  if (static_cast<int>(p.blocks.size()) != p.discs) bad("blocks and discs must pair one-to-one");
  std::vector<int> lo(p.discs, 0), up(p.discs, 0);
  for (const auto& b : p.blocks) {
    if (b.lower < 0 || b.lower >= p.discs || b.upper < 0 || b.upper >= p.discs) bad("disc index out of range");
    if (b.lower == b.upper) bad("block attached to a single disc");
    for (const auto& a : {b.start, b.end})
      if (a < 0 || a >= 1) bad("angle outside [0,1)");
    if (b.start == b.end) bad("empty angular interval");
    if (b.thickness <= 0) bad("non-positive thickness");
    ++lo[b.lower];
    ++up[b.upper];
  }
  for (int d = 0; d < p.discs; ++d)
    if (lo[d] != 1 || up[d] != 1) bad("disc " + std::to_string(d) + " not attached one-to-one");
  if (static_cast<int>(core_order(p).size()) != p.discs) bad("core has more than one component");
}

// The left side of every block sits at the angle of the right side of the block below.
inline bool is_standard(const BlockDiscPresentation& p) {
  for (const auto& b : p.blocks) {
    int below = p.block_below(b.lower);
    if (below < 0 || p.blocks[below].end != b.start) return false;
  }
  return true;
}

// k discs; block i climbs from disc (z*i mod k) to disc (z*(i+1) mod k) while its
// angular interval advances by turns/k.
inline BlockDiscPresentation staircase(int k, int z_step, int turns) {
  BlockDiscPresentation p;
  p.discs = k;
  for (int i = 0; i < k; ++i) {
    Block b;
    b.lower = (z_step * i) % k;
    b.upper = (z_step * (i + 1)) % k;
    b.start = wrap_angle(Rational(turns * i, k));
    b.end = wrap_angle(Rational(turns * (i + 1), k));
    p.blocks.push_back(b);
  }
  return p;
}

// The trefoil's block neighbourhood: three axial turns against two angular turns.
// That layout needs k odd, prime to 3 and at least 7; smaller or other sizes fall
// back to a single turn each way so small presentations stay valid.
inline BlockDiscPresentation trefoil_presentation(int k_blocks) {
  if (k_blocks < 2) throw TorusError(TorusErrc::TooFewBlocks, "need at least 2 blocks");
  if (k_blocks >= 7 && k_blocks % 2 == 1 && k_blocks % 3 != 0) {
    auto p = staircase(k_blocks, 3, 2);
    p.core_braid = BraidWord(2, {1, 1, 1});
    return p;
  }
  return staircase(k_blocks, 1, 1);
}

inline BlockDiscPresentation read_presentation(std::istream& in) {
  BlockDiscPresentation p;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (!header) {
      if (word.rfind("discs=", 0) != 0) throw TorusError(TorusErrc::Parse, "expected discs=<k>");
      try {
        p.discs = std::stoi(word.substr(6));
      } catch (const std::logic_error&) {
        throw TorusError(TorusErrc::Parse, "bad disc count");
      }
      header = true;
      continue;
    }
    if (word == "core") {
      // core <strands> <generators...>: the braid the core closes up to
      int n;
      if (!(ls >> n)) throw TorusError(TorusErrc::Parse, "short core line");
      std::vector<int> w;
      for (int g; ls >> g;) w.push_back(g);
      if (!ls.eof()) throw TorusError(TorusErrc::Parse, "bad core generator");
      try {
        p.core_braid = BraidWord(n, std::move(w));
      } catch (const BraidError& e) {
        throw TorusError(TorusErrc::Parse, e.what());
      }
      continue;
    }
    if (word != "block") throw TorusError(TorusErrc::Parse, "unexpected '" + word + "'");
    Block b;
    std::string s, e, t;
    if (!(ls >> b.lower >> b.upper >> s >> e >> t)) throw TorusError(TorusErrc::Parse, "short block line");
    b.start = parse_rational(s);
    b.end = parse_rational(e);
    b.thickness = parse_rational(t);
    if (ls >> word) throw TorusError(TorusErrc::Parse, "trailing tokens on block line");
    p.blocks.push_back(b);
  }
  if (!header) throw TorusError(TorusErrc::Parse, "empty presentation");
  check_structure(p);
  return p;
}

inline BlockDiscPresentation parse_presentation(const std::string& text) {
  std::istringstream in(text);
  return read_presentation(in);
}

inline void write_presentation(std::ostream& out, const BlockDiscPresentation& p) {
  out << "discs=" << p.discs << "\n";
  for (const auto& b : p.blocks)
    out << "block " << b.lower << " " << b.upper << " " << format_rational(b.start) << " "
        << format_rational(b.end) << " " << format_rational(b.thickness) << "\n";
  if (p.core_braid) {
    out << "core " << p.core_braid->strands;
    for (int g : p.core_braid->word) out << " " << g;
    out << "\n";
  }
}

inline std::string format_presentation(const BlockDiscPresentation& p) {
  std::ostringstream out;
  write_presentation(out, p);
  return out.str();
}

// Thin/thicken instructions.
struct Resize {
  int block;
  Rational start;
  Rational end;
};
struct RemoveDisc {
  int disc;  // glues the block below onto the block above
};
using ResizeStep = std::variant<Resize, RemoveDisc>;

inline std::vector<ResizeStep> parse_resize_steps(std::istream& in) {
  std::vector<ResizeStep> out;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "resize") {
      int j;
      std::string s, e;
      if (!(ls >> j >> s >> e)) throw TorusError(TorusErrc::Parse, "resize <block> <start> <end>");
      out.push_back(Resize{j, parse_rational(s), parse_rational(e)});
    } else if (word == "remove") {
      int d;
      if (!(ls >> d)) throw TorusError(TorusErrc::Parse, "remove <disc>");
      out.push_back(RemoveDisc{d});
    } else {
      throw TorusError(TorusErrc::Parse, "unknown instruction '" + word + "'");
    }
  }
  return out;
}

}  // namespace mtws::torus
