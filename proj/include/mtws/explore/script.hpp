#pragma once

#include <cstdint>
#include <cstdio>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtws/alexander.hpp"
#include "mtws/grid_diagram.hpp"
#include "mtws/invariants.hpp"
#include "mtws/moves.hpp"

namespace mtws {

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t hash_bytes(const std::string& s) {
  std::uint64_t h = mix64(s.size());
  for (unsigned char c : s) h = mix64(h ^ c);
  return h;
}

}  // namespace detail

// Exact encoding of the permutation pair; equal strings iff equal diagrams.
inline std::string exact_key(const GridDiagram& d) {
  std::string s;
  s.reserve(2 * d.size() + 1);
  s.push_back(static_cast<char>(d.size()));
  for (int c : d.x_positions()) s.push_back(static_cast<char>(c));
  for (int c : d.o_positions()) s.push_back(static_cast<char>(c));
  return s;
}

inline std::uint64_t canonical_key(const GridDiagram& d) { return detail::hash_bytes(exact_key(d)); }

inline std::uint64_t alexander_hash(const GridDiagram& d) {
  return detail::hash_bytes(alexander_polynomial(d).normalized().to_string());
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

inline std::uint64_t parse_hex64(const std::string& s) {
  if (s.empty() || s.size() > 16) throw GridError(GridErrc::Parse, "bad hash '" + s + "'");
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(s, &used, 16);
  } catch (const std::logic_error&) {
    used = 0;
  }
  if (used != s.size()) throw GridError(GridErrc::Parse, "bad hash '" + s + "'");
  return v;
}

inline Compass parse_compass(const std::string& s) {
  if (s == "NE") return Compass::NE;
  if (s == "NW") return Compass::NW;
  if (s == "SE") return Compass::SE;
  if (s == "SW") return Compass::SW;
  throw GridError(GridErrc::Parse, "bad corner '" + s + "'");
}

inline Side parse_side(const std::string& s) {
  if (s == "top") return Side::Top;
  if (s == "bottom") return Side::Bottom;
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  throw GridError(GridErrc::Parse, "bad side '" + s + "'");
}

inline Move parse_move(const std::string& line) {
  std::istringstream in(line);
  std::string kind, a;
  in >> kind;
  auto need_int = [&] {
    int v;
    if (!(in >> v)) throw GridError(GridErrc::Parse, "missing integer in '" + line + "'");
    return v;
  };
  Move m;
  if (kind == "COMMUTE") {
    in >> a;
    if (a != "row" && a != "col") throw GridError(GridErrc::Parse, "COMMUTE row|col <i>");
    m = Move::commutation(a == "row" ? Axis::Row : Axis::Column, need_int());
  } else if (kind == "FLIP") {
    in >> a;
    m = Move::cyclic_flip(parse_side(a));
  } else if (kind == "STAB") {
    int r = need_int(), c = need_int();
    in >> a;
    m = Move::stabilization(r, c, parse_compass(a));
  } else if (kind == "DESTAB") {
    int r = need_int(), c = need_int();
    m = Move::destabilization(r, c);
  } else if (kind == "TRANSPOSE") {
    m = Move::transpose();
  } else if (kind == "FLYPE") {
    in >> a;
    if (a != "v" && a != "h") throw GridError(GridErrc::Parse, "FLYPE v|h <site>");
    m.kind = MoveKind::Flype;
    m.axis = a == "v" ? Axis::Column : Axis::Row;
    m.index = need_int();
  } else {
    throw GridError(GridErrc::Parse, "unknown move '" + kind + "'");
  }
  if (in >> a) throw GridError(GridErrc::Parse, "trailing tokens in '" + line + "'");
  return m;
}

struct ScriptFooter {
  int tb = 0;
  int r = 0;
  std::uint64_t alex = 0;
  bool operator==(const ScriptFooter&) const = default;
};

struct MoveScript {
  std::uint64_t from = 0;
  std::vector<Move> steps;
  std::optional<ScriptFooter> expect;
};

inline ScriptFooter footer_of(const GridDiagram& d) {
  auto ci = classical_invariants(d);
  return {ci.tb, ci.r, alexander_hash(d)};
}

inline MoveScript read_script(std::istream& in) {
  MoveScript s;
  bool have_from = false;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (s.expect) throw GridError(GridErrc::Parse, "steps after EXPECT");
    if (word == "FROM") {
      if (have_from || !s.steps.empty()) throw GridError(GridErrc::Parse, "FROM must come first");
      std::string h;
      ls >> h;
      s.from = parse_hex64(h);
      have_from = true;
    } else if (word == "EXPECT") {
      ScriptFooter f;
      int seen = 0;
      std::string kv;
      while (ls >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw GridError(GridErrc::Parse, "bad EXPECT field '" + kv + "'");
        auto key = kv.substr(0, eq), val = kv.substr(eq + 1);
        try {
          if (key == "tb") f.tb = std::stoi(val), seen |= 1;
          else if (key == "r") f.r = std::stoi(val), seen |= 2;
          else if (key == "alex") f.alex = parse_hex64(val), seen |= 4;
          else throw GridError(GridErrc::Parse, "bad EXPECT field '" + kv + "'");
        } catch (const std::logic_error&) {
          throw GridError(GridErrc::Parse, "bad EXPECT value '" + kv + "'");
        }
      }
      if (seen != 7) throw GridError(GridErrc::Parse, "EXPECT needs tb=, r= and alex=");
      s.expect = f;
    } else {
      if (!have_from) throw GridError(GridErrc::Parse, "script must start with FROM");
      std::string rest;
      std::getline(ls, rest);
      s.steps.push_back(parse_move(word + rest));
    }
  }
  if (!have_from) throw GridError(GridErrc::Parse, "script must start with FROM");
  return s;
}

inline MoveScript parse_script(const std::string& text) {
  std::istringstream in(text);
  return read_script(in);
}

inline void write_script(std::ostream& out, const MoveScript& s) {
  out << "FROM " << hex64(s.from) << "\n";
  for (const auto& m : s.steps) out << to_string(m) << "\n";
  if (s.expect) out << "EXPECT tb=" << s.expect->tb << " r=" << s.expect->r << " alex=" << hex64(s.expect->alex) << "\n";
}

inline std::string format_script(const MoveScript& s) {
  std::ostringstream out;
  write_script(out, s);
  return out.str();
}

}  // namespace mtws
