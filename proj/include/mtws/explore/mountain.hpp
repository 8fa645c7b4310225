#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "mtws/grid_diagram.hpp"
#include "mtws/invariants.hpp"
#include "mtws/moves.hpp"
#include "mtws/transverse.hpp"

namespace mtws {

// S_+^plus S_-^minus (label) == S_+^plus2 S_-^minus2 (label2), and the same after
// any further stabilization.
struct Identification {
  std::string a;
  int a_plus = 0, a_minus = 0;
  std::string b;
  int b_plus = 0, b_minus = 0;
};

// An elementary negative flype between two classes, carried along by
// stabilizations of sign `carry` (S_-^k for the + pair).
struct FlypeDecl {
  std::string a;
  int a_plus = 0, a_minus = 0;
  std::string b;
  int b_plus = 0, b_minus = 0;
  int carry = -1;
};

struct SeedManifest {
  std::vector<std::pair<std::string, GridDiagram>> seeds;
  std::vector<Identification> identify;
  std::vector<FlypeDecl> flypes;
};

struct MountainPoint {
  int r = 0;
  int tb = 0;
  std::set<std::string> labels;
};

struct FlypeConnector {
  int r, tb;
  std::string a, b;  // class labels at (r, tb)
};

struct MountainRange {
  struct Node {
    int seed, plus, minus, tb, r;
    std::string name;
  };
  std::vector<std::string> seed_labels;
  std::vector<Node> nodes;
  std::vector<int> cls;  // class representative node for each node
  std::vector<MountainPoint> points;
  std::vector<FlypeConnector> connectors;
  int depth = 0;  // nodes past this many stabilizations only serve to merge classes

  const std::string& class_name(int node) const { return nodes[cls[node]].name; }
  bool in_range(int node) const { return nodes[node].plus + nodes[node].minus <= depth; }
  std::vector<LegendrianEntry> legendrian_entries() const;
  std::vector<TransversalClass> transverse_classes() const;
};

inline std::string stabilized_name(const std::string& seed, int plus, int minus) {
  if (plus == 0 && minus == 0) return seed;
  std::string s;
  auto pow = [](const char* g, int k) { return std::string(g) + (k > 1 ? "^" + std::to_string(k) : ""); };
  if (plus) s += pow("S+", plus);
  if (minus) s += pow("S-", minus);
  return s + "(" + seed + ")";
}

inline SeedManifest read_seed_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GridError(GridErrc::Parse, "cannot open " + path);
  const auto dir = std::filesystem::path(path).parent_path();
  SeedManifest m;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind)) continue;
    if (kind == "seed") {
      std::string label, file;
      if (!(ls >> label >> file)) throw GridError(GridErrc::Parse, "seed <label> <grid-file>");
      std::ifstream g(dir / file);
      if (!g) throw GridError(GridErrc::Parse, "cannot open " + (dir / file).string());
      m.seeds.emplace_back(label, read_grid(g));
    } else if (kind == "identify" || kind == "flype") {
      std::string a, b;
      int ap, am, bp, bm;
      if (!(ls >> a >> ap >> am >> b >> bp >> bm)) throw GridError(GridErrc::Parse, kind + " <A> <+> <-> <B> <+> <->");
      if (kind == "identify") {
        m.identify.push_back({a, ap, am, b, bp, bm});
      } else {
        std::string sign;
        if (!(ls >> sign) || (sign != "+" && sign != "-")) throw GridError(GridErrc::Parse, "flype needs a carry sign");
        m.flypes.push_back({a, ap, am, b, bp, bm, sign == "+" ? 1 : -1});
      }
    } else {
      throw GridError(GridErrc::Parse, "unknown manifest line '" + kind + "'");
    }
  }
  std::set<std::string> labels;
  for (const auto& [l, g] : m.seeds)
    if (!labels.insert(l).second) throw GridError(GridErrc::Parse, "duplicate seed " + l);
  auto known = [&](const std::string& l) {
    if (!labels.count(l)) throw GridError(GridErrc::Parse, "unknown seed " + l);
  };
  for (const auto& e : m.identify) known(e.a), known(e.b);
  for (const auto& e : m.flypes) known(e.a), known(e.b);
  return m;
}

// Closes the seeds under S_+, S_- (to `depth` stabilizations) and transpose_flip.
inline MountainRange mountain_scan(SeedManifest m, int depth) {
  if (depth < 0) throw std::invalid_argument("depth must be non-negative");
  // transpose closure of the seeds; mirror[label] is the label of its transpose
  std::map<std::string, std::string> mirror;
  for (std::size_t i = 0; i < m.seeds.size(); ++i) {
    const auto t = transpose_flip(m.seeds[i].second);
    std::string found;
    for (const auto& [l, d] : m.seeds)
      if (d == t) found = l;
    if (found.empty()) {
      found = m.seeds[i].first + "'";
      m.seeds.emplace_back(found, t);
    }
    mirror[m.seeds[i].first] = found;
    mirror[found] = m.seeds[i].first;
  }
  auto mir = [&](const std::string& l) {
    auto it = mirror.find(l);
    if (it == mirror.end()) throw GridError(GridErrc::Parse, "unknown label '" + l + "'");
    return it->second;
  };
  for (std::size_t i = 0, k = m.identify.size(); i < k; ++i) {
    auto d = m.identify[i];
    m.identify.push_back({mir(d.a), d.a_minus, d.a_plus, mir(d.b), d.b_minus, d.b_plus});
  }
  for (std::size_t i = 0, k = m.flypes.size(); i < k; ++i) {
    auto d = m.flypes[i];
    m.flypes.push_back({mir(d.a), d.a_minus, d.a_plus, mir(d.b), d.b_minus, d.b_plus, -d.carry});
  }

  // An identification can tie two classes of the range together through nodes a few
  // stabilizations further down; build those too, one S_- edge beyond the largest shift.
  int slack = 1;
  for (const auto& d : m.identify) slack = std::max({slack, 1 + d.a_plus + d.a_minus, 1 + d.b_plus + d.b_minus});
  const int full = depth + slack;

  MountainRange out;
  out.depth = depth;
  std::map<std::tuple<std::string, int, int>, int> at;
  for (std::size_t s = 0; s < m.seeds.size(); ++s) {
    out.seed_labels.push_back(m.seeds[s].first);
    const auto ci = classical_invariants(m.seeds[s].second);
    for (int p = 0; p <= full; ++p)
      for (int q = 0; p + q <= full; ++q) {
        at[{m.seeds[s].first, p, q}] = static_cast<int>(out.nodes.size());
        out.nodes.push_back({static_cast<int>(s), p, q, ci.tb - p - q, ci.r + p - q,
                             stabilized_name(m.seeds[s].first, p, q)});
      }
  }
  auto node = [&](const std::string& l, int p, int q) {
    auto it = at.find({l, p, q});
    return it == at.end() ? -1 : it->second;
  };

  std::vector<int> parent(out.nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& d : m.identify)
    for (int i = 0; i <= full; ++i)
      for (int j = 0; i + j <= full; ++j) {
        int x = node(d.a, d.a_plus + i, d.a_minus + j), y = node(d.b, d.b_plus + i, d.b_minus + j);
        if (x < 0 || y < 0) continue;
        const auto& nx = out.nodes[x];
        const auto& ny = out.nodes[y];
        if (nx.tb != ny.tb || nx.r != ny.r)
          throw std::invalid_argument("identification of " + nx.name + " and " + ny.name + " moves (r, tb)");
        parent[find(x)] = find(y);
      }

  // representative: fewest stabilizations, then shortest, then lexicographic name
  std::map<int, int> rep;
  auto better = [&](int a, int b) {
    const auto& na = out.nodes[a];
    const auto& nb = out.nodes[b];
    return std::make_tuple(na.plus + na.minus, na.name.size(), na.name) <
           std::make_tuple(nb.plus + nb.minus, nb.name.size(), nb.name);
  };
  for (std::size_t i = 0; i < out.nodes.size(); ++i) {
    int r = find(static_cast<int>(i));
    if (!rep.count(r) || better(static_cast<int>(i), rep[r])) rep[r] = static_cast<int>(i);
  }
  out.cls.resize(out.nodes.size());
  for (std::size_t i = 0; i < out.nodes.size(); ++i) out.cls[i] = rep[find(static_cast<int>(i))];

  std::map<std::pair<int, int>, std::set<std::string>> pts;
  for (std::size_t i = 0; i < out.nodes.size(); ++i)
    if (out.in_range(static_cast<int>(i))) pts[{out.nodes[i].r, out.nodes[i].tb}].insert(out.class_name(static_cast<int>(i)));
  for (auto& [k, labels] : pts) out.points.push_back({k.first, k.second, labels});

  std::set<std::tuple<int, int, std::string, std::string>> conn;
  for (const auto& f : m.flypes)
    for (int k = 0; k <= depth; ++k) {
      int dp = f.carry > 0 ? k : 0, dm = f.carry > 0 ? 0 : k;
      int x = node(f.a, f.a_plus + dp, f.a_minus + dm), y = node(f.b, f.b_plus + dp, f.b_minus + dm);
      if (x < 0 || y < 0 || !out.in_range(x) || !out.in_range(y)) continue;
      auto a = out.class_name(x), b = out.class_name(y);
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      conn.insert({out.nodes[x].r, out.nodes[x].tb, a, b});
    }
  for (const auto& [r, tb, a, b] : conn) out.connectors.push_back({r, tb, a, b});
  return out;
}

inline std::vector<LegendrianEntry> MountainRange::legendrian_entries() const {
  std::map<std::string, LegendrianEntry> by;
  std::map<std::tuple<int, int, int>, int> at;
  for (std::size_t i = 0; i < nodes.size(); ++i) at[{nodes[i].seed, nodes[i].plus, nodes[i].minus}] = static_cast<int>(i);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto& e = by[class_name(static_cast<int>(i))];
    e.label = class_name(static_cast<int>(i));
    e.tb = nodes[i].tb;
    e.r = nodes[i].r;
    auto it = at.find({nodes[i].seed, nodes[i].plus, nodes[i].minus + 1});
    if (it != at.end()) {
      const auto& t = class_name(it->second);
      if (std::find(e.s_minus.begin(), e.s_minus.end(), t) == e.s_minus.end()) e.s_minus.push_back(t);
    }
  }
  std::vector<LegendrianEntry> out;
  for (auto& [k, e] : by) out.push_back(std::move(e));
  return out;
}

// T_+ classes meeting the range; members outside it are dropped from the lists.
inline std::vector<TransversalClass> MountainRange::transverse_classes() const {
  std::set<std::string> inside;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (in_range(static_cast<int>(i))) inside.insert(class_name(static_cast<int>(i)));
  std::vector<TransversalClass> out;
  for (auto t : transverse_collapse(legendrian_entries())) {
    std::erase_if(t.members, [&](const std::string& l) { return !inside.count(l); });
    if (t.members.empty()) continue;
    t.label = "T+(" + t.members.front() + ")";
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.sl != b.sl ? a.sl > b.sl : a.label < b.label;
  });
  return out;
}

inline void write_mountain_csv(std::ostream& out, const MountainRange& m) {
  out << "r,tb,label_count\n";
  auto pts = m.points;
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.tb != b.tb ? a.tb > b.tb : a.r < b.r; });
  for (const auto& p : pts) out << p.r << "," << p.tb << "," << p.labels.size() << "\n";
}

inline void write_mountain_svg(std::ostream& out, const MountainRange& m) {
  int rmin = 0, rmax = 0, tmin = 0, tmax = 0;
  bool first = true;
  for (const auto& p : m.points) {
    if (first) rmin = rmax = p.r, tmin = tmax = p.tb, first = false;
    rmin = std::min(rmin, p.r), rmax = std::max(rmax, p.r);
    tmin = std::min(tmin, p.tb), tmax = std::max(tmax, p.tb);
  }
  const int cell = 40, pad = 50;
  const int w = (rmax - rmin) * cell + 2 * pad, h = (tmax - tmin) * cell + 2 * pad;
  auto X = [&](int r) { return pad + (r - rmin) * cell; };
  auto Y = [&](int tb) { return pad + (tmax - tb) * cell; };
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\">\n";
  for (int r = rmin; r <= rmax; ++r)
    out << "<line x1=\"" << X(r) << "\" y1=\"" << Y(tmax) << "\" x2=\"" << X(r) << "\" y2=\"" << Y(tmin)
        << "\" stroke=\"#ddd\"/>\n";
  for (int t = tmin; t <= tmax; ++t)
    out << "<line x1=\"" << X(rmin) << "\" y1=\"" << Y(t) << "\" x2=\"" << X(rmax) << "\" y2=\"" << Y(t)
        << "\" stroke=\"#ddd\"/>\n";
  for (const auto& c : m.connectors)
    out << "<line class=\"flype\" x1=\"" << X(c.r) << "\" y1=\"" << Y(c.tb) - 16 << "\" x2=\"" << X(c.r)
        << "\" y2=\"" << Y(c.tb) + 16 << "\" stroke=\"gray\" stroke-width=\"3\"/>\n";
  for (const auto& p : m.points) {
    out << "<circle cx=\"" << X(p.r) << "\" cy=\"" << Y(p.tb) << "\" r=\"3\"/>\n";
    for (std::size_t i = 1; i < p.labels.size(); ++i)
      out << "<circle cx=\"" << X(p.r) << "\" cy=\"" << Y(p.tb) << "\" r=\"" << 3 + 5 * i
          << "\" fill=\"none\" stroke=\"black\"/>\n";
  }
  out << "<text x=\"" << w / 2 << "\" y=\"" << h - 10 << "\">r</text>\n";
  out << "<text x=\"10\" y=\"" << h / 2 << "\">tb</text>\n";
  out << "</svg>\n";
}

}  // namespace mtws
