#pragma once

#include <cstdlib>
#include <vector>

#include "mtws/torus/tiling.hpp"

namespace mtws::torus {

struct GraphEdge {
  int u, v;
  int steps;  // signed core steps from u to v
  int hyperbolic;
};

// G_{eps,delta}: elliptic points of parity eps (identified by disc) joined through
// the saddles of parity delta.
struct SingularityGraph {
  int eps = 1;
  int delta = 1;
  int core_length = 1;
  int vertex_count = 0;
  std::vector<GraphEdge> edges;
};

struct GraphComponent {
  bool closed = false;  // closed curve after pruning; otherwise a tree hanging off it (or free)
  std::vector<int> edges;
  std::vector<int> vertices;
};

// Homology class on the torus: lambda copies of the C'_K longitude plus mu meridians.
struct TorusClass {
  std::int64_t lambda = 0;
  std::int64_t mu = 0;
  bool operator==(const TorusClass&) const = default;

  // Closed curves are unoriented here; pick lambda > 0 (or mu > 0 when lambda = 0).
  TorusClass normalized() const {
    if (lambda < 0 || (lambda == 0 && mu < 0)) return {-lambda, -mu};
    return *this;
  }
};

inline std::int64_t intersection(const TorusClass& a, const TorusClass& b) {
  return a.lambda * b.mu - a.mu * b.lambda;
}

inline SingularityGraph graph_G(const StandardTiling& t, int eps, int delta) {
  SingularityGraph g;
  g.eps = eps > 0 ? 1 : -1;
  g.delta = delta > 0 ? 1 : -1;
  g.core_length = t.core_length;
  g.vertex_count = t.discs;
  for (const auto& h : t.hyperbolic) {
    if (h.parity != g.delta) continue;
    if (g.eps > 0) g.edges.push_back({h.plus_u, h.plus_v, h.plus_steps, h.id});
    else g.edges.push_back({h.minus_u, h.minus_v, h.minus_steps, h.id});
  }
  return g;
}

namespace detail {

inline std::vector<bool> cycle_edges(const SingularityGraph& g) {
  std::vector<int> deg(g.vertex_count, 0);
  for (const auto& e : g.edges) ++deg[e.u], ++deg[e.v];
  std::vector<bool> alive(g.edges.size(), true);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      if (!alive[i]) continue;
      const auto& e = g.edges[i];
      if (deg[e.u] == 1 || deg[e.v] == 1) {
        alive[i] = false;
        --deg[e.u], --deg[e.v];
        changed = true;
      }
    }
  }
  return alive;
}

inline std::vector<std::vector<int>> edge_groups(const SingularityGraph& g, const std::vector<bool>& pick) {
  Forest f(g.vertex_count);
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    if (pick[i]) f.parent[f.find(g.edges[i].u)] = f.find(g.edges[i].v);
  std::map<int, std::vector<int>> groups;
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    if (pick[i]) groups[f.find(g.edges[i].u)].push_back(static_cast<int>(i));
  std::vector<std::vector<int>> out;
  for (auto& [r, es] : groups) out.push_back(std::move(es));
  return out;
}

}  // namespace detail

inline std::vector<GraphComponent> components(const SingularityGraph& g) {
  auto alive = detail::cycle_edges(g);
  std::vector<bool> dead(alive.size());
  for (std::size_t i = 0; i < alive.size(); ++i) dead[i] = !alive[i];
  std::vector<GraphComponent> out;
  std::vector<bool> touched(g.vertex_count, false);
  auto add = [&](const std::vector<int>& es, bool closed) {
    GraphComponent c;
    c.closed = closed;
    c.edges = es;
    std::set<int> vs;
    for (int i : es) vs.insert(g.edges[i].u), vs.insert(g.edges[i].v);
    if (closed) for (int v : vs) touched[v] = true;
    c.vertices.assign(vs.begin(), vs.end());
    out.push_back(std::move(c));
  };
  for (const auto& es : detail::edge_groups(g, alive)) add(es, true);
  for (const auto& es : detail::edge_groups(g, dead)) add(es, false);
  return out;
}

inline std::vector<GraphComponent> closed_curves(const SingularityGraph& g) {
  std::vector<GraphComponent> out;
  for (auto& c : components(g))
    if (c.closed) out.push_back(std::move(c));
  return out;
}

// Walk a closed component once; a vertex of degree > 2 means it is not a simple curve.
inline TorusClass curve_class(const SingularityGraph& g, const GraphComponent& c) {
  std::map<int, std::vector<int>> at;
  for (int i : c.edges) at[g.edges[i].u].push_back(i), at[g.edges[i].v].push_back(i);
  for (auto& [v, es] : at)
    if (es.size() != 2) throw TorusError(TorusErrc::MixedSlopes, "closed component is not a simple curve");
  std::set<int> used;
  int first = c.edges.front();
  const int start = g.edges[first].u;
  int cur = g.edges[first].v;
  std::int64_t steps = g.edges[first].steps, turns = 1;
  used.insert(first);
  while (cur != start) {
    int next = -1;
    for (int i : at[cur])
      if (!used.count(i)) next = i;
    if (next < 0) throw TorusError(TorusErrc::MixedSlopes, "closed component is not a simple curve");
    used.insert(next);
    const auto& e = g.edges[next];
    if (e.u == cur) steps += e.steps, turns += 1, cur = e.v;
    else steps -= e.steps, turns -= 1, cur = e.u;
  }
  if (used.size() != c.edges.size()) throw TorusError(TorusErrc::MixedSlopes, "closed component is not a simple curve");
  if (steps % g.core_length != 0)
    throw TorusError(TorusErrc::BadPresentation, "curve does not close along the core");
  // Each saddle crossed in its own direction passes one meridian; the G_- graphs
  // run against the orientation of the G_+ ones.
  return TorusClass{steps / g.core_length, -g.eps * turns}.normalized();
}

enum class FramingName { CK, CKPrime };

// lambda' = lambda + kFramingShift * mu, fixed by the trefoil's -2/11 anchor.
inline constexpr std::int64_t kFramingShift = 6;

struct Framing {
  FramingName name;
  TorusClass meridian_class;    // in C'_K coordinates
  TorusClass longitude_class;   // in C'_K coordinates
  std::array<std::array<std::int64_t, 2>, 2> from_ck_prime;  // (lambda, mu) -> this basis

  TorusClass convert(const TorusClass& c) const {
    return {from_ck_prime[0][0] * c.lambda + from_ck_prime[0][1] * c.mu,
            from_ck_prime[1][0] * c.lambda + from_ck_prime[1][1] * c.mu};
  }
  TorusClass unconvert(const TorusClass& c) const {
    // inverse of a determinant +-1 integer matrix
    const auto& m = from_ck_prime;
    std::int64_t det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    return {det * (m[1][1] * c.lambda - m[0][1] * c.mu), det * (-m[1][0] * c.lambda + m[0][0] * c.mu)};
  }
};

inline Framing ck_prime() { return {FramingName::CKPrime, {0, 1}, {1, 0}, {{{1, 0}, {0, 1}}}}; }
inline Framing ck() { return {FramingName::CK, {0, 1}, {1, -kFramingShift}, {{{1, 0}, {kFramingShift, 1}}}}; }
inline Framing framing(FramingName n) { return n == FramingName::CK ? ck() : ck_prime(); }

inline Rational slope_of(const TorusClass& c, const Framing& f) {
  if (c.lambda == 0 && c.mu == 0) throw TorusError(TorusErrc::NullHomotopic, "trivial class");
  auto k = f.convert(c);
  if (k.mu == 0) throw TorusError(TorusErrc::InfiniteSlope, "curve is a longitude");
  return Rational(k.lambda, k.mu);
}

inline Rational convert_slope(const Rational& s, const Framing& from, const Framing& to) {
  TorusClass in_from{s.numerator(), s.denominator()};
  return slope_of(from.unconvert(in_from), to);
}

inline TorusClass graph_class(const SingularityGraph& g) {
  auto curves = closed_curves(g);
  if (curves.empty()) throw TorusError(TorusErrc::NullHomotopic, "graph has no closed curve");
  std::optional<TorusClass> common;
  for (const auto& c : curves) {
    auto k = curve_class(g, c);
    if (k.lambda == 0 && k.mu == 0) throw TorusError(TorusErrc::NullHomotopic, "a closed curve bounds");
    if (common && !(*common == k)) throw TorusError(TorusErrc::MixedSlopes, "closed curves are not parallel");
    common = k;
  }
  return *common;
}

inline Rational curve_slope(const SingularityGraph& g, const Framing& f) { return slope_of(graph_class(g), f); }

// Cancels the elliptic/hyperbolic pairs of the trees, leaving only the closed curves.
inline SingularityGraph giroux_eliminate(const SingularityGraph& g) {
  auto alive = detail::cycle_edges(g);
  if (std::all_of(alive.begin(), alive.end(), [](bool b) { return b; }))
    throw TorusError(TorusErrc::NothingToEliminate, "no tree left to cancel");
  SingularityGraph out = g;
  out.edges.clear();
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    if (alive[i]) out.edges.push_back(g.edges[i]);
  return out;
}

// The divides of a standard tiling: the closed curves of G_{++} and G_{--}.
inline std::vector<TorusClass> legendrian_divides(const StandardTiling& t) {
  std::vector<TorusClass> out;
  for (int s : {1, -1}) {
    auto g = graph_G(t, s, s);
    for (const auto& c : closed_curves(g)) out.push_back(curve_class(g, c));
  }
  return out;
}

struct KnotTrace {
  TorusClass cls;
};

struct DivideIntersection {
  std::int64_t algebraic;
  std::int64_t geometric;
};

// Essential simple closed curves on the torus meet minimally in |det| points.
inline std::vector<DivideIntersection> knot_divide_intersections(const KnotTrace& k, const SingularityGraph& g) {
  std::vector<DivideIntersection> out;
  for (const auto& c : closed_curves(g)) {
    auto n = intersection(curve_class(g, c), k.cls);
    out.push_back({n, std::llabs(n)});
  }
  return out;
}

}  // namespace mtws::torus
