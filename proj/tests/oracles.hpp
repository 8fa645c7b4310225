#pragma once
// Independent reference computations used only by the tests.

#include <boost/multiprecision/cpp_int.hpp>
#include <random>
#include <vector>

#include "mtws/grid_diagram.hpp"
#include "mtws/laurent_poly.hpp"

namespace oracle {

using boost::multiprecision::cpp_int;
using Poly = std::vector<cpp_int>;  // dense, index = exponent

inline void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
inline Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0)
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}
inline Poly sub(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  trim(a);
  return a;
}
/// Exact division; aborts the test via exception if not exact.
inline Poly divide(Poly a, const Poly& b) {
  trim(a);
  if (a.empty()) return {};
  if (b.empty()) throw std::runtime_error("division by zero polynomial");
  Poly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, 0);
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    if (a.back() % b.back() != 0) throw std::runtime_error("inexact division");
    const cpp_int c = a.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
    trim(a);
  }
  if (!a.empty()) throw std::runtime_error("inexact division");
  trim(q);
  return q;
}

/// Fraction-free (Bareiss) determinant over Z[t].
inline Poly bareiss(std::vector<std::vector<Poly>> m) {
  const std::size_t n = m.size();
  Poly prev{1};
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].empty()) {
      std::size_t piv = k + 1;
      while (piv < n && m[piv][k].empty()) ++piv;
      if (piv == n) return {};
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = divide(sub(mul(m[i][j], m[k][k]), mul(m[i][k], m[k][j])), prev);
    prev = m[k][k];
  }
  Poly d = m[n - 1][n - 1];
  if (sign < 0)
    for (auto& c : d) c = -c;
  return d;
}

/// Winding number of the knot projection around each lattice point (a, b):
/// a is the row boundary above row a, b the column boundary left of column b.
inline std::vector<std::vector<int>> winding_matrix(const mtws::GridDiagram& d) {
  const int n = d.size();
  std::vector<std::vector<int>> w(n, std::vector<int>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int s = 0;
      for (int i = 0; i < a; ++i) {
        const int lo = std::min(d.x_col(i), d.o_col(i)), hi = std::max(d.x_col(i), d.o_col(i));
        if (lo < b && b <= hi) s += d.x_col(i) < d.o_col(i) ? 1 : -1;
      }
      w[a][b] = s;
    }
  return w;
}

/// det(t^w(a,b)) = +-t^k (1-t)^(n-1) Delta(t) for a grid of size n.
inline mtws::LaurentPoly grid_alexander(const mtws::GridDiagram& d) {
  const int n = d.size();
  auto w = winding_matrix(d);
  int lo = 0;
  for (auto& row : w)
    for (int v : row) lo = std::min(lo, v);
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      Poly p(w[a][b] - lo + 1, 0);
      p.back() = 1;
      m[a][b] = p;
    }
  Poly det = bareiss(m);
  const Poly one_minus_t{1, -1};
  for (int i = 0; i + 1 < n; ++i) det = divide(det, one_minus_t);
  std::vector<std::int64_t> c;
  for (auto& v : det) c.push_back(static_cast<std::int64_t>(v));
  return mtws::LaurentPoly::from_coefficients(c).normalized();
}

/// Uniformly random knot grid of size n (rejection sampling).
inline mtws::GridDiagram random_grid(int n, std::mt19937_64& rng) {
  std::vector<int> x(n), o(n);
  for (;;) {
    for (int i = 0; i < n; ++i) x[i] = o[i] = i;
    std::shuffle(x.begin(), x.end(), rng);
    std::shuffle(o.begin(), o.end(), rng);
    bool ok = true;
    for (int i = 0; i < n; ++i) ok = ok && x[i] != o[i];
    if (!ok) continue;
    try {
      return mtws::GridDiagram(x, o);
    } catch (const mtws::GridError&) {
    }
  }
}

}  // namespace oracle
