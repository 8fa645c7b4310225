#include "mtws/alexander.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace mtws {

namespace {

constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t s = lo + hi;
  if (s >= kPrime) s -= kPrime;
  return s;
}
std::uint64_t addmod(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}
std::uint64_t submod(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }
std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}
std::uint64_t invmod(std::uint64_t a) { return powmod(a, kPrime - 2); }
std::uint64_t from_signed(std::int64_t v) {
  return v >= 0 ? static_cast<std::uint64_t>(v) % kPrime
                : kPrime - (static_cast<std::uint64_t>(-v) % kPrime);
}
std::int64_t to_signed(std::uint64_t v) {
  return v > kPrime / 2 ? -static_cast<std::int64_t>(kPrime - v) : static_cast<std::int64_t>(v);
}

std::uint64_t det_mod(std::vector<std::vector<std::uint64_t>> m) {
  const std::size_t n = m.size();
  std::uint64_t det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = submod(0, det);
    }
    det = mulmod(det, m[c][c]);
    const std::uint64_t inv = invmod(m[c][c]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      const std::uint64_t f = mulmod(m[r][c], inv);
      for (std::size_t k = c; k < n; ++k) m[r][k] = submod(m[r][k], mulmod(f, m[c][k]));
    }
  }
  return det;
}

/// Matrix whose entries are polynomials a + b t (a, b small integers).
struct LinearPolyMatrix {
  std::size_t n = 0;
  std::vector<std::int64_t> constant, linear;  // row-major
  LinearPolyMatrix(std::size_t size) : n(size), constant(size * size, 0), linear(size * size, 0) {}
  void add(std::size_t r, std::size_t c, std::int64_t a, std::int64_t b) {
    constant[r * n + c] += a;
    linear[r * n + c] += b;
  }
};

/// Exact determinant of a matrix with linear entries: evaluate at n+1
/// points modulo a 61-bit prime and interpolate. Coefficients are assumed to
/// fit well inside the prime.
LaurentPoly determinant(const LinearPolyMatrix& m) {
  const std::size_t n = m.n;
  if (n == 0) return LaurentPoly(1);
  const std::size_t pts = n + 1;
  std::vector<std::uint64_t> xs(pts), ys(pts);
  for (std::size_t k = 0; k < pts; ++k) {
    const std::uint64_t t = k + 2;
    xs[k] = t;
    std::vector<std::vector<std::uint64_t>> a(n, std::vector<std::uint64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        a[i][j] = addmod(from_signed(m.constant[i * n + j]), mulmod(from_signed(m.linear[i * n + j]), t));
    ys[k] = det_mod(std::move(a));
  }
  // Newton divided differences, then expand to monomial basis.
  std::vector<std::uint64_t> coef = ys;
  for (std::size_t j = 1; j < pts; ++j)
    for (std::size_t i = pts - 1; i >= j; --i) {
      coef[i] = mulmod(submod(coef[i], coef[i - 1]), invmod(submod(xs[i], xs[i - j])));
      if (i == j) break;
    }
  std::vector<std::uint64_t> poly(pts, 0);
  for (std::size_t i = pts; i-- > 0;) {
    // poly = poly * (t - xs[i]) + coef[i]
    std::vector<std::uint64_t> next(pts, 0);
    for (std::size_t k = 0; k + 1 < pts; ++k) {
      next[k + 1] = addmod(next[k + 1], poly[k]);
      next[k] = submod(next[k], mulmod(poly[k], xs[i]));
    }
    next[0] = addmod(next[0], coef[i]);
    poly = std::move(next);
  }
  std::vector<std::int64_t> out(pts);
  for (std::size_t k = 0; k < pts; ++k) out[k] = to_signed(poly[k]);
  return LaurentPoly::from_coefficients(out);
}

}  // namespace

LaurentPoly alexander_polynomial(const GridDiagram& d) {
  const int n = d.size();
  const std::vector<Crossing> xs = crossings(d);
  if (xs.empty()) return LaurentPoly(1);

  // Walk the knot starting at row 0's O, visiting each row segment (O->X)
  // then each column segment (X->O). Arcs change at every undercrossing.
  std::vector<std::vector<int>> under_in_row(n);  // crossing indices per row
  std::vector<int> over_arc(xs.size(), -1), in_arc(xs.size(), -1), out_arc(xs.size(), -1);
  std::vector<std::vector<int>> over_in_col(n);
  for (std::size_t k = 0; k < xs.size(); ++k) {
    under_in_row[xs[k].row].push_back(static_cast<int>(k));
    over_in_col[xs[k].col].push_back(static_cast<int>(k));
  }
  int arc = 0;
  int row = 0;
  // Start just after the first undercrossing found on the walk so that arc
  // numbering does not wrap; simplest is to walk twice and keep the second
  // pass labels.
  for (int pass = 0; pass < 2; ++pass) {
    row = 0;
    for (int step = 0; step < n; ++step) {
      const int from = d.o_col(row), to = d.x_col(row);
      auto& list = under_in_row[row];
      std::vector<int> ordered = list;
      std::sort(ordered.begin(), ordered.end(), [&](int a, int b) {
        return from < to ? xs[a].col < xs[b].col : xs[a].col > xs[b].col;
      });
      for (int k : ordered) {
        in_arc[k] = arc;
        ++arc;
        out_arc[k] = arc;
      }
      const int col = to;
      for (int k : over_in_col[col]) over_arc[k] = arc;
      row = d.o_row(col);
    }
  }
  // Second pass labels are offset by the crossing count; the final arc of
  // the walk equals the first, so reduce modulo the crossing count.
  const int c = static_cast<int>(xs.size());
  auto norm = [&](int a) { return ((a % c) + c) % c; };

  LinearPolyMatrix m(c - 1);
  for (int k = 0; k < c - 1; ++k) {
    const int ov = norm(over_arc[k]), in = norm(in_arc[k]), out = norm(out_arc[k]);
    auto put = [&](int a, std::int64_t c0, std::int64_t c1) {
      if (a == c - 1) return;  // deleted column
      m.add(k, a, c0, c1);
    };
    if (xs[k].sign > 0) {
      put(ov, 1, -1);   // 1 - t
      put(in, 0, 1);    // t
      put(out, -1, 0);  // -1
    } else {
      put(ov, 1, -1);
      put(out, 0, 1);
      put(in, -1, 0);
    }
  }
  LaurentPoly det = determinant(m);
  return det.normalized();
}

}  // namespace mtws
