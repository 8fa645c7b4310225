#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace mtws {

/// Integer Laurent polynomial in t, stored sparsely by exponent.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(std::int64_t constant) {
    if (constant != 0) coeffs_[0] = constant;
  }
  /// Dense constructor: coefficients[k] multiplies t^(k + lowest).
  static LaurentPoly from_coefficients(const std::vector<std::int64_t>& coefficients, int lowest = 0) {
    LaurentPoly p;
    for (std::size_t k = 0; k < coefficients.size(); ++k) {
      if (coefficients[k] != 0) p.coeffs_[static_cast<int>(k) + lowest] = coefficients[k];
    }
    return p;
  }
  static LaurentPoly monomial(std::int64_t c, int exponent) {
    LaurentPoly p;
    if (c != 0) p.coeffs_[exponent] = c;
    return p;
  }

  bool is_zero() const { return coeffs_.empty(); }
  const std::map<int, std::int64_t>& terms() const { return coeffs_; }
  std::int64_t coefficient(int e) const {
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? 0 : it->second;
  }
  int lowest_exponent() const { return coeffs_.empty() ? 0 : coeffs_.begin()->first; }
  int highest_exponent() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }
  int span() const { return highest_exponent() - lowest_exponent(); }

  /// Multiply by +-t^k so the lowest exponent is 0 and the leading
  /// coefficient is positive.
  LaurentPoly normalized() const {
    if (is_zero()) return {};
    LaurentPoly p;
    const int shift = lowest_exponent();
    const std::int64_t sign = coeffs_.rbegin()->second < 0 ? -1 : 1;
    for (auto [e, c] : coeffs_) p.coeffs_[e - shift] = sign * c;
    return p;
  }

  /// p(t) -> p(t^k)
  LaurentPoly substitute_power(int k) const {
    LaurentPoly p;
    for (auto [e, c] : coeffs_) p.coeffs_[e * k] = c;
    return p;
  }

  /// p(t) -> p(1/t)
  LaurentPoly inverted() const { return substitute_power(-1); }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (auto [e, c] : o.coeffs_) add_term(e, c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (auto [e, c] : o.coeffs_) add_term(e, -c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly p;
    for (auto [ea, ca] : a.coeffs_)
      for (auto [eb, cb] : b.coeffs_) p.add_term(ea + eb, ca * cb);
    return p;
  }
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      auto [e, c] = *it;
      const std::int64_t mag = c < 0 ? -c : c;
      if (first) out << (c < 0 ? "-" : "");
      else out << (c < 0 ? " - " : " + ");
      first = false;
      if (e == 0 || mag != 1) out << mag;
      if (e != 0) {
        out << "t";
        if (e != 1) out << "^" << e;
      }
    }
    return out.str();
  }

  /// Coefficient list, lowest exponent first, for hashing/serialization.
  std::vector<std::int64_t> dense() const {
    std::vector<std::int64_t> v;
    if (is_zero()) return v;
    v.assign(span() + 1, 0);
    for (auto [e, c] : coeffs_) v[e - lowest_exponent()] = c;
    return v;
  }

 private:
  void add_term(int e, std::int64_t c) {
    if (c == 0) return;
    auto [it, inserted] = coeffs_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) coeffs_.erase(it);
    }
  }

  std::map<int, std::int64_t> coeffs_;
};

inline std::ostream& operator<<(std::ostream& out, const LaurentPoly& p) { return out << p.to_string(); }

}  // namespace mtws
