#pragma once

// Elements of the cyclotomic field Q(z), z a primitive m-th root of unity,
// stored in the power basis 1, z, ..., z^(phi(m)-1) reduced modulo the
// m-th cyclotomic polynomial.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "cychom/error.hpp"
#include "cychom/rational.hpp"

namespace cychom {

namespace detail {

struct CyclotomicTables {
  int order = 1;
  int phi = 1;
  std::vector<Rational> poly;                   // monic Phi_m, low degree first
  std::vector<std::vector<Rational>> power;     // z^k reduced, k = 0..m-1
};

inline std::vector<Rational> poly_divide_exact(std::vector<Rational> num, const std::vector<Rational>& den) {
  const std::size_t dn = den.size() - 1;
  std::vector<Rational> quo(num.size() - dn);
  for (std::size_t i = num.size(); i-- > dn;) {
    Rational c = num[i] / den.back();
    quo[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return quo;
}

inline const CyclotomicTables& tables(int m) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<CyclotomicTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it != cache.end()) return *it->second;

  // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d, computed without recursion into the cache.
  std::map<int, std::vector<Rational>> phis;
  for (int d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    std::vector<Rational> p(d + 1);
    p[0] = Rational(-1);
    p[d] = Rational(1);
    for (auto& [e, q] : phis)
      if (d % e == 0) p = poly_divide_exact(p, q);
    phis[d] = p;
  }
  auto t = std::make_unique<CyclotomicTables>();
  t->order = m;
  t->poly = phis[m];
  t->phi = static_cast<int>(t->poly.size()) - 1;
  const int phi = t->phi;
  std::vector<Rational> cur(phi);
  cur[0] = Rational(1);
  for (int k = 0; k < m; ++k) {
    t->power.push_back(cur);
    // multiply by z and reduce: z^phi = -sum poly[i] z^i
    std::vector<Rational> nxt(phi);
    Rational top = cur[phi - 1];
    for (int i = phi - 1; i >= 1; --i) nxt[i] = cur[i - 1];
    if (!top.is_zero())
      for (int i = 0; i < phi; ++i) nxt[i] -= top * t->poly[i];
    cur = std::move(nxt);
  }
  auto& ref = *t;
  cache.emplace(m, std::move(t));
  return ref;
}

inline int canonical_order(int m) {
  if (m <= 0) throw InvalidArgument("cyclotomic order must be positive");
  return m == 2 ? 1 : m;
}

}  // namespace detail

class Cyclotomic {
 public:
  Cyclotomic() : c_(1) {}
  Cyclotomic(const Rational& r) : c_{r} {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(std::int64_t n) : c_{Rational(n)} {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(int order, std::vector<Rational> coeffs) : order_(detail::canonical_order(order)), c_(std::move(coeffs)) {
    const auto& t = detail::tables(order_);
    if (static_cast<int>(c_.size()) > t.phi) reduce_long();
    c_.resize(t.phi);
  }

  /// Rational value placed in Q(z_m).
  static Cyclotomic rational(int order, const Rational& r) {
    Cyclotomic x = zero(order);
    x.c_[0] = r;
    return x;
  }
  static Cyclotomic zero(int order) {
    int m = detail::canonical_order(order);
    Cyclotomic x;
    x.order_ = m;
    x.c_.assign(detail::tables(m).phi, Rational());
    return x;
  }
  static Cyclotomic one(int order) { return rational(order, Rational(1)); }
  /// z_m^k.
  static Cyclotomic zeta(int order, long k) {
    if (order == 2) return rational(1, Rational(k % 2 == 0 ? 1 : -1));
    const auto& t = detail::tables(order);
    long r = ((k % order) + order) % order;
    Cyclotomic x;
    x.order_ = order;
    x.c_ = t.power[r];
    return x;
  }

  int order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& r) { return r.is_zero(); });
  }
  bool is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const Rational& r) { return r.is_zero(); });
  }
  bool is_one() const { return c_[0].is_one() && is_rational(); }
  const Rational& rational_part() const { return c_[0]; }

  /// Image under Q(z_m) -> Q(z_M), z_m -> z_M^(M/m); requires m | M.
  Cyclotomic lift(int target) const {
    target = detail::canonical_order(target);
    if (target == order_) return *this;
    if (target % order_ != 0) throw FieldMismatch("cannot lift order " + std::to_string(order_) + " to " + std::to_string(target));
    const auto& t = detail::tables(target);
    const int step = target / order_;
    Cyclotomic r = zero(target);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k].is_zero()) continue;
      const auto& p = t.power[(k * step) % target];
      for (int i = 0; i < t.phi; ++i)
        if (!p[i].is_zero()) r.c_[i] += c_[k] * p[i];
    }
    return r;
  }

  Cyclotomic operator-() const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ != b.order_) return mixed(a, b, [](const Cyclotomic& x, const Cyclotomic& y) { return x + y; });
    Cyclotomic r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i)
      if (!b.c_[i].is_zero()) r.c_[i] += b.c_[i];
    return r;
  }
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ != b.order_) return mixed(a, b, [](const Cyclotomic& x, const Cyclotomic& y) { return x - y; });
    Cyclotomic r = a;
    for (std::size_t i = 0; i < r.c_.size(); ++i)
      if (!b.c_[i].is_zero()) r.c_[i] -= b.c_[i];
    return r;
  }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ != b.order_) return mixed(a, b, [](const Cyclotomic& x, const Cyclotomic& y) { return x * y; });
    if (a.c_.size() == 1) return Cyclotomic(a.c_[0] * b.c_[0]);
    std::vector<Rational> prod(2 * a.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        if (!b.c_[j].is_zero()) prod[i + j] += a.c_[i] * b.c_[j];
    }
    return Cyclotomic(a.order_, std::move(prod));
  }
  Cyclotomic& operator+=(const Cyclotomic& o) { return *this = *this + o; }
  Cyclotomic& operator-=(const Cyclotomic& o) { return *this = *this - o; }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  Cyclotomic inverse() const;
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this / o; }

  /// Complex conjugation z -> z^-1.
  Cyclotomic conj() const {
    if (order_ == 1) return *this;
    const auto& t = detail::tables(order_);
    Cyclotomic r = zero(order_);
    for (int k = 0; k < t.phi; ++k) {
      if (c_[k].is_zero()) continue;
      const auto& p = t.power[(order_ - k) % order_];
      for (int i = 0; i < t.phi; ++i)
        if (!p[i].is_zero()) r.c_[i] += c_[k] * p[i];
    }
    return r;
  }

  /// Approximate value under z -> exp(2 pi i / m).
  std::pair<double, double> to_complex() const;

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) return a.c_ == b.c_;
    int l = std::lcm(a.order_, b.order_);
    return a.lift(l).c_ == b.lift(l).c_;
  }
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  /// "c0 + c1*z + c2*z^2"; the order is carried separately.
  std::string str() const {
    std::string out;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k].is_zero()) continue;
      Rational c = c_[k];
      bool neg = c.sign() < 0;
      if (neg) c = -c;
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      std::string mono = k == 0 ? "" : (k == 1 ? "z" : "z^" + std::to_string(k));
      if (k == 0)
        out += c.str();
      else if (c.is_one())
        out += mono;
      else
        out += c.str() + "*" + mono;
    }
    return out.empty() ? "0" : out;
  }

  /// Parses the format produced by `str()` (exponents may exceed phi(m)).
  static Cyclotomic parse(std::string_view text, int order) {
    order = detail::canonical_order(order);
    std::string s;
    for (char ch : text)
      if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw ParseError("empty scalar");
    Cyclotomic acc = zero(order);
    std::size_t pos = 0;
    while (pos < s.size()) {
      bool neg = false;
      if (s[pos] == '+' || s[pos] == '-') {
        neg = s[pos] == '-';
        ++pos;
      }
      std::size_t end = pos;
      while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
      std::string term = s.substr(pos, end - pos);
      if (term.empty()) throw ParseError("dangling sign in scalar '" + s + "'");
      Rational coef(1);
      long power = 0;
      auto zpos = term.find('z');
      if (zpos == std::string::npos) {
        coef = Rational::parse(term);
      } else {
        std::string head = term.substr(0, zpos);
        if (!head.empty()) {
          if (head.back() != '*') throw ParseError("expected '*' before z in '" + term + "'");
          head.pop_back();
          coef = Rational::parse(head);
        }
        std::string tail = term.substr(zpos + 1);
        if (tail.empty()) {
          power = 1;
        } else {
          if (tail[0] != '^' || tail.size() < 2) throw ParseError("bad exponent in '" + term + "'");
          try {
            power = std::stol(tail.substr(1));
          } catch (...) {
            throw ParseError("bad exponent in '" + term + "'");
          }
        }
        if (order == 1) throw ParseError("z used in a rational field");
      }
      Cyclotomic t = zeta(order, power) * rational(order, coef);
      acc = neg ? acc - t : acc + t;
      pos = end;
    }
    return acc;
  }

 private:
  // Rationals (order 1) live in every field and are lifted silently; two
  // genuinely different cyclotomic fields must be brought together by the caller.
  template <class Op>
  static Cyclotomic mixed(const Cyclotomic& a, const Cyclotomic& b, Op op) {
    if (a.order_ == 1) return op(a.lift(b.order_), b);
    if (b.order_ == 1) return op(a, b.lift(a.order_));
    throw FieldMismatch("field orders " + std::to_string(a.order_) + " and " + std::to_string(b.order_) + " differ");
  }

  void reduce_long() {
    const auto& t = detail::tables(order_);
    std::vector<Rational> r(t.phi);
    for (std::size_t k = 0; k < c_.size(); ++k) {
      if (c_[k].is_zero()) continue;
      const auto& p = t.power[k % order_];
      for (int i = 0; i < t.phi; ++i)
        if (!p[i].is_zero()) r[i] += c_[k] * p[i];
    }
    c_ = std::move(r);
  }

  int order_ = 1;
  std::vector<Rational> c_;
};

using Scalar = Cyclotomic;

inline Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero scalar");
  const int n = static_cast<int>(c_.size());
  if (n == 1) return Cyclotomic(c_[0].inverse());
  // Solve (multiplication by *this) y = 1 by Gauss-Jordan on the n x n matrix.
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (int j = 0; j < n; ++j) {
    Cyclotomic col = *this * zeta(order_, j);
    for (int i = 0; i < n; ++i) m[i][j] = col.c_[i];
  }
  m[0][n] = Rational(1);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    while (piv < n && m[piv][col].is_zero()) ++piv;
    if (piv == n) throw DivisionByZero("singular multiplication matrix");
    std::swap(m[piv], m[col]);
    Rational inv = m[col][col].inverse();
    for (int j = col; j <= n; ++j) m[col][j] *= inv;
    for (int i = 0; i < n; ++i) {
      if (i == col || m[i][col].is_zero()) continue;
      Rational f = m[i][col];
      for (int j = col; j <= n; ++j) m[i][j] -= f * m[col][j];
    }
  }
  std::vector<Rational> y(n);
  for (int i = 0; i < n; ++i) y[i] = m[i][n];
  return Cyclotomic(order_, std::move(y));
}

inline std::pair<double, double> Cyclotomic::to_complex() const {
  double re = 0, im = 0;
  const double pi = std::acos(-1.0);
  for (std::size_t k = 0; k < c_.size(); ++k) {
    double v = c_[k].to_double();
    re += v * std::cos(2 * pi * double(k) / order_);
    im += v * std::sin(2 * pi * double(k) / order_);
  }
  return {re, im};
}
}  // namespace cychom
