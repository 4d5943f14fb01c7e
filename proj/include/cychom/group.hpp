#pragma once

// Finite groups given by multiplication tables, together with the
// conjugacy data used throughout: classes, centralizers, cyclic subgroups
// and the characters of those cyclic subgroups.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cychom/cyclotomic.hpp"
#include "cychom/error.hpp"

namespace cychom {

class FiniteGroup {
 public:
  FiniteGroup() = default;
  FiniteGroup(std::string name, std::vector<std::vector<int>> table, std::vector<std::string> labels)
      : name_(std::move(name)), table_(std::move(table)), labels_(std::move(labels)) {
    const int n = order();
    if (n == 0) throw ValidationError("empty group table");
    if (static_cast<int>(labels_.size()) != n) throw ValidationError("group label count differs from order");
    for (const auto& row : table_) {
      if (static_cast<int>(row.size()) != n) throw ValidationError("group table is not square");
      for (int x : row)
        if (x < 0 || x >= n) throw ValidationError("group table entry out of range");
    }
    identity_ = -1;
    for (int e = 0; e < n && identity_ < 0; ++e) {
      bool ok = true;
      for (int g = 0; g < n && ok; ++g) ok = table_[e][g] == g && table_[g][e] == g;
      if (ok) identity_ = e;
    }
    if (identity_ < 0) throw ValidationError("group table has no identity");
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
            throw ValidationError("group table is not associative at (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
    inverse_.assign(n, -1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (table_[a][b] == identity_ && table_[b][a] == identity_) inverse_[a] = b;
    for (int a = 0; a < n; ++a)
      if (inverse_[a] < 0) throw ValidationError("element " + labels_[a] + " has no inverse");
  }

  const std::string& name() const { return name_; }
  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int mul(int a, int b) const { return table_[a][b]; }
  int inv(int a) const { return inverse_[a]; }
  const std::string& label(int g) const { return labels_[g]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<std::vector<int>>& table() const { return table_; }

  int pow(int g, long k) const {
    int r = identity_;
    long e = ((k % element_order(g)) + element_order(g)) % element_order(g);
    for (long i = 0; i < e; ++i) r = mul(r, g);
    return r;
  }
  int element_order(int g) const {
    int k = 1, x = g;
    while (x != identity_) {
      x = mul(x, g);
      ++k;
    }
    return k;
  }
  int exponent() const {
    int e = 1;
    for (int g = 0; g < order(); ++g) e = std::lcm(e, element_order(g));
    return e;
  }
  int conjugate(int h, int g) const { return mul(mul(h, g), inv(h)); }  // h g h^-1

 private:
  std::string name_;
  std::vector<std::vector<int>> table_;
  std::vector<std::string> labels_;
  int identity_ = 0;
  std::vector<int> inverse_;
};

struct ConjugacyClass {
  int representative = 0;          // lowest element index in the class
  std::vector<int> members;        // sorted
  std::vector<int> centralizer;    // of the representative, sorted
  std::vector<int> cyclic;         // rep^0, rep^1, ..., rep^(k-1)
  int size() const { return static_cast<int>(members.size()); }
  int rep_order() const { return static_cast<int>(cyclic.size()); }
};

struct GroupMetadata {
  std::vector<ConjugacyClass> classes;
  std::vector<int> class_of;  // element -> class index
  int exponent = 1;
};

inline GroupMetadata group_metadata(const FiniteGroup& g) {
  GroupMetadata md;
  const int n = g.order();
  md.class_of.assign(n, -1);
  md.exponent = g.exponent();
  for (int x = 0; x < n; ++x) {
    if (md.class_of[x] >= 0) continue;
    ConjugacyClass cc;
    cc.representative = x;
    for (int h = 0; h < n; ++h) cc.members.push_back(g.conjugate(h, x));
    std::sort(cc.members.begin(), cc.members.end());
    cc.members.erase(std::unique(cc.members.begin(), cc.members.end()), cc.members.end());
    for (int h = 0; h < n; ++h)
      if (g.mul(h, x) == g.mul(x, h)) cc.centralizer.push_back(h);
    int p = g.identity();
    do {
      cc.cyclic.push_back(p);
      p = g.mul(p, x);
    } while (p != g.identity());
    for (int m : cc.members) md.class_of[m] = static_cast<int>(md.classes.size());
    md.classes.push_back(std::move(cc));
  }
  return md;
}

/// Character pi_j of the cyclic group <gamma> of order k: pi_j(gamma^i) = z_k^(i j),
/// expressed in Q(z_field_order) (k must divide field_order).
inline Scalar cyclic_character(int k, int j, int i, int field_order) {
  if (field_order % k != 0 && !(k <= 2 && field_order == 1)) throw FieldMismatch("character field too small");
  if (k <= 2) return Scalar::rational(field_order, Rational(((i * j) % 2 == 0 || k == 1) ? 1 : -1));
  return Scalar::zeta(k, static_cast<long>(i) * j).lift(field_order);
}

// ---------------------------------------------------------------------------
// Named groups.

inline FiniteGroup cyclic_group(int n) {
  if (n <= 0) throw InvalidArgument("cyclic group order must be positive");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) {
    labels.push_back(a == 0 ? "e" : (a == 1 ? "g" : "g^" + std::to_string(a)));
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  }
  return FiniteGroup("Z" + std::to_string(n), std::move(t), std::move(labels));
}

namespace detail {

/// Closure of permutation generators; identity first, then lexicographic.
inline FiniteGroup permutation_group(const std::string& name, const std::vector<std::vector<int>>& gens, int degree) {
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::vector<std::vector<int>> elems{id};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      std::vector<int> p(degree);
      for (int k = 0; k < degree; ++k) p[k] = g[elems[i][k]];  // g after elems[i]
      if (std::find(elems.begin(), elems.end(), p) == elems.end()) elems.push_back(p);
    }
  std::sort(elems.begin() + 1, elems.end());
  const int n = static_cast<int>(elems.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i) index[elems[i]] = i;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> p(degree);
      for (int k = 0; k < degree; ++k) p[k] = elems[a][elems[b][k]];  // a after b
      t[a][b] = index.at(p);
    }
  std::vector<std::string> labels;
  for (const auto& p : elems) {
    std::string s = "[";
    for (int k = 0; k < degree; ++k) s += (k ? " " : "") + std::to_string(p[k]);
    labels.push_back(s + "]");
  }
  labels[0] = "e";
  return FiniteGroup(name, std::move(t), std::move(labels));
}

}  // namespace detail

inline FiniteGroup symmetric_group_3() {
  return detail::permutation_group("S3", {{1, 0, 2}, {1, 2, 0}}, 3);
}

/// Symmetries of a square with vertices 0..3 in cyclic order.
inline FiniteGroup dihedral_group_8() {
  return detail::permutation_group("D4", {{1, 2, 3, 0}, {0, 3, 2, 1}}, 4);
}

/// Quaternion group {+-1, +-i, +-j, +-k}.
inline FiniteGroup quaternion_group() {
  // unit index u in {1,i,j,k} = {0,1,2,3}; element = 2*u + (negative ? 1 : 0)
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int ua = a / 2, ub = b / 2;
      int sign = unit_sign[ua][ub] * (a % 2 ? -1 : 1) * (b % 2 ? -1 : 1);
      t[a][b] = 2 * unit_mul[ua][ub] + (sign < 0 ? 1 : 0);
    }
  return FiniteGroup("Q8", std::move(t), {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

/// Looks up "Z<n>", "S3", "D4", "Q8", "trivial".
inline FiniteGroup named_group(const std::string& name) {
  if (name == "S3") return symmetric_group_3();
  if (name == "D4") return dihedral_group_8();
  if (name == "Q8") return quaternion_group();
  if (name == "trivial" || name == "Z1") return cyclic_group(1);
  if (name.size() > 1 && name[0] == 'Z') {
    try {
      return cyclic_group(std::stoi(name.substr(1)));
    } catch (const std::logic_error&) {
    }
  }
  throw InvalidArgument("unknown group '" + name + "'");
}

}  // namespace cychom
