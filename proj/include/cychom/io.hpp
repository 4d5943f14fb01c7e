#pragma once

// Text serialization of algebras, group actions and K-class representatives.
// The format is line based: a header "cychom-<kind> <version>", keyword
// lines, and "end".  '#' starts a comment line.  See docs/file-format.md.
// When the unit is a basis vector, products with it are implied and omitted.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cychom/algebra.hpp"

namespace cychom {

inline constexpr int kFormatVersion = 1;

namespace detail {

inline std::string compact(const Scalar& s) {
  std::string out;
  for (char c : s.str())
    if (c != ' ') out.push_back(c);
  return out;
}

struct LineReader {
  std::istringstream in;
  int line_no = 0;
  explicit LineReader(std::string_view text) : in{std::string(text)} {}

  /// Next non-blank, non-comment line split as keyword + rest.
  bool next(std::string& key, std::string& rest) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto b = line.find_first_not_of(" \t");
      if (b == std::string::npos || line[b] == '#') continue;
      auto e = line.find_first_of(" \t", b);
      key = line.substr(b, e == std::string::npos ? std::string::npos : e - b);
      auto r = e == std::string::npos ? std::string::npos : line.find_first_not_of(" \t", e);
      rest = r == std::string::npos ? "" : line.substr(r);
      while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t')) rest.pop_back();
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& field, const std::string& what) const {
    throw ParseError("line " + std::to_string(line_no) + ", field '" + field + "': " + what);
  }
  long integer(const std::string& field, const std::string& tok) const {
    try {
      std::size_t used = 0;
      long v = std::stol(tok, &used);
      if (used != tok.size()) fail(field, "not an integer: '" + tok + "'");
      return v;
    } catch (const std::logic_error&) {
      fail(field, "not an integer: '" + tok + "'");
    }
  }
  Scalar scalar(const std::string& field, const std::string& tok, int order) const {
    try {
      return Scalar::parse(tok, order);
    } catch (const ParseError& e) {
      fail(field, e.what());
    } catch (const Error& e) {
      fail(field, e.what());
    }
  }
};

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

inline void expect_header(LineReader& r, const std::string& kind) {
  std::string key, rest;
  if (!r.next(key, rest)) r.fail("header", "empty file");
  if (key != "cychom-" + kind) r.fail("header", "expected 'cychom-" + kind + "', got '" + key + "'");
  if (r.integer("version", rest) != kFormatVersion) r.fail("version", "unsupported version '" + rest + "'");
}

/// Sparse element "i:scalar i:scalar ..." with coordinates below dim.
inline Element parse_element(const LineReader& r, const std::string& field, const std::string& rest, int dim,
                             int order) {
  std::vector<std::pair<int, Scalar>> acc;
  for (const auto& tok : split_ws(rest)) {
    auto colon = tok.find(':');
    if (colon == std::string::npos) r.fail(field, "expected index:scalar, got '" + tok + "'");
    long i = r.integer(field, tok.substr(0, colon));
    if (i < 0 || i >= dim) r.fail(field, "index " + std::to_string(i) + " out of range");
    acc.emplace_back(static_cast<int>(i), r.scalar(field, tok.substr(colon + 1), order));
  }
  return canonicalize(std::move(acc));
}

inline std::string emit_element(const Element& e) {
  std::string s;
  for (const auto& [i, c] : e) s += (s.empty() ? "" : " ") + std::to_string(i) + ":" + compact(c);
  return s;
}

/// Index u when the unit is the basis vector e_u, else -1.
inline int unit_basis_index(const FDAlgebra& A) {
  if (!A.is_unital() || A.unit().size() != 1 || !(A.unit()[0].second == Scalar(1))) return -1;
  const int u = A.unit()[0].first;
  for (int j = 0; j < A.dim(); ++j)
    if (!(A.basis_product(u, j) == basis_element(j)) || !(A.basis_product(j, u) == basis_element(j))) return -1;
  return u;
}

}  // namespace detail

/// Canonical text of an algebra; parse_algebra(emit_algebra(A)) reproduces A.
inline std::string emit_algebra(const FDAlgebra& A, const std::string& note = {}) {
  std::ostringstream os;
  os << "cychom-algebra " << kFormatVersion << "\n";
  os << "name " << A.name() << "\n";
  os << "field " << A.field_order() << "\n";
  os << "dim " << A.dim() << "\n";
  for (int i = 0; i < A.dim(); ++i) os << "label " << i << " " << A.label(i) << "\n";
  if (A.is_unital())
    os << "unit " << detail::emit_element(A.unit()) << "\n";
  else
    os << "unit none\n";
  if (!note.empty()) os << "note " << note << "\n";
  const int u = detail::unit_basis_index(A);
  for (int i = 0; i < A.dim(); ++i)
    for (int j = 0; j < A.dim(); ++j) {
      if (i == u || j == u) continue;  // implied by the unit line
      for (const auto& [k, c] : A.basis_product(i, j))
        os << "product " << i << " " << j << " " << k << " " << detail::compact(c) << "\n";
    }
  os << "end\n";
  return os.str();
}

struct ParsedAlgebra {
  FDAlgebra algebra;
  std::string note;
};

/// Parses and validates; ParseError carries the line and field, and a
/// non-associative table raises ValidationError naming (i, j, k).
inline ParsedAlgebra parse_algebra_with_note(std::string_view text) {
  detail::LineReader r(text);
  detail::expect_header(r, "algebra");
  std::string key, rest, name, note;
  int order = 1, dim = -1;
  bool have_field = false, have_unit = false, ended = false;
  std::vector<std::string> labels;
  std::vector<bool> labelled;
  std::optional<Element> unit;
  std::vector<std::vector<std::pair<int, Scalar>>> prods;
  while (r.next(key, rest)) {
    if (key == "end") {
      ended = true;
      break;
    }
    if (key == "name") {
      name = rest;
    } else if (key == "note") {
      note = rest;
    } else if (key == "field") {
      order = static_cast<int>(r.integer("field", rest));
      if (order < 1) r.fail("field", "order must be positive");
      have_field = true;
    } else if (key == "dim") {
      if (dim >= 0) r.fail("dim", "repeated");
      dim = static_cast<int>(r.integer("dim", rest));
      if (dim < 1) r.fail("dim", "dimension must be positive");
      labels.resize(dim);
      labelled.assign(dim, false);
      prods.resize(static_cast<std::size_t>(dim) * dim);
    } else if (dim < 0) {
      r.fail(key, "'dim' must come before '" + key + "'");
    } else if (key == "label") {
      auto sp = rest.find(' ');
      long i = r.integer("label", rest.substr(0, sp));
      if (i < 0 || i >= dim) r.fail("label", "index out of range");
      labels[i] = sp == std::string::npos ? "" : rest.substr(sp + 1);
      labelled[i] = true;
    } else if (key == "unit") {
      have_unit = true;
      if (rest != "none") unit = detail::parse_element(r, "unit", rest, dim, order);
    } else if (key == "product") {
      auto toks = detail::split_ws(rest);
      if (toks.size() != 4) r.fail("product", "expected 'i j k scalar'");
      long i = r.integer("product.i", toks[0]), j = r.integer("product.j", toks[1]),
           k = r.integer("product.k", toks[2]);
      for (long v : {i, j, k})
        if (v < 0 || v >= dim) r.fail("product", "index " + std::to_string(v) + " out of range");
      prods[i * dim + j].emplace_back(static_cast<int>(k), r.scalar("product.scalar", toks[3], order));
    } else {
      r.fail(key, "unknown keyword");
    }
  }
  if (!ended) r.fail("end", "missing 'end'");
  if (!have_field) r.fail("field", "missing");
  if (dim < 0) r.fail("dim", "missing");
  if (!have_unit) r.fail("unit", "missing (use 'unit none')");
  for (int i = 0; i < dim; ++i)
    if (!labelled[i]) labels[i] = "e" + std::to_string(i);
  // A unit that is a basis vector e_u implies e_u e_j = e_j e_u = e_j for
  // pairs the file leaves out.
  if (unit && unit->size() == 1 && (*unit)[0].second == Scalar(1)) {
    const int u = (*unit)[0].first;
    for (int j = 0; j < dim; ++j) {
      if (prods[u * dim + j].empty()) prods[u * dim + j] = basis_element(j);
      if (prods[j * dim + u].empty()) prods[j * dim + u] = basis_element(j);
    }
  }
  std::vector<Element> table;
  table.reserve(prods.size());
  for (auto& p : prods) table.push_back(canonicalize(std::move(p)));
  FDAlgebra A(order, std::move(labels), std::move(table), std::move(unit), name);
  auto v = validate(A);
  if (!v.ok) {
    if (v.failing_triple) {
      const auto& t = *v.failing_triple;
      throw ValidationError("not associative at (i, j, k) = (" + std::to_string(t[0]) + ", " + std::to_string(t[1]) +
                            ", " + std::to_string(t[2]) + ")");
    }
    throw ValidationError(v.message);
  }
  return ParsedAlgebra{std::move(A), note};
}

inline FDAlgebra parse_algebra(std::string_view text) { return parse_algebra_with_note(text).algebra; }

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// 64-bit FNV-1a digest, printed in hex; used to identify inputs in reports.
inline std::string digest(std::string_view text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) s[i] = hex[h & 15];
  return s;
}

// ---------------------------------------------------------------------------
// Permutation actions of a named group on finitely many points.

struct ActionDescription {
  std::string group;  // named group
  int points = 0;
  std::vector<std::pair<int, std::vector<int>>> generators;  // (group element, permutation)
};

inline std::string emit_action(const ActionDescription& a) {
  std::ostringstream os;
  os << "cychom-action " << kFormatVersion << "\ngroup " << a.group << "\npoints " << a.points << "\n";
  for (const auto& [g, p] : a.generators) {
    os << "generator " << g;
    for (int x : p) os << " " << x;
    os << "\n";
  }
  os << "end\n";
  return os.str();
}

inline ActionDescription parse_action(std::string_view text) {
  detail::LineReader r(text);
  detail::expect_header(r, "action");
  ActionDescription a;
  std::string key, rest;
  bool ended = false;
  while (r.next(key, rest)) {
    if (key == "end") {
      ended = true;
      break;
    }
    if (key == "group") {
      a.group = rest;
    } else if (key == "points") {
      a.points = static_cast<int>(r.integer("points", rest));
      if (a.points < 1) r.fail("points", "must be positive");
    } else if (key == "generator") {
      auto toks = detail::split_ws(rest);
      if (a.points < 1) r.fail("generator", "'points' must come first");
      if (static_cast<int>(toks.size()) != a.points + 1) r.fail("generator", "expected element and permutation");
      std::vector<int> p;
      for (std::size_t i = 1; i < toks.size(); ++i) p.push_back(static_cast<int>(r.integer("generator", toks[i])));
      a.generators.emplace_back(static_cast<int>(r.integer("generator", toks[0])), std::move(p));
    } else {
      r.fail(key, "unknown keyword");
    }
  }
  if (!ended) r.fail("end", "missing 'end'");
  if (a.group.empty()) r.fail("group", "missing");
  return a;
}

// ---------------------------------------------------------------------------
// K-class representatives: a square matrix over a named algebra.

struct KClassDescription {
  std::string kind;     // idempotent | invertible
  std::string algebra;  // corpus name or file path
  int size = 1;
  // Coordinates in M_N(A): (row, column, basis index, scalar).
  std::vector<std::tuple<int, int, int, std::string>> entries;
};

inline KClassDescription parse_kclass(std::string_view text) {
  detail::LineReader r(text);
  detail::expect_header(r, "kclass");
  KClassDescription k;
  std::string key, rest;
  bool ended = false;
  while (r.next(key, rest)) {
    if (key == "end") {
      ended = true;
      break;
    }
    if (key == "kind") {
      if (rest != "idempotent" && rest != "invertible") r.fail("kind", "expected idempotent or invertible");
      k.kind = rest;
    } else if (key == "algebra") {
      k.algebra = rest;
    } else if (key == "size") {
      k.size = static_cast<int>(r.integer("size", rest));
      if (k.size < 1) r.fail("size", "must be positive");
    } else if (key == "entry") {
      auto toks = detail::split_ws(rest);
      if (toks.size() != 4) r.fail("entry", "expected 'row column index scalar'");
      k.entries.emplace_back(static_cast<int>(r.integer("entry.row", toks[0])),
                             static_cast<int>(r.integer("entry.column", toks[1])),
                             static_cast<int>(r.integer("entry.index", toks[2])), toks[3]);
    } else {
      r.fail(key, "unknown keyword");
    }
  }
  if (!ended) r.fail("end", "missing 'end'");
  if (k.kind.empty()) r.fail("kind", "missing");
  if (k.algebra.empty()) r.fail("algebra", "missing");
  return k;
}

/// The matrix of a K-class description as an element of M_N(A).
inline Element kclass_element(const KClassDescription& k, const FDAlgebra& A) {
  std::vector<std::pair<int, Scalar>> acc;
  const int d = A.dim();
  for (const auto& [p, q, i, s] : k.entries) {
    if (p < 0 || p >= k.size || q < 0 || q >= k.size || i < 0 || i >= d)
      throw ParseError("entry (" + std::to_string(p) + ", " + std::to_string(q) + ", " + std::to_string(i) +
                       ") out of range");
    acc.emplace_back((p * k.size + q) * d + i, Scalar::parse(s, A.field_order()));
  }
  return canonicalize(std::move(acc));
}

}  // namespace cychom
