#pragma once

// Named built-in algebras, ideals, morphisms and group actions, and name
// resolution for the command-line driver.

#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "cychom/crossprod.hpp"
#include "cychom/io.hpp"
#include "cychom/spectrum.hpp"

namespace cychom {

namespace detail {

inline std::optional<int> suffix_int(const std::string& name, const std::string& prefix) {
  if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size()) return std::nullopt;
  const std::string tail = name.substr(prefix.size());
  if (!std::all_of(tail.begin(), tail.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    return std::nullopt;
  return std::stoi(tail);
}

}  // namespace detail

/// Extends generator permutations to the whole group and validates them.
inline FiniteVarietyAction action_from_description(const ActionDescription& d) {
  FiniteGroup G = named_group(d.group);
  const int n = G.order();
  std::vector<std::vector<int>> perms(n);
  std::vector<int> id(d.points);
  for (int x = 0; x < d.points; ++x) id[x] = x;
  perms[G.identity()] = id;
  std::vector<int> frontier{G.identity()};
  for (const auto& [g, p] : d.generators) {
    if (g < 0 || g >= n) throw ValidationError("generator element " + std::to_string(g) + " not in " + d.group);
    if (static_cast<int>(p.size()) != d.points) throw ValidationError("generator permutation has the wrong length");
  }
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int h : frontier)
      for (const auto& [g, p] : d.generators) {
        const int gh = G.mul(g, h);
        std::vector<int> q(d.points);
        for (int x = 0; x < d.points; ++x) q[x] = p[perms[h][x]];
        if (perms[gh].empty()) {
          perms[gh] = std::move(q);
          next.push_back(gh);
        } else if (perms[gh] != q) {
          throw ValidationError("generators do not define an action of " + d.group);
        }
      }
    frontier = std::move(next);
  }
  for (const auto& p : perms)
    if (p.empty()) throw ValidationError("generators do not generate " + d.group);
  return make_variety_action(std::move(G), std::move(perms));
}

/// The five point-set actions of the corpus.
inline std::vector<std::string> corpus_action_names() {
  return {"trivial_Z2", "swap2", "swap_fix3", "rot3", "S3_on_3"};
}

inline ActionDescription named_action_description(const std::string& name) {
  if (name == "trivial_Z2") return {"Z2", 1, {{1, {0}}}};
  if (name == "swap2") return {"Z2", 2, {{1, {1, 0}}}};
  if (name == "swap_fix3") return {"Z2", 3, {{1, {1, 0, 2}}}};
  if (name == "rot3") return {"Z3", 3, {{1, {1, 2, 0}}}};
  if (name == "S3_on_3") {
    // S3 is built from the permutations of {0,1,2}; element labels carry them.
    FiniteGroup G = symmetric_group_3();
    ActionDescription d{"S3", 3, {}};
    for (int g = 0; g < G.order(); ++g) {
      if (g == G.identity()) continue;
      std::vector<int> p;
      std::istringstream is(G.label(g).substr(1, G.label(g).size() - 2));
      for (int x; is >> x;) p.push_back(x);
      d.generators.emplace_back(g, p);
    }
    return d;
  }
  throw InvalidArgument("unknown action '" + name + "'");
}

inline FiniteVarietyAction named_action(const std::string& name) {
  return action_from_description(named_action_description(name));
}

/// Names of the built-in algebras listed by `corpus`.
inline std::vector<std::string> corpus_algebra_names() {
  return {"ground_field", "Q^2",     "Q^3",      "dual_numbers", "Q[x]/(x^3)", "Q[x]/(x^4)",
          "M2",           "M3",      "upper_tri_2", "group:Z2",  "group:Z4",   "group:S3",
          "group:D4",     "group:Q8", "crossed:trivial_Z2", "crossed:swap2", "crossed:swap_fix3",
          "crossed:rot3", "crossed:S3_on_3"};
}

/// Built-in algebra by name.  Accepted: ground_field (or Q), Q^l, dual_numbers,
/// Q[x]/(x^N) (or trunc_N), M_N (or MN), upper_tri_N, group:<G>, crossed:<action>.
inline FDAlgebra named_algebra(const std::string& name) {
  using detail::suffix_int;
  FDAlgebra A;
  if (name == "ground_field" || name == "Q") {
    A = ground_field();
  } else if (auto l = suffix_int(name, "Q^")) {
    A = functions_on_points(*l);
  } else if (name == "dual_numbers") {
    A = truncated_polynomial(2);
  } else if (name.rfind("Q[x]/(x^", 0) == 0 && name.back() == ')') {
    auto N = suffix_int(name.substr(0, name.size() - 1), "Q[x]/(x^");
    if (!N) throw InvalidArgument("bad truncated polynomial name '" + name + "'");
    A = truncated_polynomial(*N);
  } else if (auto N = suffix_int(name, "trunc_")) {
    A = truncated_polynomial(*N);
  } else if (auto M = suffix_int(name, "M_") ? suffix_int(name, "M_") : suffix_int(name, "M")) {
    A = matrix_algebra(ground_field(), *M);
  } else if (auto U = suffix_int(name, "upper_tri_")) {
    A = upper_triangular(*U);
  } else if (name.rfind("group:", 0) == 0) {
    A = group_algebra(named_group(name.substr(6)));
  } else if (name.rfind("crossed:", 0) == 0) {
    A = *variety_crossed_product(named_action(name.substr(8))).product;
  } else {
    throw InvalidArgument("unknown algebra '" + name + "'");
  }
  A.set_name(name);
  return A;
}

/// A corpus name, or a path to an algebra file.
inline FDAlgebra resolve_algebra(const std::string& spec) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) return parse_algebra(read_text_file(spec));
  return named_algebra(spec);
}

/// Named two-sided ideals: radical, strict_upper, first_factor, or
/// gens:i,j,... for the ideal generated by basis elements.
inline TwoSidedIdeal named_ideal(AlgebraPtr A, const std::string& name) {
  const int d = A->dim();
  if (name == "radical") return make_ideal(A, jacobson_radical(*A));
  if (name == "strict_upper") {
    // Upper-triangular basis enumerates (i, j), i <= j; strict entries have i < j.
    std::vector<Element> gens;
    for (int k = 0; k < d; ++k) {
      const std::string& l = A->label(k);
      if (l.size() >= 3 && l[0] == 'E' && l[1] < l[2]) gens.push_back(basis_element(k));
    }
    if (gens.empty()) throw InvalidArgument("strict_upper needs an upper-triangular algebra");
    return ideal_generated_by(A, gens);
  }
  if (name == "first_factor") return ideal_generated_by(A, {basis_element(0)});
  if (name.rfind("gens:", 0) == 0) {
    std::vector<Element> gens;
    std::istringstream is(name.substr(5));
    for (std::string tok; std::getline(is, tok, ',');) {
      int i = std::stoi(tok);
      if (i < 0 || i >= d) throw InvalidArgument("generator index out of range");
      gens.push_back(basis_element(i));
    }
    return ideal_generated_by(A, gens);
  }
  throw InvalidArgument("unknown ideal '" + name + "'");
}

struct ExcisionPair {
  std::string algebra, ideal;
};

inline std::vector<ExcisionPair> corpus_excision_pairs() {
  return {{"Q^2", "first_factor"}, {"dual_numbers", "radical"}, {"upper_tri_2", "strict_upper"}};
}

/// Named morphisms for the spectrum-preserving check.
inline LinearMap named_morphism(const std::string& name) {
  auto map_of = [](FDAlgebra L, FDAlgebra J, std::vector<std::tuple<int, int, Scalar>> trips) {
    auto Lp = share(std::move(L));
    auto Jp = share(std::move(J));
    return make_linear_map(Lp, Jp, SparseMatrix<Scalar>::from_triplets(Jp->dim(), Lp->dim(), trips));
  };
  if (name == "inclusion_Q_M2")
    return map_of(ground_field(), matrix_algebra(ground_field(), 2), {{0, 0, Scalar(1)}, {3, 0, Scalar(1)}});
  if (name == "diagonal_Q_Q2") return map_of(ground_field(), functions_on_points(2), {{0, 0, Scalar(1)}, {1, 0, Scalar(1)}});
  if (name == "swap_Q2")
    return map_of(functions_on_points(2), functions_on_points(2), {{0, 1, Scalar(1)}, {1, 0, Scalar(1)}});
  throw InvalidArgument("unknown morphism '" + name + "'");
}

inline std::vector<std::string> corpus_morphism_names() { return {"inclusion_Q_M2", "diagonal_Q_Q2", "swap_Q2"}; }

}  // namespace cychom
