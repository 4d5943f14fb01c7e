#pragma once

// Primitive spectra of finite-dimensional algebras: the Jacobson radical,
// Wedderburn blocks of A/rad, primitive ideals and central characters,
// standard filtrations with their first-page counts, and the relation
// {(P', P) : phi^-1(P') in P} attached to a linear map.

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cychom/algebra.hpp"

namespace cychom {

/// Elements commuting with every basis vector.
inline Subspace<Scalar> center_of(const FDAlgebra& A) {
  const int d = A.dim();
  std::vector<std::tuple<int, int, Scalar>> trips;
  for (int i = 0; i < d; ++i)
    for (int x = 0; x < d; ++x) {
      Element c = axpy(A.basis_product(i, x), Scalar(-1), A.basis_product(x, i));
      for (const auto& [k, v] : c) trips.emplace_back(i * d + k, x, v);
    }
  return kernel_basis(SparseMatrix<Scalar>::from_triplets(d * d, d, std::move(trips)));
}

inline Scalar left_trace(const FDAlgebra& A, const Element& x) {
  Scalar t = Scalar::zero(A.field_order());
  for (int k = 0; k < A.dim(); ++k) t += sparse_at(A.mul(x, basis_element(k)), k);
  return t;
}

/// Kernel of the trace form (x, y) -> tr L_{xy}; in characteristic zero this
/// is the largest nilpotent ideal.  Nonunital algebras go through A+.
inline Subspace<Scalar> jacobson_radical(const FDAlgebra& A) {
  if (!A.is_unital()) {
    FDAlgebra Ap = unitalization(A);
    Subspace<Scalar> r = jacobson_radical(Ap);
    Subspace<Scalar> out(A.dim());
    for (const auto& v : r.basis()) {
      Element w;
      for (const auto& [i, c] : v) {
        if (i == 0) throw Error("InternalError", "radical of A+ leaves A");
        w.emplace_back(i - 1, c);
      }
      out.insert(w);
    }
    return out;
  }
  const int d = A.dim();
  std::vector<Scalar> tr(d);
  for (int m = 0; m < d; ++m) tr[m] = left_trace(A, basis_element(m));
  std::vector<std::tuple<int, int, Scalar>> trips;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      Scalar s = Scalar::zero(A.field_order());
      for (const auto& [m, c] : A.basis_product(i, j)) s += c * tr[m];
      if (!s.is_zero()) trips.emplace_back(i, j, s);
    }
  Subspace<Scalar> rad = kernel_basis(SparseMatrix<Scalar>::from_triplets(d, d, std::move(trips)));
  if (!is_nilpotent_subspace(A, rad)) throw Error("InternalError", "trace-form kernel is not nilpotent");
  return rad;
}

struct WedderburnBlock {
  Element idempotent;  // central primitive idempotent of A/rad, quotient coordinates
  int dim = 0;         // dimension of the block
  int size = 0;        // n with block = M_n over the algebraic closure
};

struct SpectrumReport {
  AlgebraPtr algebra;  // A over the field used for splitting
  int field_order = 1;
  Subspace<Scalar> radical;
  std::shared_ptr<const Quotient> semisimple;  // A/rad (null when A = rad)
  Subspace<Scalar> quotient_center;            // Z(A/rad) in quotient coordinates
  std::vector<WedderburnBlock> blocks;
  std::vector<Subspace<Scalar>> prim_points;   // kernels of a -> e_j pi(a), in A
  Subspace<Scalar> center;                     // Z(A)
  std::vector<Subspace<Scalar>> central_characters;  // P_j cap Z(A)
  std::vector<int> sizes() const {
    std::vector<int> s;
    for (const auto& b : blocks) s.push_back(b.size);
    return s;
  }
};

struct WedderburnOptions {
  std::optional<int> field_order;  // tried first (group algebras: the exponent)
  int max_order = 4;               // largest cyclotomic order searched
  unsigned seed = 1;
};

namespace detail {

inline std::optional<Rational> rationalize(double x, std::int64_t max_den = 1'000'000, double tol = 1e-7) {
  if (!std::isfinite(x) || std::abs(x) > 1e12) return std::nullopt;
  // Continued fraction convergents.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(r);
    auto ai = static_cast<std::int64_t>(a);
    std::int64_t h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) < tol * std::max(1.0, std::abs(x)))
      return Rational(h1, k1);
    double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  if (k1 != 0 && std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) < tol * std::max(1.0, std::abs(x)))
    return Rational(h1, k1);
  return std::nullopt;
}

/// Exact element of Q(z_m) near the complex number w, for fields of degree <= 2.
inline std::optional<Scalar> recognize(std::complex<double> w, int order) {
  const int m = canonical_order(order);
  if (m == 1) {
    if (std::abs(w.imag()) > 1e-7 * std::max(1.0, std::abs(w))) return std::nullopt;
    auto p = rationalize(w.real());
    if (!p) return std::nullopt;
    return Scalar(*p);
  }
  const auto& t = tables(m);
  if (t.phi != 2) throw SplittingFieldTooLarge("exact recognition is limited to fields of degree at most 2");
  const double ang = 2.0 * std::acos(-1.0) / m;
  auto q = rationalize(w.imag() / std::sin(ang));
  if (!q) return std::nullopt;
  auto p = rationalize(w.real() - q->to_double() * std::cos(ang));
  if (!p) return std::nullopt;
  return Cyclotomic(m, {*p, *q});
}

/// Splits the commutative semisimple algebra Z (given as a subspace of Q
/// closed under multiplication) into primitive idempotents over the field of
/// Q, or returns nullopt when its eigenvalues are outside that field.
inline std::optional<std::vector<Element>> split_center(const FDAlgebra& Q, const Subspace<Scalar>& Z, unsigned seed) {
  const auto basis = Z.basis();
  const int r = static_cast<int>(basis.size());
  if (r == 1) return std::vector<Element>{Q.unit()};
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int attempt = 0; attempt < 40; ++attempt) {
    Element z;
    for (int i = 0; i < r; ++i) z = axpy(z, Scalar(coef(rng)), basis[i]);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(r, r);
    for (int i = 0; i < r; ++i) {
      auto c = Z.coordinates(Q.mul(z, basis[i]));
      for (int k = 0; k < r; ++k) {
        auto [re, im] = c[k].to_complex();
        M(k, i) = {re, im};
      }
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    if (es.info() != Eigen::Success) continue;
    auto ev = es.eigenvalues();
    bool distinct = true;
    for (int i = 0; i < r && distinct; ++i)
      for (int j = i + 1; j < r; ++j)
        if (std::abs(ev(i) - ev(j)) < 1e-4) distinct = false;
    if (!distinct) continue;
    std::vector<Scalar> lambda;
    for (int i = 0; i < r; ++i) {
      auto l = recognize(ev(i), Q.field_order());
      if (!l) return std::nullopt;
      lambda.push_back(*l);
    }
    // Exact check: prod (z - l_j) = 0.
    const Element one = Q.unit();
    auto shifted = [&](const Scalar& l) { return axpy(z, -l, one); };
    Element prod = one;
    for (const auto& l : lambda) prod = Q.mul(prod, shifted(l));
    if (!prod.empty()) return std::nullopt;
    std::vector<Element> idem;
    for (int j = 0; j < r; ++j) {
      Element e = one;
      for (int k = 0; k < r; ++k)
        if (k != j) e = scale(Q.mul(e, shifted(lambda[k])), (lambda[j] - lambda[k]).inverse());
      idem.push_back(e);
    }
    return idem;
  }
  throw Error("InternalError", "no generic central element found");
}

}  // namespace detail

inline SpectrumReport wedderburn_blocks(const FDAlgebra& A0, const WedderburnOptions& opt = {}) {
  std::vector<int> orders;
  if (A0.field_order() > 1) {
    orders.push_back(A0.field_order());
  } else {
    if (opt.field_order) orders.push_back(detail::canonical_order(*opt.field_order));
    for (int m = 1; m <= opt.max_order; ++m) {
      const int c = detail::canonical_order(m);
      if (detail::tables(c).phi <= 2 && std::find(orders.begin(), orders.end(), c) == orders.end())
        orders.push_back(c);
    }
  }
  for (int order : orders) {
    if (detail::tables(order).phi > 2 || order > std::max(opt.max_order, opt.field_order.value_or(1)))
      throw SplittingFieldTooLarge("splitting needs cyclotomic order " + std::to_string(order));
    SpectrumReport rep;
    rep.field_order = order;
    rep.algebra = share(order == A0.field_order() ? A0 : A0.over_field(order));
    const FDAlgebra& A = *rep.algebra;
    rep.radical = jacobson_radical(A);
    rep.center = center_of(A);
    if (rep.radical.dim() == A.dim()) return rep;  // nilpotent: empty spectrum
    Quotient q = quotient_by(A, rep.radical);
    if (!q.algebra.is_unital()) {
      auto u = find_unit(q.algebra);
      if (!u) throw Error("InternalError", "semisimple quotient has no unit");
      q.algebra = FDAlgebra(q.algebra.field_order(), q.algebra.labels(), q.algebra.products(), u, q.algebra.name());
    }
    rep.quotient_center = center_of(q.algebra);
    auto idem = detail::split_center(q.algebra, rep.quotient_center, opt.seed);
    if (!idem) continue;
    for (auto& e : *idem) {
      WedderburnBlock b;
      b.idempotent = e;
      b.dim = static_cast<int>(rank_of(q.algebra.left_mult(e)));
      b.size = static_cast<int>(std::lround(std::sqrt(static_cast<double>(b.dim))));
      if (b.size * b.size != b.dim) throw Error("InternalError", "block dimension is not a square");
      rep.blocks.push_back(std::move(b));
    }
    auto key = [](const WedderburnBlock& b) {
      std::string s;
      for (const auto& [i, c] : b.idempotent) s += std::to_string(i) + ":" + c.str() + ";";
      return std::make_pair(b.size, s);
    };
    std::sort(rep.blocks.begin(), rep.blocks.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
    for (const auto& b : rep.blocks) {
      Subspace<Scalar> P = kernel_basis(q.algebra.left_mult(b.idempotent) * q.projection);
      rep.central_characters.push_back(P.intersect(rep.center));
      rep.prim_points.push_back(std::move(P));
    }
    rep.semisimple = std::make_shared<const Quotient>(std::move(q));
    return rep;
  }
  throw SplittingFieldTooLarge("center of A/rad does not split over cyclotomic fields of order <= " +
                               std::to_string(opt.max_order));
}

/// Number of Wedderburn blocks over the algebraic closure: dim Z(A/rad).
inline int block_count(const FDAlgebra& A) {
  Subspace<Scalar> rad = jacobson_radical(A);
  if (rad.dim() == A.dim()) return 0;
  Quotient q = quotient_by(A, rad);
  return center_of(q.algebra).dim();
}

// ---------------------------------------------------------------------------
// Filtrations.

/// A decreasing chain A = I_0 >= I_1 >= ... >= I_n of two-sided ideals.
struct IdealFiltration {
  AlgebraPtr algebra;
  std::vector<Subspace<Scalar>> ideals;
};

inline void check_filtration(const IdealFiltration& F) {
  for (std::size_t k = 0; k < F.ideals.size(); ++k) {
    if (!absorbs(*F.algebra, F.ideals[k])) throw ValidationError("filtration term " + std::to_string(k) + " is not an ideal");
    if (k > 0 && !F.ideals[k - 1].contains(F.ideals[k]))
      throw ValidationError("filtration is not decreasing at " + std::to_string(k));
  }
}

/// I_k = intersection of the primitive ideals with block size at most k.
inline IdealFiltration standard_filtration(const SpectrumReport& S) {
  IdealFiltration F{S.algebra, {}};
  const int d = S.algebra->dim();
  F.ideals.push_back(Subspace<Scalar>::full(d));
  int top = 0;
  for (const auto& b : S.blocks) top = std::max(top, b.size);
  for (int k = 1; k <= top; ++k) {
    Subspace<Scalar> I = Subspace<Scalar>::full(d);
    for (std::size_t j = 0; j < S.blocks.size(); ++j)
      if (S.blocks[j].size <= k) I = I.intersect(S.prim_points[j]);
    F.ideals.push_back(std::move(I));
  }
  if (top == 0) F.ideals.push_back(S.radical);
  return F;
}

inline IdealFiltration standard_filtration(const FDAlgebra& A, const WedderburnOptions& opt = {}) {
  return standard_filtration(wedderburn_blocks(A, opt));
}

namespace detail {

/// Center of A/I and the image of J in A/I, in quotient coordinates (I = A gives zero spaces).
struct LayerData {
  int quotient_dim = 0;
  int center_cap_layer = 0;  // dim Z(A/I) cap (J/I)
  bool semiprimitive = true;
  bool layer_nilpotent_mod_product = true;
};

inline LayerData layer_data(const FDAlgebra& A, const Subspace<Scalar>& J, const Subspace<Scalar>& I) {
  LayerData L;
  if (I.dim() == A.dim()) return L;
  Quotient q = quotient_by(A, I);
  L.quotient_dim = q.algebra.dim();
  Subspace<Scalar> Jbar(q.algebra.dim());
  for (const auto& v : J.basis()) Jbar.insert(q.projection.apply(v));
  Subspace<Scalar> Z = center_of(q.algebra);
  Subspace<Scalar> Ik = Z.intersect(Jbar);
  L.center_cap_layer = Ik.dim();
  L.semiprimitive = jacobson_radical(q.algebra).dim() == 0;
  // (J/I) modulo the product ideal I_k (A/I) must be nilpotent.
  Subspace<Scalar> prod = product_space(q.algebra, Ik, Subspace<Scalar>::full(q.algebra.dim()));
  if (prod.dim() < q.algebra.dim()) {
    Quotient qq = quotient_by(q.algebra, prod);
    Subspace<Scalar> img(qq.algebra.dim());
    for (const auto& v : Jbar.basis()) img.insert(qq.projection.apply(v));
    L.layer_nilpotent_mod_product = is_nilpotent_subspace(qq.algebra, img);
  }
  return L;
}

}  // namespace detail

struct AbelianCheck {
  std::vector<bool> semiprimitive;     // condition (i) per k
  std::vector<bool> nilpotent_layers;  // condition (iii) per k
  bool last_is_radical = false;
  bool ok = false;
  std::string notes;
};

inline AbelianCheck abelian_check(const IdealFiltration& F) {
  check_filtration(F);
  const FDAlgebra& A = *F.algebra;
  AbelianCheck c;
  c.ok = true;
  for (std::size_t k = 1; k < F.ideals.size(); ++k) {
    auto L = detail::layer_data(A, F.ideals[k - 1], F.ideals[k]);
    c.semiprimitive.push_back(L.semiprimitive);
    c.nilpotent_layers.push_back(L.layer_nilpotent_mod_product);
    c.ok = c.ok && L.semiprimitive && L.layer_nilpotent_mod_product;
  }
  c.last_is_radical = F.ideals.back() == jacobson_radical(A);
  c.ok = c.ok && c.last_is_radical;
  c.notes =
      "condition (ii) holds by block structure over a splitting field; condition (iii) read as the quotient of the "
      "layer by the product ideal I_{k-1}(A/I_k)";
  return c;
}

struct E1Term {
  int p = 0;       // filtration index
  int points = 0;  // #(X_p minus Y_p) = dim Z(A/I_p) cap (I_{p-1}/I_p)
};

struct E1Table {
  std::vector<E1Term> terms;
  int even_total = 0, odd_total = 0;
};

/// First page for the standard filtration of a finite-dimensional algebra:
/// E1_{-p,q} has the points of X_p outside Y_p when q - p is even, else 0.
inline E1Table spectral_e1(const IdealFiltration& F, const WedderburnOptions& opt = {}) {
  check_filtration(F);
  const IdealFiltration standard = standard_filtration(*F.algebra, opt);
  bool same = standard.ideals.size() == F.ideals.size();
  for (std::size_t k = 0; same && k < F.ideals.size(); ++k)
    same = F.ideals[k] == standard.ideals[k] ||
           (F.ideals[k].ambient() == standard.ideals[k].ambient() && F.ideals[k].contains(standard.ideals[k]) &&
            standard.ideals[k].contains(F.ideals[k]));
  if (!same) throw FiltrationNotStandard("the first page is computed for the standard filtration only");
  E1Table t;
  for (std::size_t p = 1; p < F.ideals.size(); ++p) {
    auto L = detail::layer_data(*F.algebra, F.ideals[p - 1], F.ideals[p]);
    t.terms.push_back({static_cast<int>(p), L.center_cap_layer});
    t.even_total += L.center_cap_layer;
  }
  return t;
}

// ---------------------------------------------------------------------------
// The relation R = {(P', P) : phi^-1(P') in P}.

struct PrimRelation {
  std::vector<std::pair<int, int>> pairs;  // (index in Prim(J), index in Prim(L))
  std::vector<int> map;                    // Prim(J) -> Prim(L), -1 when not a function at that point
  bool is_function = false;
  bool bijective = false;
  int prim_source = 0, prim_target = 0;
};

/// phi: L -> J as a dim J x dim L matrix; spectra over the same field.
inline PrimRelation prim_relation(const SparseMatrix<Scalar>& phi, const SpectrumReport& L, const SpectrumReport& J) {
  if (phi.cols() != L.algebra->dim() || phi.rows() != J.algebra->dim())
    throw AmbientMismatch("map shape does not match the algebras");
  PrimRelation R;
  R.prim_source = static_cast<int>(L.prim_points.size());
  R.prim_target = static_cast<int>(J.prim_points.size());
  R.is_function = true;
  for (int jp = 0; jp < R.prim_target; ++jp) {
    const auto& Pp = J.prim_points[jp];
    SparseMatrix<Scalar> red(phi.rows(), phi.cols());
    for (int c = 0; c < phi.cols(); ++c) red.set_col(c, Pp.reduce(phi.col(c)));
    Subspace<Scalar> pre = kernel_basis(red);
    int hit = -1, count = 0;
    for (int lp = 0; lp < R.prim_source; ++lp)
      if (L.prim_points[lp].contains(pre)) {
        R.pairs.emplace_back(jp, lp);
        hit = lp;
        ++count;
      }
    R.map.push_back(count == 1 ? hit : -1);
    if (count != 1) R.is_function = false;
  }
  if (R.is_function) {
    std::vector<int> seen(R.prim_source, 0);
    bool inj = true;
    for (int v : R.map) inj = inj && !seen[v]++;
    R.bijective = inj && R.prim_source == R.prim_target;
  }
  return R;
}

/// Spectra of L and J over one field (the larger of the two splitting orders).
inline std::pair<SpectrumReport, SpectrumReport> common_spectra(const FDAlgebra& L, const FDAlgebra& J,
                                                                WedderburnOptions opt = {}) {
  SpectrumReport sL = wedderburn_blocks(L, opt), sJ = wedderburn_blocks(J, opt);
  if (sL.field_order == sJ.field_order) return {std::move(sL), std::move(sJ)};
  if (sL.field_order != 1 && sJ.field_order != 1) throw FieldMismatch("spectra split over different fields");
  opt.field_order = std::max(sL.field_order, sJ.field_order);
  opt.max_order = std::max(opt.max_order, *opt.field_order);
  if (sL.field_order == 1)
    sL = wedderburn_blocks(L, opt);
  else
    sJ = wedderburn_blocks(J, opt);
  return {std::move(sL), std::move(sJ)};
}

}  // namespace cychom
