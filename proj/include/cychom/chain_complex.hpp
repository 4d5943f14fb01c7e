#pragma once

// Finite windows of chain complexes with cached boundary ranks, homology
// dimensions, canonical representatives, and ranks of induced maps through
// mapping cones.

#include <cstdlib>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cychom/linalg.hpp"

namespace cychom {

/// Chain-space dimension budget; CYCHOM_BUDGET_DIMS overrides the default.
inline std::size_t default_budget_dims() {
  if (const char* env = std::getenv("CYCHOM_BUDGET_DIMS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 2'000'000;
}

/// Above this chain dimension representatives are not computed.
inline constexpr int kRepresentativeBudget = 6000;

/// A matrix with its rank computed at most once.
class Boundary {
 public:
  explicit Boundary(SparseMatrix<Scalar> m) : m_(std::move(m)) {}
  const SparseMatrix<Scalar>& matrix() const { return m_; }
  std::size_t rank() const {
    std::call_once(once_, [this] { rank_ = rank_of(m_); });
    return rank_;
  }

 private:
  SparseMatrix<Scalar> m_;
  mutable std::once_flag once_;
  mutable std::size_t rank_ = 0;
};

using BoundaryPtr = std::shared_ptr<const Boundary>;

inline BoundaryPtr make_boundary(SparseMatrix<Scalar> m) { return std::make_shared<const Boundary>(std::move(m)); }

/// Degrees 0..top(), d(n): C_n -> C_{n-1}.  d(0) is the zero map to the
/// zero space.  `sign` scales every differential (used by shifts).
class ChainComplex {
 public:
  ChainComplex() = default;
  ChainComplex(std::vector<int> dims, std::vector<BoundaryPtr> d, int sign = 1)
      : dims_(std::move(dims)), d_(std::move(d)), sign_(sign) {
    if (d_.size() != dims_.size()) throw InvalidArgument("one boundary per degree expected");
    for (std::size_t n = 0; n < d_.size(); ++n) {
      if (!d_[n]) d_[n] = make_boundary(SparseMatrix<Scalar>(n ? dims_[n - 1] : 0, dims_[n]));
      const auto& m = d_[n]->matrix();
      if (m.cols() != dims_[n] || m.rows() != (n ? dims_[n - 1] : 0))
        throw InvalidArgument("boundary " + std::to_string(n) + " has the wrong shape");
    }
  }

  int top() const { return static_cast<int>(dims_.size()) - 1; }
  int dim(int n) const { return n < 0 || n > top() ? 0 : dims_[n]; }
  const std::vector<int>& dims() const { return dims_; }
  int sign() const { return sign_; }
  const BoundaryPtr& boundary(int n) const { return d_.at(n); }
  SparseMatrix<Scalar> d(int n) const {
    if (n < 0 || n > top()) throw InvalidArgument("boundary degree out of window");
    return sign_ == 1 ? d_[n]->matrix() : d_[n]->matrix().scaled(Scalar(sign_));
  }

  std::size_t rank_d(int n) const {
    if (n <= 0) return 0;
    if (n > top()) throw InvalidArgument("rank of a boundary beyond the window");
    return d_[n]->rank();
  }

  /// dim H_n; needs n + 1 <= top().
  int homology_dim(int n) const {
    if (n < 0) return 0;
    if (n + 1 > top()) throw InvalidArgument("homology in degree " + std::to_string(n) + " needs degree " +
                                             std::to_string(n + 1) + " in the window");
    return dim(n) - static_cast<int>(rank_d(n)) - static_cast<int>(rank_d(n + 1));
  }

  /// C shifted up by s: (C[s])_n = C_{n-s}, differential multiplied by (-1)^s.
  ChainComplex shifted(int s) const {
    std::vector<int> dims;
    std::vector<BoundaryPtr> d;
    for (int n = 0; n <= top() + s; ++n) {
      int m = n - s;
      dims.push_back(m >= 0 && m <= top() ? dims_[m] : 0);
      if (m >= 1 && m <= top())
        d.push_back(d_[m]);
      else
        d.push_back(nullptr);
    }
    // Degrees below the shift border map between zero spaces; the first
    // nonzero space maps to zero.
    ChainComplex out;
    out.dims_ = dims;
    out.sign_ = (s % 2 == 0) ? sign_ : -sign_;
    out.d_.resize(dims.size());
    for (std::size_t n = 0; n < dims.size(); ++n)
      out.d_[n] = d[n] ? d[n] : make_boundary(SparseMatrix<Scalar>(n ? dims[n - 1] : 0, dims[n]));
    return out;
  }

  /// d(n-1) d(n) == 0 for all stored n.
  bool is_complex() const {
    for (int n = 2; n <= top(); ++n)
      if (!(d_[n - 1]->matrix() * d_[n]->matrix()).is_zero()) return false;
    return true;
  }

 private:
  std::vector<int> dims_;
  std::vector<BoundaryPtr> d_;
  int sign_ = 1;
};

/// Degree-wise matrices f_n: C_n -> D_n.
struct ChainMap {
  std::vector<BoundaryPtr> f;  // reuse Boundary for the cached rank
  const SparseMatrix<Scalar>& at(int n) const { return f.at(n)->matrix(); }
  int top() const { return static_cast<int>(f.size()) - 1; }
};

inline ChainMap make_chain_map(std::vector<SparseMatrix<Scalar>> mats) {
  ChainMap m;
  for (auto& x : mats) m.f.push_back(make_boundary(std::move(x)));
  return m;
}

/// f commutes with the differentials on degrees 1..top of the map.
inline bool is_chain_map(const ChainComplex& C, const ChainComplex& D, const ChainMap& f) {
  for (int n = 1; n <= f.top() && n <= C.top() && n <= D.top(); ++n)
    if (!(D.d(n) * f.at(n) == f.at(n - 1) * C.d(n))) return false;
  return true;
}

/// Ranks of H_n(f) for n = 0..n_max.  Uses the mapping cone
/// Cone_n = C_{n-1} (+) D_n, d(c, x) = (-d c, f c + d x), and the long exact
/// sequence  H_n C -> H_n D -> H_n Cone -> H_{n-1} C -> H_{n-1} D.
inline std::vector<std::size_t> induced_ranks(const ChainComplex& C, const ChainComplex& D, const ChainMap& f,
                                              int n_max) {
  if (C.top() < n_max + 1 || D.top() < n_max + 1 || f.top() < n_max)
    throw InvalidArgument("induced_ranks needs windows to degree n_max + 1");
  auto cone_d = [&](int n) -> std::size_t {
    // d: C_{n-1} (+) D_n  ->  C_{n-2} (+) D_{n-1}
    if (n <= 0) return 0;
    const int rows = C.dim(n - 2) + D.dim(n - 1), cols = C.dim(n - 1) + D.dim(n);
    SparseMatrix<Scalar> m(rows, cols);
    if (n - 1 >= 1 && C.dim(n - 1) > 0) m.add_block(0, 0, C.d(n - 1).scaled(Scalar(-1)));
    if (n - 1 >= 0 && C.dim(n - 1) > 0 && D.dim(n - 1) > 0) m.add_block(C.dim(n - 2), 0, f.at(n - 1));
    if (D.dim(n) > 0 && n >= 1 && D.dim(n - 1) > 0) m.add_block(C.dim(n - 2), C.dim(n - 1), D.d(n));
    return rank_of(m);
  };
  std::vector<std::size_t> cone_rank(static_cast<std::size_t>(n_max) + 2);
  for (int n = 0; n <= n_max + 1; ++n) cone_rank[n] = cone_d(n);
  std::vector<std::size_t> rk;
  std::size_t prev = 0;
  for (int n = 0; n <= n_max; ++n) {
    const int cone_dim = C.dim(n - 1) + D.dim(n);
    const long h_cone = cone_dim - static_cast<long>(cone_rank[n]) - static_cast<long>(cone_rank[n + 1]);
    const long r = D.homology_dim(n) + C.homology_dim(n - 1) - static_cast<long>(prev) - h_cone;
    if (r < 0) throw Error("InternalError", "negative induced rank; the map is not a chain map");
    rk.push_back(static_cast<std::size_t>(r));
    prev = rk.back();
  }
  return rk;
}

/// Homology of one degree with canonical representatives: cycles reduced
/// modulo the echelon form of the boundaries, then put in echelon form.
struct HomologyDegree {
  int degree = 0;
  int dim = 0;
  int chain_dim = 0;
  std::size_t rank_out = 0;  // rank of d_n
  std::size_t rank_in = 0;   // rank of d_{n+1}
  std::optional<Subspace<Scalar>> representatives;
  std::optional<Subspace<Scalar>> boundaries;
};

inline HomologyDegree homology_degree(const ChainComplex& C, int n, bool with_representatives) {
  HomologyDegree h;
  h.degree = n;
  h.chain_dim = C.dim(n);
  h.rank_out = C.rank_d(n);
  h.rank_in = C.rank_d(n + 1);
  h.dim = C.homology_dim(n);
  if (with_representatives && C.dim(n) <= kRepresentativeBudget && C.dim(n + 1) <= 4 * kRepresentativeBudget) {
    Subspace<Scalar> im = column_space(C.d(n + 1));
    Subspace<Scalar> ker = n == 0 ? Subspace<Scalar>::full(C.dim(0)) : kernel_basis(C.d(n));
    Subspace<Scalar> reps(C.dim(n));
    for (const auto& v : ker.basis()) reps.insert(im.reduce(v));
    if (reps.dim() != h.dim) throw Error("InternalError", "representative count differs from homology dimension");
    h.representatives = std::move(reps);
    h.boundaries = std::move(im);
  }
  return h;
}

/// Coordinates of the homology class of cycle z in the canonical basis.
inline std::vector<Scalar> class_coordinates(const HomologyDegree& h, const SparseVec<Scalar>& z) {
  if (!h.representatives || !h.boundaries) throw InvalidArgument("representatives were not computed");
  return h.representatives->coordinates(h.boundaries->reduce(z));
}

/// Whether z is a boundary in C_n, i.e. d_{n+1} x = z is solvable.
inline bool is_boundary(const ChainComplex& C, int n, const SparseVec<Scalar>& z) {
  if (z.empty()) return true;
  if (n + 1 > C.top()) throw InvalidArgument("boundary test needs degree n + 1");
  return solve(C.d(n + 1), z).has_value();
}

}  // namespace cychom
