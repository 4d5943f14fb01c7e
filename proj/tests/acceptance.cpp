// End-to-end acceptance checks.  Prints one PASS/FAIL line per criterion.
// With arguments, runs only the listed criterion numbers.
//
// Expected values come from small independent computations in this file
// (group-table orbits, a two-term periodic complex, left-multiplication
// traces) rather than from the library's own answers.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cychom/chern.hpp"
#include "cychom/corpus.hpp"
#include "cychom/periodic.hpp"

using namespace cychom;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

// Conjugacy classes by orbit search over the multiplication table.
int brute_force_class_count(const FiniteGroup& G) {
  const int n = G.order();
  const auto& t = G.table();
  std::vector<int> inv(n, -1), seen(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (t[a][b] == G.identity()) inv[a] = b;
  int classes = 0;
  for (int g = 0; g < n; ++g) {
    if (seen[g]) continue;
    ++classes;
    for (int h = 0; h < n; ++h) seen[t[t[h][g]][inv[h]]] = 1;
  }
  return classes;
}

// Rank of a small integer matrix by fraction-free elimination.
int integer_rank(std::vector<std::vector<long long>> m) {
  const int rows = static_cast<int>(m.size()), cols = rows ? static_cast<int>(m[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    for (int i = r + 1; i < rows; ++i) {
      const long long f = m[i][c], g = m[r][c];
      for (int j = 0; j < cols; ++j) m[i][j] = m[i][j] * g - m[r][j] * f;
    }
    ++r;
  }
  return r;
}

// HH of Q[x]/(x^N) from the periodic two-term resolution: every chain group
// is A, odd differentials vanish, even ones multiply by N x^(N-1).
std::vector<int> truncated_polynomial_oracle(int N, int n_max) {
  std::vector<std::vector<long long>> mult(N, std::vector<long long>(N, 0));
  for (int k = 0; k + N - 1 < N; ++k) mult[k + N - 1][k] = N;  // x^k -> N x^(k+N-1)
  const int r = integer_rank(mult);
  std::vector<int> dims;
  for (int n = 0; n <= n_max; ++n) {
    const int rank_out = (n > 0 && n % 2 == 0) ? r : 0;
    const int rank_in = ((n + 1) % 2 == 0) ? r : 0;
    dims.push_back(N - rank_out - rank_in);
  }
  return dims;
}

// Trace of left multiplication by g on the left ideal A f.
Scalar character_on_ideal(const FDAlgebra& A, int g, const Element& f) {
  Subspace<Scalar> ideal(A.dim());
  for (int i = 0; i < A.dim(); ++i) ideal.insert(A.mul(basis_element(i), f));
  auto basis = ideal.basis();
  Scalar tr;
  for (std::size_t k = 0; k < basis.size(); ++k) tr += ideal.coordinates(A.mul(basis_element(g), basis[k]))[k];
  return tr;
}

std::string join(const std::vector<int>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

void class_count(Outcome& o) {
  for (const char* g : {"Z2", "Z4", "S3", "D4", "Q8"}) {
    FiniteGroup G = named_group(g);
    const int expect = brute_force_class_count(G);
    HochschildOptions opt;
    opt.representatives = false;
    const int got = hh(share(group_algebra(G)), 2, opt).dims()[0];
    o.detail << " " << g << "=" << got;
    o.require(got == expect, std::string(g) + " expected " + std::to_string(expect));
  }
}

void truncated_hh(Outcome& o) {
  for (int N : {2, 3}) {
    HochschildOptions opt;
    opt.representatives = false;
    auto got = hh(share(truncated_polynomial(N)), 5, opt).dims();
    auto expect = truncated_polynomial_oracle(N, 5);
    o.detail << " N=" << N << ":[" << join(got) << "]";
    o.require(got == expect, "N=" + std::to_string(N) + " expected [" + join(expect) + "]");
  }
}

void morita(Outcome& o) {
  for (const char* a : {"Q", "Q^2", "dual_numbers"})
    for (int N : {2, 3}) {
      auto r = morita_check(share(named_algebra(a)), N, 2);
      o.require(r.ok, std::string(a) + " N=" + std::to_string(N));
    }
  o.detail << " 6 cases";
}

void sbi(Outcome& o) {
  for (const auto& name : corpus_algebra_names()) {
    auto r = sbi_check(share(named_algebra(name)), 4);
    o.require(r.exact, name);
  }
  o.detail << " " << corpus_algebra_names().size() << " algebras";
}

void goodwillie(Outcome& o) {
  for (int N = 1; N <= 4; ++N) {
    auto r = hp(share(truncated_polynomial(N)), HPMode::Both);
    const bool ok = r.even_dim == 1 && r.odd_dim == 0 && r.agree && !r.inconclusive && r.stabilization.has_value();
    o.require(ok, "N=" + std::to_string(N));
  }
  o.detail << " N=1..4";
}

void excision(Outcome& o) {
  for (const auto& p : corpus_excision_pairs()) {
    auto A = share(named_algebra(p.algebra));
    auto r = excision_check(named_ideal(A, p.ideal));
    o.require(r.exact, p.algebra + "/" + p.ideal);
  }
  o.detail << " 3 pairs";
}

void points(Outcome& o) {
  for (int l = 1; l <= 8; ++l) {
    auto r = hp(share(functions_on_points(l)));
    o.require(r.even_dim == l && r.odd_dim == 0 && !r.inconclusive, "l=" + std::to_string(l));
  }
  o.detail << " l=1..8";
}

void decomposition(Outcome& o) {
  for (const auto& a : corpus_action_names()) {
    auto d = hh_decomposition(variety_crossed_product(named_action(a)), 2);
    o.require(d.ok && d.sum == d.direct, a);
    o.detail << " " << a << ":[" << join(d.direct) << "]";
  }
}

void phi_isomorphism(Outcome& o) {
  int count = 0;
  for (const auto& a : corpus_action_names()) {
    auto X = named_action(a);
    auto psi = psi_map(X);
    for (std::size_t c = 0; c < X.meta.classes.size(); ++c, ++count) {
      auto r = phi_gamma(psi, X, static_cast<int>(c), 0);
      o.require(r.isomorphism && r.kills_other_classes && r.kills_commutators, a + " class " + r.label);
    }
  }
  o.detail << " " << count << " classes";
}

void spectrum_preserving(Outcome& o) {
  for (const auto& m : corpus_morphism_names()) {
    auto r = spectrum_preserving_check(named_morphism(m));
    const bool expect_preserving = m != "diagonal_Q_Q2";
    o.require(r.spectrum_preserving == expect_preserving, m + " verdict");
    if (expect_preserving) o.require(r.hp_agree, m + " HP agreement");
    o.detail << " " << m << "=" << (r.spectrum_preserving ? "yes" : "no");
  }
}

void spectral_totals(Outcome& o) {
  std::vector<std::string> names{"group:S3", "dual_numbers", "upper_tri_2"};
  for (int l = 1; l <= 4; ++l) names.push_back("Q^" + std::to_string(l));
  for (const auto& n : names) {
    auto c = compare_e1_with_hp(share(named_algebra(n)));
    o.require(c.agree && !c.hp.inconclusive, n);
  }
  o.detail << " " << names.size() << " algebras";
}

void chern_pairing(Outcome& o) {
  for (int N = 1; N <= 3; ++N) {
    auto M = share(matrix_algebra(ground_field(), N));
    Element e;
    for (int r = 0; r < N; ++r) {
      e.push_back({r * N + r, Scalar(1)});
      auto ch = chern_idempotent(make_idempotent(M, 1, e), 0);
      o.require(pair_with_trace(ch, matrix_trace(N)) == Scalar(r + 1),
                "rank " + std::to_string(r + 1) + " in M" + std::to_string(N));
    }
  }
  auto G = symmetric_group_3();
  auto A = share(group_algebra(G));
  auto meta = group_metadata(G);
  auto traces = class_traces(G);
  Element e;  // block idempotent of the two-dimensional irreducible: (2 - r - r^2) / 3
  for (int g = 0; g < G.order(); ++g) {
    const int ord = G.element_order(g);
    if (ord == 1) e.push_back({g, Scalar(Rational(2, 3))});
    if (ord == 3) e.push_back({g, Scalar(Rational(-1, 3))});
  }
  e = canonicalize(std::move(e));
  auto ch = chern_idempotent(make_idempotent(A, 1, e), 0);
  for (std::size_t c = 0; c < meta.classes.size(); ++c) {
    const int g = meta.classes[c].members.front();
    const Scalar got = pair_with_trace(ch, traces[c]);
    o.require(got == character_on_ideal(*A, g, e), "S3 class " + G.label(g));
    o.detail << " " << got.str();
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"conjugacy class count", class_count},
      {"truncated polynomial HH", truncated_hh},
      {"Morita invariance", morita},
      {"SBI exactness", sbi},
      {"nilpotent extension invariance of HP", goodwillie},
      {"excision", excision},
      {"HP of finite point sets", points},
      {"crossed product decomposition", decomposition},
      {"phi isomorphism per class", phi_isomorphism},
      {"spectrum preserving morphisms", spectrum_preserving},
      {"spectral sequence totals", spectral_totals},
      {"Chern character pairing", chern_pairing},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail << " [exception: " << ex.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failures;
    std::printf("%s %2d %s (%.1f s):%s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), secs,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
