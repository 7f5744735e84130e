// Independent reference computations for the tests. Nothing here calls the
// engine's algorithms; engine objects are only read for their raw data.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "g2hom/catalog.hpp"

namespace oracle {

using g2hom::Rational;
using Tuple = std::vector<int>;  // 1-based

/// Parity by counting inversions; 0 on a repeated index.
inline int parity(const Tuple& t) {
  int inv = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (t[i] == t[j]) return 0;
      if (t[i] > t[j]) ++inv;
    }
  return inv % 2 ? -1 : 1;
}

/// Form as a map from increasing tuples to rational components.
struct Form {
  int n = 0, k = 0;
  std::map<Tuple, Rational> c;

  Rational at(Tuple t) const {
    int s = parity(t);
    if (s == 0) return Rational(0);
    std::sort(t.begin(), t.end());
    auto it = c.find(t);
    return it == c.end() ? Rational(0) : (s > 0 ? it->second : -it->second);
  }
  void prune() {
    for (auto it = c.begin(); it != c.end();) it = it->second.is_zero() ? c.erase(it) : std::next(it);
  }
  friend bool operator==(Form a, Form b) {
    a.prune();
    b.prune();
    return a.n == b.n && a.k == b.k && a.c == b.c;
  }
};

inline void increasing(int n, int k, int start, Tuple& cur, std::vector<Tuple>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (int i = start; i <= n; ++i) {
    cur.push_back(i);
    increasing(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

inline std::vector<Tuple> tuples(int n, int k) {
  std::vector<Tuple> out;
  Tuple cur;
  increasing(n, k, 1, cur, out);
  return out;
}

inline Form from_engine(const g2hom::AltForm& f) {
  Form o{f.dim(), f.degree(), {}};
  for (const auto& [idx, coef] : f.terms()) o.c[idx] = coef.constant_value();
  return o;
}

inline g2hom::AltForm to_engine(const Form& f) {
  g2hom::AltForm out(f.n, f.k);
  for (const auto& [t, v] : f.c)
    if (!v.is_zero()) out.add(t, g2hom::Poly(g2hom::empty_context(), v));
  return out;
}

inline Rational factorial(int m) {
  Rational r(1);
  for (int i = 2; i <= m; ++i) r = r * Rational(i);
  return r;
}

/// (a ^ b)_I = 1/(p! q!) sum over all permutations of I.
inline Form wedge(const Form& a, const Form& b) {
  Form out{a.n, a.k + b.k, {}};
  if (out.k > out.n) return out;
  Rational norm = Rational(1) / (factorial(a.k) * factorial(b.k));
  for (const auto& I : tuples(out.n, out.k)) {
    std::vector<int> perm(out.k);
    std::iota(perm.begin(), perm.end(), 0);
    Rational sum(0);
    do {
      Tuple p(out.k);
      for (int i = 0; i < out.k; ++i) p[i] = perm[i] + 1;  // parity of the permutation itself
      Tuple left, right;
      for (int i = 0; i < a.k; ++i) left.push_back(I[perm[i]]);
      for (int i = a.k; i < out.k; ++i) right.push_back(I[perm[i]]);
      Rational term = a.at(left) * b.at(right);
      if (!term.is_zero()) sum = sum + (parity(p) > 0 ? term : -term);
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.c[I] = sum * norm;
  }
  out.prune();
  return out;
}

/// (i_v a)_J = sum_i v_i a(i, J).
inline Form contract(const std::vector<Rational>& v, const Form& a) {
  Form out{a.n, a.k - 1, {}};
  for (const auto& J : tuples(a.n, a.k - 1)) {
    Rational s(0);
    for (int i = 1; i <= a.n; ++i) {
      Tuple t{i};
      t.insert(t.end(), J.begin(), J.end());
      s = s + v[i - 1] * a.at(t);
    }
    out.c[J] = s;
  }
  out.prune();
  return out;
}

/// Full multilinear sum over all index tuples; zero vector entries are skipped.
inline void evaluate_from(const Form& a, const std::vector<std::vector<Rational>>& vs, Tuple& t, const Rational& w,
                          Rational& total) {
  const std::size_t p = t.size();
  if (static_cast<int>(p) == a.k) {
    total = total + w * a.at(t);
    return;
  }
  for (int i = 1; i <= a.n; ++i) {
    const Rational& x = vs[p][i - 1];
    if (x.is_zero()) continue;
    t.push_back(i);
    evaluate_from(a, vs, t, w * x, total);
    t.pop_back();
  }
}

inline Rational evaluate(const Form& a, const std::vector<std::vector<Rational>>& vs) {
  Rational total(0);
  Tuple t;
  evaluate_from(a, vs, t, Rational(1), total);
  return total;
}

inline std::vector<Rational> unit(int n, int i) {
  std::vector<Rational> v(n, Rational(0));
  v[i - 1] = Rational(1);
  return v;
}

/// Rational brackets [e_i, e_j]_m read off the homogeneous data.
struct Brackets {
  int n = 0;
  std::vector<std::vector<std::vector<Rational>>> b;  // b[i][j] for 0-based i, j
};

inline Brackets brackets_of(const g2hom::HomogeneousSpaceData& h) {
  Brackets out{h.dim(), std::vector<std::vector<std::vector<Rational>>>(
                            h.dim(), std::vector<std::vector<Rational>>(h.dim(), std::vector<Rational>(h.dim(), Rational(0))))};
  for (const auto& [ij, v] : h.brackets())
    for (int k = 0; k < h.dim(); ++k) {
      Rational c = v[k].constant_value();
      out.b[ij.first - 1][ij.second - 1][k] = c;
      out.b[ij.second - 1][ij.first - 1][k] = -c;
    }
  return out;
}

/// Koszul differential straight from its defining sum on basis vectors.
inline Form koszul(const Brackets& br, const Form& a) {
  const int n = a.n, k = a.k;
  Form out{n, k + 1, {}};
  for (const auto& X : tuples(n, k + 1)) {
    Rational s(0);
    for (int i = 0; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) {
        std::vector<std::vector<Rational>> vs{br.b[X[i] - 1][X[j] - 1]};
        for (int l = 0; l <= k; ++l)
          if (l != i && l != j) vs.push_back(unit(n, X[l]));
        // Indices are 0-based here; (-1)^{i+j} is unchanged.
        Rational v = evaluate(a, vs);
        s = s + ((i + j) % 2 ? -v : v);
      }
    out.c[X] = s;
  }
  out.prune();
  return out;
}

// -- exact linear algebra, written separately from the engine's

using Row = std::vector<Rational>;

/// Row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> echelon(std::vector<Row>& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    Rational inv = Rational(1) / m[r][c];
    for (auto& x : m[r]) x = x * inv;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Rational f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

inline std::size_t rank(std::vector<Row> m, std::size_t cols) { return echelon(m, cols).size(); }

inline std::vector<Row> kernel(std::vector<Row> m, std::size_t cols) {
  auto piv = echelon(m, cols);
  std::vector<Row> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (std::find(piv.begin(), piv.end(), f) != piv.end()) continue;
    Row v(cols, Rational(0));
    v[f] = Rational(1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
    out.push_back(v);
  }
  return out;
}

inline Row coords(const Form& f) {
  Row out;
  for (const auto& t : tuples(f.n, f.k)) out.push_back(f.at(t));
  return out;
}

inline Form from_coords(int n, int k, const Row& r) {
  Form f{n, k, {}};
  auto ts = tuples(n, k);
  for (std::size_t i = 0; i < ts.size(); ++i) f.c[ts[i]] = r[i];
  f.prune();
  return f;
}

/// (A . a)(X_1..X_k) = -sum_p a(.., A X_p, ..), A in column convention.
inline Form act(const g2hom::QMatrix& A, const Form& a) {
  Form out{a.n, a.k, {}};
  for (const auto& X : tuples(a.n, a.k)) {
    Rational s(0);
    for (int p = 0; p < a.k; ++p) {
      std::vector<std::vector<Rational>> vs;
      for (int l = 0; l < a.k; ++l) {
        if (l == p) {
          std::vector<Rational> col(a.n);
          for (int i = 0; i < a.n; ++i) col[i] = A(i, X[l] - 1);
          vs.push_back(col);
        } else {
          vs.push_back(unit(a.n, X[l]));
        }
      }
      s = s - evaluate(a, vs);
    }
    out.c[X] = s;
  }
  out.prune();
  return out;
}

/// Basis of invariant k-forms by stacking the action matrices.
inline std::vector<Form> invariant_basis(const g2hom::HomogeneousSpaceData& h, int k) {
  const int n = h.dim();
  auto ts = tuples(n, k);
  std::vector<Row> system;
  for (const auto& A : h.rational_isotropy()) {
    std::vector<Row> cols;
    for (std::size_t t = 0; t < ts.size(); ++t) {
      Form e{n, k, {{ts[t], Rational(1)}}};
      cols.push_back(coords(act(A, e)));
    }
    for (std::size_t r = 0; r < ts.size(); ++r) {
      Row row(ts.size());
      for (std::size_t c = 0; c < ts.size(); ++c) row[c] = cols[c][r];
      system.push_back(row);
    }
  }
  std::vector<Form> out;
  if (system.empty()) {
    for (const auto& t : ts) out.push_back(Form{n, k, {{t, Rational(1)}}});
    return out;
  }
  for (const auto& v : kernel(system, ts.size())) out.push_back(from_coords(n, k, v));
  return out;
}

/// dim of the closed invariant k-forms.
inline std::size_t closed_dimension(const g2hom::HomogeneousSpaceData& h, int k) {
  auto inv = invariant_basis(h, k);
  auto br = brackets_of(h);
  std::vector<Row> images;
  for (const auto& f : inv) images.push_back(coords(koszul(br, f)));
  std::size_t cols = tuples(h.dim(), k + 1).size();
  return inv.size() - (images.empty() ? 0 : rank(images, cols));
}

/// B_ij = top(i_i phi ^ i_j phi ^ phi) from the oracle operations.
inline std::vector<Row> b_matrix(const Form& phi) {
  std::vector<Row> b(phi.n, Row(phi.n));
  Tuple top(phi.n);
  std::iota(top.begin(), top.end(), 1);
  for (int i = 1; i <= phi.n; ++i)
    for (int j = i; j <= phi.n; ++j) {
      Rational v = wedge(wedge(contract(unit(phi.n, i), phi), contract(unit(phi.n, j), phi)), phi).at(top);
      b[i - 1][j - 1] = b[j - 1][i - 1] = v;
    }
  return b;
}

// -- random data

inline Rational small_rational(std::mt19937_64& rng, int range = 3) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 2);
  return Rational(num(rng)) / Rational(den(rng));
}

inline Form random_form(std::mt19937_64& rng, int n, int k, double density = 0.5) {
  Form f{n, k, {}};
  std::bernoulli_distribution keep(density);
  for (const auto& t : tuples(n, k))
    if (keep(rng)) f.c[t] = small_rational(rng);
  f.prune();
  return f;
}

inline std::vector<Rational> random_vector(std::mt19937_64& rng, int n) {
  std::vector<Rational> v(n);
  for (auto& x : v) x = small_rational(rng);
  return v;
}

/// Product of elementary shears with a signed permutation; det = 1.
inline g2hom::QMatrix random_unimodular(std::mt19937_64& rng, int n) {
  g2hom::QMatrix t(n, n, Rational(0));
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  int sign = parity([&] {
    Tuple p;
    for (int x : perm) p.push_back(x + 1);
    return p;
  }());
  for (int i = 0; i < n; ++i) t(perm[i], i) = Rational(i == 0 ? sign : 1);
  std::uniform_int_distribution<int> idx(0, n - 1), c(-2, 2);
  for (int s = 0; s < 2 * n; ++s) {
    int i = idx(rng), j = idx(rng);
    if (i == j) continue;
    Rational f(c(rng));
    for (int col = 0; col < n; ++col) t(i, col) = t(i, col) + f * t(j, col);
  }
  return t;
}

}  // namespace oracle
