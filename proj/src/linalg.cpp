#include "g2hom/linalg.hpp"

#include <map>

namespace g2hom {

QMatrix identity_matrix(std::size_t n) {
  QMatrix id(n, n);
  for (std::size_t i = 0; i < n; ++i) id(i, i) = 1;
  return id;
}

QMatrix multiply(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionMismatch("matrix product shape mismatch");
  QMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

QMatrix transpose(const QMatrix& a) {
  QMatrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

RrefResult rref(QMatrix m) {
  RrefResult out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    Rational inv = Rational(1) / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Rational f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        if (!m(r, j).is_zero()) m(i, j) -= f * m(r, j);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

std::vector<QVector> nullspace(const QMatrix& m) {
  auto [red, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -red(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVector> solve(const QMatrix& m, const QVector& b) {
  if (b.size() != m.rows()) throw DimensionMismatch("right-hand side length mismatch");
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  auto [red, pivots] = rref(std::move(aug));
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  QVector x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = red(r, m.cols());
  return x;
}

Rational determinant(const QMatrix& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  QMatrix a = m;
  Rational det = 1;
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a(p, c).is_zero()) ++p;
    if (p == n) return 0;
    if (p != c) {
      a.swap_rows(p, c);
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      Rational f = a(i, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return det;
}

QMatrix adjugate(const QMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw DimensionMismatch("adjugate of a non-square matrix");
  QMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      QMatrix minor(n - 1, n - 1);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      Rational d = determinant(minor);
      adj(i, j) = (i + j) % 2 ? -d : d;
    }
  return adj;
}

std::vector<Rational> leading_minors(const QMatrix& m) {
  std::vector<Rational> out;
  for (std::size_t k = 1; k <= m.rows(); ++k) {
    QMatrix sub(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = m(i, j);
    out.push_back(determinant(sub));
  }
  return out;
}

Poly determinant(const Matrix<Poly>& m, const Poly& zero) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw DimensionMismatch("determinant of a non-square matrix");
  if (n > 20) throw DimensionMismatch("polynomial determinant limited to n <= 20");
  // minors[S] = det of rows 0..|S|-1 against the columns in bitmask S.
  std::map<unsigned, Poly> level{{0u, zero + Poly(zero.context(), 1)}};
  for (std::size_t r = 0; r < n; ++r) {
    std::map<unsigned, Poly> next;
    for (const auto& [mask, val] : level) {
      if (val.is_zero()) continue;
      int sign = 1;
      // Expanding along row r: column c contributes (-1)^{#chosen columns > c}.
      int above = __builtin_popcount(mask);
      for (std::size_t c = 0; c < n; ++c) {
        unsigned bit = 1u << c;
        if (mask & bit) {
          --above;
          continue;
        }
        sign = above % 2 ? -1 : 1;
        if (m(r, c).is_zero()) continue;
        Poly term = val * m(r, c);
        if (sign < 0) term = -term;
        auto [it, inserted] = next.try_emplace(mask | bit, term);
        if (!inserted) it->second += term;
      }
    }
    level = std::move(next);
  }
  auto it = level.find((n == 32 ? 0u : (1u << n)) - 1u);
  return it == level.end() ? zero : it->second;
}

Congruence diagonalize_congruent(const QMatrix& symmetric) {
  const std::size_t n = symmetric.rows();
  if (n != symmetric.cols()) throw DimensionMismatch("congruence of a non-square matrix");
  QMatrix a = symmetric;
  QMatrix p = identity_matrix(n);
  auto add_col = [&](std::size_t dst, std::size_t src, const Rational& f) {
    // basis vector dst += f * basis vector src, applied on both sides of a
    for (std::size_t i = 0; i < n; ++i) a(i, dst) += f * a(i, src);
    for (std::size_t j = 0; j < n; ++j) a(dst, j) += f * a(src, j);
    for (std::size_t i = 0; i < n; ++i) p(i, dst) += f * p(i, src);
  };
  auto swap_basis = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    a.swap_rows(x, y);
    for (std::size_t i = 0; i < n; ++i) std::swap(a(i, x), a(i, y));
    for (std::size_t i = 0; i < n; ++i) std::swap(p(i, x), p(i, y));
  };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a(piv, piv).is_zero()) ++piv;
    if (piv == n) {
      bool fixed = false;
      for (std::size_t i = k; i < n && !fixed; ++i)
        for (std::size_t j = i + 1; j < n && !fixed; ++j)
          if (!a(i, j).is_zero()) {
            add_col(i, j, 1);
            piv = i;
            fixed = true;
          }
      if (!fixed) break;
    }
    swap_basis(k, piv);
    for (std::size_t i = k + 1; i < n; ++i)
      if (!a(i, k).is_zero()) add_col(i, k, -(a(i, k) / a(k, k)));
  }
  Congruence out{p, QVector(n)};
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = a(i, i);
  return out;
}

Rational bilinear(const QMatrix& s, const QVector& v, const QVector& w) {
  Rational acc = 0;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    if (v[i].is_zero()) continue;
    for (std::size_t j = 0; j < s.cols(); ++j)
      if (!w[j].is_zero()) acc += v[i] * s(i, j) * w[j];
  }
  return acc;
}

}  // namespace g2hom
