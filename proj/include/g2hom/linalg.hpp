#pragma once

#include <optional>
#include <vector>

#include "g2hom/scalars.hpp"

namespace g2hom {

/// Dense row-major matrix. Small sizes only (at most a few hundred rows).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }
  void append_row(const std::vector<T>& r) {
    if (rows_ == 0 && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw DimensionMismatch("row length mismatch");
    data_.insert(data_.end(), r.begin(), r.end());
    ++rows_;
  }
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using QMatrix = Matrix<Rational>;
using QVector = std::vector<Rational>;

QMatrix identity_matrix(std::size_t n);
QMatrix multiply(const QMatrix& a, const QMatrix& b);
QMatrix transpose(const QMatrix& a);

struct RrefResult {
  QMatrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row echelon form by Gauss-Jordan elimination over Q.
RrefResult rref(QMatrix m);
std::size_t rank(const QMatrix& m);
/// Kernel basis: one vector per free column, that column set to 1 and the
/// other free columns 0. Ordered by free column.
std::vector<QVector> nullspace(const QMatrix& m);
/// Some solution of m x = b, or nullopt when inconsistent.
std::optional<QVector> solve(const QMatrix& m, const QVector& b);

Rational determinant(const QMatrix& m);
/// adj(m), so that m * adj(m) = det(m) * Id.
QMatrix adjugate(const QMatrix& m);
/// det of the top-left k x k blocks, k = 1..n.
std::vector<Rational> leading_minors(const QMatrix& m);

/// Determinant of a polynomial matrix by expansion over column subsets
/// (no division needed). `zero` fixes the coefficient context.
Poly determinant(const Matrix<Poly>& m, const Poly& zero);

/// P with P^T S P diagonal, for symmetric S. Columns of P are a
/// S-orthogonal basis, so diagonal entries give directly checkable witnesses.
struct Congruence {
  QMatrix basis;
  QVector diagonal;
};
Congruence diagonalize_congruent(const QMatrix& symmetric);

/// v^T S w.
Rational bilinear(const QMatrix& s, const QVector& v, const QVector& w);

}  // namespace g2hom
