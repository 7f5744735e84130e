#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "g2hom/linalg.hpp"
#include "g2hom/scalars.hpp"

namespace g2hom {

/// Strictly increasing 1-based covector indices, e.g. {1,2,7} for e^{127}.
using MultiIndex = std::vector<int>;

/// Sign of the permutation sorting `idx`, 0 if an index repeats.
int sort_sign(MultiIndex& idx);

/// All increasing k-subsets of {1..n} in lexicographic order.
std::vector<MultiIndex> multi_indices(int n, int k);

/// Tangent vector with polynomial components (0-based storage).
class Vector {
 public:
  Vector(std::size_t dim, ContextPtr ctx = empty_context());
  /// e_i, 1-based.
  static Vector basis(std::size_t dim, int i, ContextPtr ctx = empty_context());
  static Vector from_rationals(const QVector& comps, ContextPtr ctx = empty_context());

  std::size_t dim() const { return comps_.size(); }
  const ContextPtr& context() const { return ctx_; }
  const Poly& operator[](std::size_t i) const { return comps_.at(i); }
  void set(std::size_t i, Poly value);
  bool is_zero() const;
  Vector lift(const ContextPtr& target) const;
  friend bool operator==(const Vector& a, const Vector& b) { return a.comps_ == b.comps_; }

 private:
  ContextPtr ctx_;
  std::vector<Poly> comps_;
};

/// Alternating k-form on an n-dimensional space, coefficients in a context.
class AltForm {
 public:
  using Terms = std::map<MultiIndex, Poly>;

  AltForm(int dim, int degree, ContextPtr ctx = empty_context());
  /// c * e^{idx}; idx may be unsorted (sign applied) or repeat (zero form).
  static AltForm monomial(int dim, MultiIndex idx, const Poly& c);
  static AltForm monomial(int dim, MultiIndex idx) { return monomial(dim, std::move(idx), Poly(empty_context(), 1)); }

  /// Inverse of str(): "a1*e^{1 2 4} - (a2 - a3)*e^{1 3 5} + e^{2 3 7}".
  /// Indices may also be written without separators when dim <= 9 ("e^{124}").
  static AltForm parse(std::string_view text, int dim, int degree, const ContextPtr& ctx);

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  const ContextPtr& context() const { return ctx_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Poly coefficient(MultiIndex idx) const;

  /// Adds c * e^{idx} with sorting sign.
  void add(MultiIndex idx, const Poly& c);

  AltForm operator-() const;
  AltForm& operator+=(const AltForm& o);
  AltForm& operator-=(const AltForm& o);
  AltForm& operator*=(const Poly& c);
  AltForm& operator*=(const Rational& c);
  friend AltForm operator+(AltForm a, const AltForm& b) { return a += b; }
  friend AltForm operator-(AltForm a, const AltForm& b) { return a -= b; }
  friend AltForm operator*(AltForm a, const Poly& c) { return a *= c; }
  friend AltForm operator*(const Poly& c, AltForm a) { return a *= c; }
  friend AltForm operator*(AltForm a, const Rational& c) { return a *= c; }
  friend AltForm operator*(const Rational& c, AltForm a) { return a *= c; }
  friend bool operator==(const AltForm& a, const AltForm& b);

  AltForm evaluate(const std::map<std::string, Rational>& assignment) const;
  AltForm lift(const ContextPtr& target) const;

  /// Signed sum "c*e^{i j k}" in lexicographic index order; "0" when empty.
  std::string str() const;

 private:
  int dim_, degree_;
  ContextPtr ctx_;
  Terms terms_;
};

/// Context shared by two operands: equal contexts pass, a symbol-free side is
/// lifted into the other, anything else is a ContextMismatch.
ContextPtr common_context(const ContextPtr& a, const ContextPtr& b, const char* op);

AltForm wedge(const AltForm& a, const AltForm& b);
AltForm contract(const Vector& v, const AltForm& a);
/// Contraction with the basis vector e_i (1-based).
AltForm contract_basis(int i, const AltForm& a);
Poly top_coefficient(const AltForm& a);
/// Alternating evaluation on deg(a) vectors.
Poly evaluate(const AltForm& a, const std::vector<Vector>& vectors);
/// Value on basis vectors e_{idx[0]}, ... (any order, 1-based).
Poly evaluate_basis(const AltForm& a, const MultiIndex& idx);
/// (T^* a)(v_1, ...) = a(T v_1, ...), T acting on column vectors.
AltForm pullback(const AltForm& a, const QMatrix& t);

}  // namespace g2hom
