#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "g2hom/exterior.hpp"
#include "g2hom/linalg.hpp"

namespace g2hom {

using PolyMatrix = Matrix<Poly>;

/// Complex matrix given by real and imaginary parts.
struct ComplexMatrix {
  QMatrix re, im;
};

/// [[Re, -Im], [Im, Re]]: the real form of a complex d x d matrix.
QMatrix realify(const ComplexMatrix& m);

/// Finite-dimensional Lie algebra with basis e_1..e_n (1-based) and
/// [e_i, e_j] = sum_k c^k_ij e_k, stored for i < j only.
class LieAlgebra {
 public:
  using Key = std::tuple<int, int, int>;

  LieAlgebra(int dim, std::vector<std::string> names, ContextPtr ctx = empty_context());

  /// Matrix commutators solved back into the basis.
  static LieAlgebra from_matrices(const std::vector<QMatrix>& basis, std::vector<std::string> names = {});

  int dim() const { return dim_; }
  const std::vector<std::string>& names() const { return names_; }
  const ContextPtr& context() const { return ctx_; }
  const std::map<Key, Poly>& constants() const { return constants_; }

  /// Adds c to c^k_ij; (j,i) input is stored as (i,j) with the opposite sign.
  void add_constant(int i, int j, int k, const Poly& c);
  Vector bracket_basis(int i, int j) const;
  Vector bracket(const Vector& u, const Vector& v) const;

 private:
  int dim_;
  std::vector<std::string> names_;
  ContextPtr ctx_;
  std::map<Key, Poly> constants_;
};

struct JacobiViolation {
  int i, j, k;
  Vector cyclic_sum;
};

/// All i<j<k whose cyclic sum [[e_i,e_j],e_k] + ... is nonzero.
std::vector<JacobiViolation> jacobi_check(const LieAlgebra& l);

/// Reductive pair data restricted to m: ad(h)|_m for each isotropy generator
/// (column convention, A e_j = sum_i A_ij e_i) and the projected bracket.
class HomogeneousSpaceData {
 public:
  HomogeneousSpaceData(int dim, std::vector<std::string> names, ContextPtr ctx = empty_context());

  int dim() const { return dim_; }
  const std::vector<std::string>& names() const { return names_; }
  const ContextPtr& context() const { return ctx_; }
  const std::vector<PolyMatrix>& isotropy() const { return isotropy_; }
  const std::map<std::pair<int, int>, Vector>& brackets() const { return brackets_; }
  /// True when built from bracket tables rather than a full Lie algebra.
  bool partial() const { return partial_; }
  void set_partial(bool p) { partial_ = p; }

  void add_isotropy(PolyMatrix a);
  /// Sets [e_i, e_j]_m (i != j, 1-based); the (j,i) entry is implied.
  void set_bracket(int i, int j, const Vector& v);
  Vector bracket_basis(int i, int j) const;
  Vector bracket(const Vector& u, const Vector& v) const;

  /// True when no isotropy entry involves a parameter.
  bool isotropy_rational() const;
  bool rational() const;
  std::vector<QMatrix> rational_isotropy() const;

  HomogeneousSpaceData evaluate(const std::map<std::string, Rational>& assignment) const;
  HomogeneousSpaceData lift(const ContextPtr& target) const;

 private:
  int dim_;
  std::vector<std::string> names_;
  ContextPtr ctx_;
  std::vector<PolyMatrix> isotropy_;
  std::map<std::pair<int, int>, Vector> brackets_;
  bool partial_ = false;
};

/// Splits g = h + m along basis index subsets (1-based, disjoint, covering).
/// Throws ValidationError naming a witness pair when h is not a subalgebra
/// or [h, m] leaves m.
HomogeneousSpaceData reductive_split(const LieAlgebra& l, const std::vector<int>& h, const std::vector<int>& m);

struct PartialBracket {
  int i, j;
  Vector value;
};

/// Wraps explicit ad(h)|_m matrices and [.,.]_m entries. Rejects entries with
/// i == j and pairs given both ways that are not negatives of each other.
HomogeneousSpaceData homogeneous_from_partial(int dim, std::vector<std::string> names,
                                              std::vector<PolyMatrix> isotropy,
                                              const std::vector<PartialBracket>& brackets,
                                              ContextPtr ctx = empty_context());

/// m + R e_{n+1}, with h acting trivially on the new line and no brackets
/// involving it.
HomogeneousSpaceData with_central_line(const HomogeneousSpaceData& h, const std::string& name);

}  // namespace g2hom
