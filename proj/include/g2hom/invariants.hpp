#pragma once

#include <string>
#include <vector>

#include "g2hom/exterior.hpp"
#include "g2hom/liealg.hpp"

namespace g2hom {

struct InvariantFormSpace {
  int dim = 0;
  int degree = 0;
  /// Rational forms, rows of a reduced echelon matrix in lexicographic
  /// multi-index coordinates.
  std::vector<AltForm> basis;
};

/// (A . alpha)(X_1..X_k) = -sum_p alpha(.., A X_p, ..).
AltForm isotropy_action(const PolyMatrix& a, const AltForm& alpha);

/// Forms annihilated by every isotropy generator. Needs rational isotropy.
InvariantFormSpace invariant_forms(const HomogeneousSpaceData& h, int k);

/// Koszul differential from the projected bracket:
/// d alpha(X_0..X_k) = sum_{i<j} (-1)^{i+j} alpha([X_i,X_j]_m, X_0..^i..^j..X_k).
/// Parameters of h and alpha are merged (alpha's symbols first).
AltForm ce_differential(const HomogeneousSpaceData& h, const AltForm& alpha);

struct ClosedFamily {
  int degree = 0;
  std::size_t invariant_dim = 0;
  std::size_t d_rank = 0;
  /// Free parameters a1..ar.
  std::vector<std::string> symbols;
  /// sum_r a_r * basis[r].
  AltForm generic{0, 0};
  /// Rational closed forms, reduced echelon.
  std::vector<AltForm> basis;
  /// Columns: coordinates of d(gamma_i) for the invariant basis gamma_i.
  QMatrix d_matrix;
};

ClosedFamily closed_forms(const HomogeneousSpaceData& h, int k);

struct DSquaredReport {
  bool passed = true;
  int degree = 0;
  std::size_t checked = 0;
  std::vector<AltForm> witnesses;  // invariant forms with d(d gamma) != 0
};

/// Refuses partial data with a ValidationError.
DSquaredReport d_squared_check(const HomogeneousSpaceData& h, int k);

// -- span utilities on rational forms of equal dimension and degree

/// Coordinates in lexicographic multi-index order; requires constant coefficients.
QVector coordinates(const AltForm& f);
AltForm form_from_coordinates(int dim, int degree, const QVector& coords, ContextPtr ctx = empty_context());
std::size_t span_rank(const std::vector<AltForm>& forms, int dim, int degree);
bool same_span(const std::vector<AltForm>& a, const std::vector<AltForm>& b, int dim, int degree);
/// Every element of a lies in span(b).
bool within_span(const std::vector<AltForm>& a, const std::vector<AltForm>& b, int dim, int degree);

/// Splits a form that is linear and homogeneous in its parameters into one
/// rational form per symbol (context order). Throws if not linear.
std::vector<AltForm> linear_components(const AltForm& f);

}  // namespace g2hom
