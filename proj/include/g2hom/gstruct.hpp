#pragma once

#include <optional>
#include <string>
#include <vector>

#include "g2hom/exterior.hpp"
#include "g2hom/invariants.hpp"
#include "g2hom/liealg.hpp"

namespace g2hom {

using GramMatrix = PolyMatrix;

/// B_ij = top(i_{e_i} phi ^ i_{e_j} phi ^ phi) for a 3-form on a 7-space.
GramMatrix b_matrix(const AltForm& phi);
/// B(v, v) = top(i_v phi ^ i_v phi ^ phi).
Poly b_value(const AltForm& phi, const Vector& v);

enum class Verdict {
  DefinitePositive,
  DefiniteNegative,
  Indefinite,   // B takes both signs (rational input)
  Degenerate,   // B semidefinite and singular (rational input)
  NotDefinite,  // parametric family with an obstruction certificate
  UndecidedParametric,
};

std::string verdict_name(Verdict v);
inline bool is_definite(Verdict v) { return v == Verdict::DefinitePositive || v == Verdict::DefiniteNegative; }

struct DefinitenessReport {
  Verdict verdict = Verdict::UndecidedParametric;
  /// Leading principal minors of B (rational input only).
  std::vector<Rational> minors;
  /// Probe vectors with their B(v, v) values; what they prove depends on the verdict.
  std::vector<Vector> witnesses;
  std::vector<Poly> witness_values;
  /// Re-checkable statement, e.g. "B(e7,e7) = 0 identically".
  std::string certificate;
};

/// Needs rational coefficients; parametric input is a ValidationError.
DefinitenessReport definiteness(const AltForm& phi);

/// Searches probes (default: e_1..e_n, then e_i + e_j and e_i - e_j) for
///  - B(v,v) identically zero,
///  - B(v,v) = -c B(w,w) with a positive rational c,
///  - B(v,v) forced >= 0 and B(w,w) forced <= 0 (positive combinations of even monomials).
/// Any of these rules out definiteness for every parameter value.
DefinitenessReport obstruction_certificate(const AltForm& family, const std::vector<Vector>& probes = {});
DefinitenessReport obstruction_certificate(const ClosedFamily& family, const std::vector<Vector>& probes = {});

/// Positive representative of B for a definite phi.
QMatrix metric_up_to_scale(const AltForm& phi);

/// Positive multiple of the Hodge dual for the metric Q, computed from
/// compound minors of adj(Q) and the Levi-Civita symbol (no square roots).
AltForm hodge_dual_up_to_scale(const QMatrix& q, const AltForm& alpha);

struct G2TorsionReport {
  DefinitenessReport definiteness;
  AltForm d_phi{0, 0};
  bool closed = false;
  /// Only when definite.
  std::optional<AltForm> d_star_phi;
  std::optional<bool> coclosed;
  bool closed_non_parallel() const { return is_definite(definiteness.verdict) && closed && coclosed == false; }
};

G2TorsionReport g2_torsion_report(const HomogeneousSpaceData& h, const AltForm& phi);

struct HitchinResult {
  Poly lambda;
  /// Column i is the vector w with i_w e^{1..6} = i_{e_i} psi ^ psi.
  PolyMatrix k;
};

/// lambda = tr(K^2) / 6; lambda < 0 exactly for stable forms of complex type,
/// and then K^2 = lambda Id. For the standard psi0, lambda = -4.
HitchinResult hitchin_stability(const AltForm& psi);

struct SU3Report {
  bool nondegenerate = false;
  bool stable = false;
  Rational lambda;
  std::optional<bool> compatible;
  std::optional<bool> tamed;
  /// omega(K v, w) symmetrized, K oriented by the sign of omega^3.
  std::optional<QMatrix> gram;
  std::optional<bool> d_omega_zero;
  std::optional<bool> d_psi_zero;
  std::optional<bool> d_star_psi_zero;
  bool su3_structure() const { return nondegenerate && stable && compatible == true && tamed == true; }
  bool symplectic_half_flat() const { return su3_structure() && d_omega_zero == true && d_psi_zero == true; }
  bool strict() const { return symplectic_half_flat() && d_star_psi_zero == false; }
};

/// Pointwise SU(3) conditions, then torsion through ce_differential.
/// Checks after a failed stability test are skipped (left empty).
SU3Report su3_check(const HomogeneousSpaceData& h, const AltForm& omega, const AltForm& psi);

/// omega ^ e^7 + psi on R^6 + R e_7.
AltForm product_g2(const AltForm& omega, const AltForm& psi);

}  // namespace g2hom
