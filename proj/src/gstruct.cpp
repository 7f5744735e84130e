#include "g2hom/gstruct.hpp"

#include <algorithm>

namespace g2hom {

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::DefinitePositive: return "definite (positive)";
    case Verdict::DefiniteNegative: return "definite (negative)";
    case Verdict::Indefinite: return "indefinite";
    case Verdict::Degenerate: return "degenerate";
    case Verdict::NotDefinite: return "not definite";
    case Verdict::UndecidedParametric: return "undecided-parametric";
  }
  return "?";
}

namespace {

void require_shape(const AltForm& f, int dim, int degree, const char* what) {
  if (f.dim() != dim || f.degree() != degree)
    throw DimensionMismatch(std::string(what) + " must be a " + std::to_string(degree) + "-form on a " +
                            std::to_string(dim) + "-space, got degree " + std::to_string(f.degree()) + " on " +
                            std::to_string(f.dim()));
}

bool is_rational(const AltForm& f) {
  return std::all_of(f.terms().begin(), f.terms().end(), [](const auto& t) { return t.second.is_constant(); });
}

std::string vector_label(const Vector& v) {
  std::vector<std::pair<std::size_t, Poly>> nz;
  for (std::size_t i = 0; i < v.dim(); ++i)
    if (!v[i].is_zero()) nz.emplace_back(i, v[i]);
  if (nz.empty()) return "0";
  std::string out;
  for (const auto& [i, c] : nz) {
    std::string e = "e" + std::to_string(i + 1);
    bool neg = c.is_constant() && c.constant_value().sign() < 0;
    Poly mag = neg ? -c : c;
    std::string coef;
    if (!(mag.is_constant() && mag.constant_value() == Rational(1)))
      coef = (mag.terms().size() > 1 ? "(" + mag.str() + ")" : mag.str()) + "*";
    if (out.empty())
      out = (neg ? "-" : "") + coef + e;
    else
      out += (neg ? " - " : " + ") + coef + e;
  }
  return out;
}

QMatrix rational_matrix(const PolyMatrix& m) {
  QMatrix q(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) q(i, j) = m(i, j).constant_value();
  return q;
}

std::vector<Vector> default_probes(int n, const ContextPtr& ctx) {
  std::vector<Vector> out;
  for (int i = 1; i <= n; ++i) out.push_back(Vector::basis(n, i, ctx));
  for (int s : {1, -1})
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        Vector v = Vector::basis(n, i, ctx);
        v.set(j - 1, Poly(ctx, s));
        out.push_back(v);
      }
  return out;
}

// +1 / -1 when every monomial has even exponents and all coefficients share
// that sign (so the polynomial is >= 0 / <= 0 everywhere); 0 otherwise.
int forced_sign(const Poly& p) {
  if (p.is_zero()) return 0;
  int sign = p.terms().begin()->second.sign();
  for (const auto& [e, c] : p.terms()) {
    if (c.sign() != sign) return 0;
    for (auto x : e)
      if (x % 2) return 0;
  }
  return sign;
}

std::string list_rationals(const std::vector<Rational>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + v[i].str();
  return out;
}

}  // namespace

GramMatrix b_matrix(const AltForm& phi) {
  require_shape(phi, 7, 3, "phi");
  std::vector<AltForm> iota;
  for (int i = 1; i <= 7; ++i) iota.push_back(contract_basis(i, phi));
  std::vector<AltForm> iota_phi;
  for (const auto& a : iota) iota_phi.push_back(wedge(a, phi));
  GramMatrix b(7, 7, Poly(phi.context()));
  for (int i = 0; i < 7; ++i)
    for (int j = i; j < 7; ++j) {
      Poly v = top_coefficient(wedge(iota[i], iota_phi[j]));
      b(i, j) = v;
      b(j, i) = v;
    }
  return b;
}

Poly b_value(const AltForm& phi, const Vector& v) {
  require_shape(phi, 7, 3, "phi");
  AltForm iv = contract(v, phi);
  return top_coefficient(wedge(wedge(iv, iv), phi.lift(iv.context())));
}

DefinitenessReport definiteness(const AltForm& phi) {
  require_shape(phi, 7, 3, "phi");
  if (!is_rational(phi))
    throw ValidationError("definiteness needs rational coefficients; use the obstruction certificate for families");
  QMatrix b = rational_matrix(b_matrix(phi));
  DefinitenessReport rep;
  rep.minors = leading_minors(b);
  bool pos = std::all_of(rep.minors.begin(), rep.minors.end(), [](const Rational& m) { return m.sign() > 0; });
  bool neg = true;
  for (std::size_t k = 0; k < rep.minors.size(); ++k) neg = neg && rep.minors[k].sign() == (k % 2 ? 1 : -1);
  if (pos || neg) {
    rep.verdict = pos ? Verdict::DefinitePositive : Verdict::DefiniteNegative;
    rep.certificate = "leading minors of B: " + list_rationals(rep.minors);
    return rep;
  }
  auto add_witness = [&](const QVector& v) {
    Vector w = Vector::from_rationals(v);
    rep.witnesses.push_back(w);
    rep.witness_values.push_back(Poly(empty_context(), bilinear(b, v, v)));
  };
  auto describe = [&]() {
    std::string s;
    for (std::size_t i = 0; i < rep.witnesses.size(); ++i)
      s += (i ? ", " : "") + std::string("B(v,v) = ") + rep.witness_values[i].str() + " at v = " +
           vector_label(rep.witnesses[i]);
    return s;
  };
  // Simple probes first, so certificates stay readable.
  std::optional<QVector> pos_probe, neg_probe, zero_probe;
  for (const auto& p : default_probes(7, empty_context())) {
    QVector v(7);
    for (int i = 0; i < 7; ++i) v[i] = p[i].constant_value();
    int s = bilinear(b, v, v).sign();
    if (s > 0 && !pos_probe) pos_probe = v;
    if (s < 0 && !neg_probe) neg_probe = v;
    if (s == 0 && !zero_probe) zero_probe = v;
  }
  if (!pos_probe || !neg_probe) {
    auto cong = diagonalize_congruent(b);
    for (std::size_t i = 0; i < 7; ++i) {
      QVector col(7);
      for (std::size_t r = 0; r < 7; ++r) col[r] = cong.basis(r, i);
      int s = cong.diagonal[i].sign();
      if (s > 0 && !pos_probe) pos_probe = col;
      if (s < 0 && !neg_probe) neg_probe = col;
    }
  }
  if (pos_probe && neg_probe) {
    rep.verdict = Verdict::Indefinite;
    add_witness(*neg_probe);
    add_witness(*pos_probe);
    rep.certificate = describe();
    return rep;
  }
  // Semidefinite and singular: B(v,v) = 0 exactly on the kernel.
  rep.verdict = Verdict::Degenerate;
  add_witness(zero_probe ? *zero_probe : nullspace(b).front());
  rep.certificate = describe() + " (B is semidefinite, so v spans part of its kernel)";
  return rep;
}

DefinitenessReport obstruction_certificate(const AltForm& family, const std::vector<Vector>& probes) {
  require_shape(family, 7, 3, "family");
  std::vector<Vector> ps = probes.empty() ? default_probes(7, family.context()) : probes;
  DefinitenessReport rep;
  std::vector<Poly> values;
  for (const auto& p : ps) values.push_back(b_value(family, p));
  auto cite = [&](std::size_t i) { return "B(" + vector_label(ps[i]) + ", " + vector_label(ps[i]) + ")"; };
  auto done = [&](std::vector<std::size_t> idx, std::string cert) {
    rep.verdict = Verdict::NotDefinite;
    for (auto i : idx) {
      rep.witnesses.push_back(ps[i]);
      rep.witness_values.push_back(values[i]);
    }
    rep.certificate = std::move(cert);
    return rep;
  };
  for (std::size_t i = 0; i < values.size(); ++i)
    if (values[i].is_zero()) return done({i}, cite(i) + " = 0 identically");
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      const Rational& li = values[i].terms().begin()->second;
      const Rational& lj = values[j].terms().begin()->second;
      if (values[i].terms().begin()->first != values[j].terms().begin()->first) continue;
      Rational c = -(li / lj);
      if (c.sign() <= 0) continue;
      if ((values[i] + values[j] * c).is_zero())
        return done({i, j}, cite(i) + " = " + c.str() + " * (-" + cite(j) + "), opposite signs");
    }
  std::optional<std::size_t> nonneg, nonpos;
  for (std::size_t i = 0; i < values.size(); ++i) {
    int s = forced_sign(values[i]);
    if (s > 0 && !nonneg) nonneg = i;
    if (s < 0 && !nonpos) nonpos = i;
  }
  if (nonneg && nonpos)
    return done({*nonneg, *nonpos}, cite(*nonneg) + " = " + values[*nonneg].str() + " >= 0 and " + cite(*nonpos) +
                                        " = " + values[*nonpos].str() + " <= 0");
  rep.verdict = Verdict::UndecidedParametric;
  rep.certificate = "no certificate among " + std::to_string(ps.size()) + " probes";
  return rep;
}

DefinitenessReport obstruction_certificate(const ClosedFamily& family, const std::vector<Vector>& probes) {
  if (family.generic.dim() != 7 || family.degree != 3)
    throw DimensionMismatch("obstruction certificates need a family of 3-forms on a 7-space");
  return obstruction_certificate(family.generic, probes);
}

QMatrix metric_up_to_scale(const AltForm& phi) {
  auto rep = definiteness(phi);
  if (!is_definite(rep.verdict)) throw ValidationError("form is not definite (" + verdict_name(rep.verdict) + ")");
  QMatrix b = rational_matrix(b_matrix(phi));
  if (rep.verdict == Verdict::DefiniteNegative)
    for (std::size_t i = 0; i < 7; ++i)
      for (std::size_t j = 0; j < 7; ++j) b(i, j) = -b(i, j);
  return b;
}

AltForm hodge_dual_up_to_scale(const QMatrix& q, const AltForm& alpha) {
  const int n = alpha.dim();
  if (static_cast<int>(q.rows()) != n || static_cast<int>(q.cols()) != n)
    throw DimensionMismatch("metric size does not match the form");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (q(i, j) != q(j, i)) throw ValidationError("metric is not symmetric");
  for (const auto& m : leading_minors(q))
    if (m.sign() <= 0) throw ValidationError("metric is not positive definite");
  const int k = alpha.degree();
  QMatrix adj = adjugate(q);
  AltForm out(n, n - k, alpha.context());
  for (const auto& idx : multi_indices(n, k)) {
    // raised component alpha^I
    Poly raised(alpha.context());
    for (const auto& [jdx, c] : alpha.terms()) {
      QMatrix sub(k, k);
      for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s) sub(r, s) = adj(idx[r] - 1, jdx[s] - 1);
      Rational m = determinant(sub);
      if (!m.is_zero()) raised += c * m;
    }
    if (raised.is_zero()) continue;
    MultiIndex perm = idx, comp;
    for (int x = 1; x <= n; ++x)
      if (std::find(idx.begin(), idx.end(), x) == idx.end()) comp.push_back(x);
    perm.insert(perm.end(), comp.begin(), comp.end());
    int eps = sort_sign(perm);
    out.add(comp, eps > 0 ? raised : -raised);
  }
  return out;
}

G2TorsionReport g2_torsion_report(const HomogeneousSpaceData& h, const AltForm& phi) {
  G2TorsionReport rep;
  rep.definiteness = definiteness(phi);
  rep.d_phi = ce_differential(h, phi);
  rep.closed = rep.d_phi.is_zero();
  if (is_definite(rep.definiteness.verdict)) {
    AltForm star = hodge_dual_up_to_scale(metric_up_to_scale(phi), phi);
    rep.d_star_phi = ce_differential(h, star);
    rep.coclosed = rep.d_star_phi->is_zero();
  }
  return rep;
}

HitchinResult hitchin_stability(const AltForm& psi) {
  require_shape(psi, 6, 3, "psi");
  const ContextPtr& ctx = psi.context();
  HitchinResult res{Poly(ctx), PolyMatrix(6, 6, Poly(ctx))};
  for (int i = 1; i <= 6; ++i) {
    AltForm f = wedge(contract_basis(i, psi), psi);
    for (int j = 1; j <= 6; ++j) {
      MultiIndex idx;
      for (int x = 1; x <= 6; ++x)
        if (x != j) idx.push_back(x);
      Poly c = f.coefficient(idx);
      res.k(j - 1, i - 1) = j % 2 ? c : -c;
    }
  }
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) res.lambda += res.k(a, b) * res.k(b, a);
  res.lambda *= Rational(1, 6);
  return res;
}

SU3Report su3_check(const HomogeneousSpaceData& h, const AltForm& omega, const AltForm& psi) {
  require_shape(omega, 6, 2, "omega");
  require_shape(psi, 6, 3, "psi");
  if (h.dim() != 6) throw DimensionMismatch("su3_check needs 6-dimensional homogeneous data");
  if (!is_rational(omega) || !is_rational(psi)) throw ValidationError("su3_check needs rational forms");
  SU3Report rep;
  Rational top3 = top_coefficient(wedge(wedge(omega, omega), omega)).constant_value();
  rep.nondegenerate = !top3.is_zero();
  auto hit = hitchin_stability(psi);
  rep.lambda = hit.lambda.constant_value();
  rep.stable = rep.lambda.sign() < 0;
  if (!rep.stable) return rep;
  rep.compatible = wedge(omega, psi).is_zero();
  QMatrix k = rational_matrix(hit.k);
  QMatrix g(6, 6);
  for (int v = 0; v < 6; ++v)
    for (int w = 0; w < 6; ++w) {
      Rational acc = 0;
      for (int a = 0; a < 6; ++a)
        if (!k(a, v).is_zero()) acc += k(a, v) * omega.coefficient({a + 1, w + 1}).constant_value();
      g(v, w) = top3.sign() < 0 ? -acc : acc;
    }
  QMatrix gs(6, 6);
  for (int v = 0; v < 6; ++v)
    for (int w = 0; w < 6; ++w) gs(v, w) = (g(v, w) + g(w, v)) * Rational(1, 2);
  rep.gram = gs;
  auto minors = leading_minors(gs);
  rep.tamed = rep.nondegenerate &&
              std::all_of(minors.begin(), minors.end(), [](const Rational& m) { return m.sign() > 0; });
  rep.d_omega_zero = ce_differential(h, omega).is_zero();
  rep.d_psi_zero = ce_differential(h, psi).is_zero();
  if (*rep.tamed) rep.d_star_psi_zero = ce_differential(h, hodge_dual_up_to_scale(gs, psi)).is_zero();
  return rep;
}

AltForm product_g2(const AltForm& omega, const AltForm& psi) {
  require_shape(omega, 6, 2, "omega");
  require_shape(psi, 6, 3, "psi");
  ContextPtr ctx = common_context(omega.context(), psi.context(), "product_g2");
  AltForm w7(7, 2, ctx), p7(7, 3, ctx);
  for (const auto& [idx, c] : omega.terms()) w7.add(idx, c);
  for (const auto& [idx, c] : psi.terms()) p7.add(idx, c);
  return wedge(w7, AltForm::monomial(7, {7}, Poly(ctx, 1))) + p7;
}

}  // namespace g2hom
