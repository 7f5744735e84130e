#include "g2hom/invariants.hpp"

#include <algorithm>
#include <numeric>

namespace g2hom {

namespace {

std::map<MultiIndex, std::size_t> index_positions(const std::vector<MultiIndex>& idx) {
  std::map<MultiIndex, std::size_t> pos;
  for (std::size_t i = 0; i < idx.size(); ++i) pos.emplace(idx[i], i);
  return pos;
}

// alpha(e_l, e_R) for sorted R, as (sorted index, sign); sign 0 when l in R.
std::pair<MultiIndex, int> prepend(int l, const MultiIndex& rest) {
  MultiIndex out;
  out.reserve(rest.size() + 1);
  int below = 0;
  bool placed = false;
  for (int r : rest) {
    if (r == l) return {{}, 0};
    if (r < l) ++below;
    if (!placed && r > l) {
      out.push_back(l);
      placed = true;
    }
    out.push_back(r);
  }
  if (!placed) out.push_back(l);
  return {out, below % 2 ? -1 : 1};
}

}  // namespace

AltForm isotropy_action(const PolyMatrix& a, const AltForm& alpha) {
  const int n = alpha.dim();
  if (static_cast<int>(a.rows()) != n || static_cast<int>(a.cols()) != n)
    throw DimensionMismatch("isotropy matrix does not match the form's dimension");
  ContextPtr ctx = common_context(alpha.context(), a.rows() ? a(0, 0).context() : alpha.context(), "isotropy action");
  AltForm out(n, alpha.degree(), ctx);
  for (const auto& idx : multi_indices(n, alpha.degree())) {
    Poly acc(ctx);
    for (std::size_t p = 0; p < idx.size(); ++p)
      for (int i = 1; i <= n; ++i) {
        const Poly& c = a(i - 1, idx[p] - 1);
        if (c.is_zero()) continue;
        MultiIndex j = idx;
        j[p] = i;
        Poly v = alpha.coefficient(j);
        if (!v.is_zero()) acc -= c.lift(ctx) * v.lift(ctx);
      }
    out.add(idx, acc);
  }
  return out;
}

InvariantFormSpace invariant_forms(const HomogeneousSpaceData& h, int k) {
  const int n = h.dim();
  if (k < 0) throw DimensionMismatch("negative degree");
  InvariantFormSpace out;
  out.dim = n;
  out.degree = k;
  auto basis = multi_indices(n, k);
  if (basis.empty()) return out;
  auto iso = h.rational_isotropy();
  auto pos = index_positions(basis);
  const std::size_t nb = basis.size();
  QMatrix ops(iso.size() * nb, nb);
  for (std::size_t g = 0; g < iso.size(); ++g)
    for (std::size_t row = 0; row < nb; ++row) {
      const auto& j = basis[row];
      for (int p = 0; p < k; ++p)
        for (int i = 1; i <= n; ++i) {
          const Rational& c = iso[g](i - 1, j[p] - 1);
          if (c.is_zero()) continue;
          MultiIndex t = j;
          t[p] = i;
          int s = sort_sign(t);
          if (s == 0) continue;
          Rational& entry = ops(g * nb + row, pos.at(t));
          entry -= s > 0 ? c : -c;
        }
    }
  auto kernel = nullspace(ops);
  if (kernel.empty()) return out;
  QMatrix km;
  for (auto& v : kernel) km.append_row(v);
  auto [red, pivots] = rref(std::move(km));
  for (std::size_t r = 0; r < pivots.size(); ++r) out.basis.push_back(form_from_coordinates(n, k, red.row(r)));
  return out;
}

AltForm ce_differential(const HomogeneousSpaceData& h, const AltForm& alpha) {
  const int n = h.dim();
  if (alpha.dim() != n)
    throw DimensionMismatch("form on a " + std::to_string(alpha.dim()) + "-space, homogeneous data of dimension " +
                            std::to_string(n));
  const int k = alpha.degree();
  ContextPtr ctx = merge_contexts(alpha.context(), h.context());
  AltForm a = alpha.lift(ctx);
  AltForm out(n, k + 1, ctx);
  if (k + 1 > n || a.is_zero()) return out;
  std::map<std::pair<int, int>, Vector> br;
  for (const auto& [ij, v] : h.brackets()) br.emplace(ij, v.lift(ctx));
  for (const auto& t : multi_indices(n, k + 1)) {
    Poly acc(ctx);
    for (int x = 0; x <= k; ++x)
      for (int y = x + 1; y <= k; ++y) {
        auto it = br.find({t[x], t[y]});
        if (it == br.end()) continue;
        MultiIndex rest;
        for (int z = 0; z <= k; ++z)
          if (z != x && z != y) rest.push_back(t[z]);
        int outer = (x + y) % 2 ? -1 : 1;
        for (int l = 1; l <= n; ++l) {
          const Poly& c = it->second[l - 1];
          if (c.is_zero()) continue;
          auto [idx, s] = prepend(l, rest);
          if (s == 0) continue;
          auto coef = a.terms().find(idx);
          if (coef == a.terms().end()) continue;
          Poly term = c * coef->second;
          if (s * outer > 0)
            acc += term;
          else
            acc -= term;
        }
      }
    out.add(t, acc);
  }
  return out;
}

ClosedFamily closed_forms(const HomogeneousSpaceData& h, int k) {
  if (!h.rational())
    throw ValidationError("closed_forms needs instantiated data; parameters " + h.context()->describe() + " remain");
  ClosedFamily fam;
  fam.degree = k;
  const int n = h.dim();
  auto inv = invariant_forms(h, k);
  fam.invariant_dim = inv.basis.size();
  const std::size_t rows = multi_indices(n, k + 1).size();
  fam.d_matrix = QMatrix(rows, inv.basis.size());
  for (std::size_t c = 0; c < inv.basis.size(); ++c) {
    AltForm d = ce_differential(h, inv.basis[c]);
    QVector v = coordinates(d);
    for (std::size_t r = 0; r < rows; ++r) fam.d_matrix(r, c) = v[r];
  }
  fam.d_rank = rank(fam.d_matrix);
  std::vector<AltForm> closed;
  for (const auto& coeffs : nullspace(fam.d_matrix)) {
    AltForm f(n, k);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (!coeffs[i].is_zero()) f += inv.basis[i] * coeffs[i];
    closed.push_back(std::move(f));
  }
  if (!closed.empty()) {
    QMatrix m;
    for (const auto& f : closed) m.append_row(coordinates(f));
    auto [red, pivots] = rref(std::move(m));
    for (std::size_t r = 0; r < pivots.size(); ++r) fam.basis.push_back(form_from_coordinates(n, k, red.row(r)));
  }
  for (std::size_t r = 0; r < fam.basis.size(); ++r) fam.symbols.push_back("a" + std::to_string(r + 1));
  ContextPtr ctx = make_context(fam.symbols);
  fam.generic = AltForm(n, k, ctx);
  for (std::size_t r = 0; r < fam.basis.size(); ++r)
    fam.generic += fam.basis[r].lift(ctx) * Poly::variable(ctx, fam.symbols[r]);
  return fam;
}

DSquaredReport d_squared_check(const HomogeneousSpaceData& h, int k) {
  if (h.partial())
    throw ValidationError(
        "partial homogeneous data: d∘d = 0 is not guaranteed by construction, so the check is refused");
  DSquaredReport rep;
  rep.degree = k;
  for (const auto& g : invariant_forms(h, k).basis) {
    ++rep.checked;
    if (!ce_differential(h, ce_differential(h, g)).is_zero()) {
      rep.passed = false;
      rep.witnesses.push_back(g);
    }
  }
  return rep;
}

QVector coordinates(const AltForm& f) {
  auto basis = multi_indices(f.dim(), f.degree());
  QVector v(basis.size());
  auto pos = index_positions(basis);
  for (const auto& [idx, c] : f.terms()) v[pos.at(idx)] = c.constant_value();
  return v;
}

AltForm form_from_coordinates(int dim, int degree, const QVector& coords, ContextPtr ctx) {
  auto basis = multi_indices(dim, degree);
  if (coords.size() != basis.size()) throw DimensionMismatch("coordinate vector length mismatch");
  AltForm f(dim, degree, ctx);
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].is_zero()) f.add(basis[i], Poly(ctx, coords[i]));
  return f;
}

namespace {

QMatrix stack(const std::vector<AltForm>& forms, int dim, int degree) {
  QMatrix m(0, multi_indices(dim, degree).size());
  for (const auto& f : forms) {
    if (f.dim() != dim || f.degree() != degree) throw DimensionMismatch("span of forms of mixed shape");
    m.append_row(coordinates(f));
  }
  return m;
}

}  // namespace

std::size_t span_rank(const std::vector<AltForm>& forms, int dim, int degree) {
  return rank(stack(forms, dim, degree));
}

bool within_span(const std::vector<AltForm>& a, const std::vector<AltForm>& b, int dim, int degree) {
  std::vector<AltForm> both = b;
  both.insert(both.end(), a.begin(), a.end());
  return span_rank(both, dim, degree) == span_rank(b, dim, degree);
}

bool same_span(const std::vector<AltForm>& a, const std::vector<AltForm>& b, int dim, int degree) {
  return within_span(a, b, dim, degree) && within_span(b, a, dim, degree);
}

std::vector<AltForm> linear_components(const AltForm& f) {
  const auto& ctx = f.context();
  std::vector<AltForm> out(ctx->size(), AltForm(f.dim(), f.degree()));
  for (const auto& [idx, c] : f.terms())
    for (const auto& [e, coef] : c.terms()) {
      auto nz = std::count_if(e.begin(), e.end(), [](auto x) { return x != 0; });
      auto deg = std::accumulate(e.begin(), e.end(), 0u);
      if (nz != 1 || deg != 1)
        throw ValidationError("form coefficient '" + c.str() + "' is not linear homogeneous in " + ctx->describe());
      auto s = std::find(e.begin(), e.end(), 1u) - e.begin();
      out[s].add(idx, Poly(empty_context(), coef));
    }
  return out;
}

}  // namespace g2hom
