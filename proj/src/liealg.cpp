#include "g2hom/liealg.hpp"

#include <algorithm>
#include <set>

namespace g2hom {

QMatrix realify(const ComplexMatrix& m) {
  const std::size_t d = m.re.rows();
  if (m.re.cols() != d || m.im.rows() != d || m.im.cols() != d)
    throw DimensionMismatch("complex matrix parts must be square and of equal size");
  QMatrix r(2 * d, 2 * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      r(i, j) = m.re(i, j);
      r(i + d, j + d) = m.re(i, j);
      r(i, j + d) = -m.im(i, j);
      r(i + d, j) = m.im(i, j);
    }
  return r;
}

namespace {

std::vector<std::string> default_names(int n) {
  std::vector<std::string> out;
  for (int i = 1; i <= n; ++i) out.push_back("e" + std::to_string(i));
  return out;
}

std::string pair_name(int i, int j) { return "[e" + std::to_string(i) + ",e" + std::to_string(j) + "]"; }

}  // namespace

// ---------------------------------------------------------------- LieAlgebra

LieAlgebra::LieAlgebra(int dim, std::vector<std::string> names, ContextPtr ctx)
    : dim_(dim), names_(names.empty() ? default_names(dim) : std::move(names)), ctx_(std::move(ctx)) {
  if (static_cast<int>(names_.size()) != dim_) throw DimensionMismatch("basis name count differs from dimension");
}

void LieAlgebra::add_constant(int i, int j, int k, const Poly& c) {
  for (int x : {i, j, k})
    if (x < 1 || x > dim_) throw DimensionMismatch("structure constant index outside 1.." + std::to_string(dim_));
  if (i == j) {
    if (!c.is_zero()) throw ValidationError("nonzero structure constant for " + pair_name(i, i));
    return;
  }
  Poly v = c.lift(common_context(ctx_, c.context(), "structure constant"));
  if (i > j) {
    std::swap(i, j);
    v = -v;
  }
  auto [it, inserted] = constants_.try_emplace({i, j, k}, v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) constants_.erase(it);
  } else if (v.is_zero()) {
    constants_.erase(it);
  }
}

Vector LieAlgebra::bracket_basis(int i, int j) const {
  Vector out(dim_, ctx_);
  if (i == j) return out;
  int sign = 1;
  if (i > j) {
    std::swap(i, j);
    sign = -1;
  }
  for (auto it = constants_.lower_bound({i, j, 0}); it != constants_.end(); ++it) {
    auto [a, b, k] = it->first;
    if (a != i || b != j) break;
    out.set(k - 1, sign > 0 ? it->second : -it->second);
  }
  return out;
}

Vector LieAlgebra::bracket(const Vector& u, const Vector& v) const {
  Vector out(dim_, ctx_);
  std::vector<Poly> acc(dim_, Poly(ctx_));
  for (int i = 1; i <= dim_; ++i) {
    if (u[i - 1].is_zero()) continue;
    for (int j = 1; j <= dim_; ++j) {
      if (i == j || v[j - 1].is_zero()) continue;
      Poly f = u[i - 1].lift(ctx_) * v[j - 1].lift(ctx_);
      Vector b = bracket_basis(i, j);
      for (int k = 0; k < dim_; ++k)
        if (!b[k].is_zero()) acc[k] += f * b[k];
    }
  }
  for (int k = 0; k < dim_; ++k) out.set(k, acc[k]);
  return out;
}

LieAlgebra LieAlgebra::from_matrices(const std::vector<QMatrix>& basis, std::vector<std::string> names) {
  if (basis.empty()) throw ValidationError("empty matrix basis");
  const std::size_t d = basis[0].rows();
  for (const auto& m : basis)
    if (m.rows() != d || m.cols() != d) throw DimensionMismatch("matrix basis elements differ in shape");
  const int n = static_cast<int>(basis.size());
  // A single element has no commutators to express; even the zero matrix spans an abelian line.
  if (n == 1) return LieAlgebra(1, std::move(names));
  auto commutator = [&](int i, int j) {
    QMatrix ab = multiply(basis[i], basis[j]), ba = multiply(basis[j], basis[i]);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) ab(r, c) -= ba(r, c);
    return ab;
  };
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  // One elimination for every pair: [flattened basis | flattened commutators].
  QMatrix aug(d * d, n + pairs.size());
  for (int b = 0; b < n; ++b)
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) aug(r * d + c, b) = basis[b](r, c);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    QMatrix cm = commutator(pairs[p].first, pairs[p].second);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) aug(r * d + c, n + p) = cm(r, c);
  }
  auto [red, pivots] = rref(std::move(aug));
  for (int b = 0; b < n; ++b)
    if (b >= static_cast<int>(pivots.size()) || pivots[b] != static_cast<std::size_t>(b))
      throw ValidationError("matrix basis is linearly dependent (element " + std::to_string(b + 1) +
                            " lies in the span of the previous ones)");
  if (pivots.size() > static_cast<std::size_t>(n)) {
    auto p = pivots[n] - n;
    throw ValidationError("commutator " + pair_name(pairs[p].first + 1, pairs[p].second + 1) +
                          " is not in the span of the basis");
  }
  LieAlgebra l(n, std::move(names));
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (int k = 0; k < n; ++k) {
      const Rational& c = red(k, n + p);
      if (!c.is_zero()) l.add_constant(pairs[p].first + 1, pairs[p].second + 1, k + 1, Poly(empty_context(), c));
    }
  return l;
}

std::vector<JacobiViolation> jacobi_check(const LieAlgebra& l) {
  std::vector<JacobiViolation> out;
  const int n = l.dim();
  std::vector<Vector> e;
  for (int i = 1; i <= n; ++i) e.push_back(Vector::basis(n, i, l.context()));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        Vector s1 = l.bracket(l.bracket_basis(i, j), e[k - 1]);
        Vector s2 = l.bracket(l.bracket_basis(j, k), e[i - 1]);
        Vector s3 = l.bracket(l.bracket_basis(k, i), e[j - 1]);
        Vector sum(n, l.context());
        bool zero = true;
        for (int c = 0; c < n; ++c) {
          sum.set(c, s1[c] + s2[c] + s3[c]);
          zero = zero && sum[c].is_zero();
        }
        if (!zero) out.push_back({i, j, k, sum});
      }
  return out;
}

// ---------------------------------------------------------------- HomogeneousSpaceData

HomogeneousSpaceData::HomogeneousSpaceData(int dim, std::vector<std::string> names, ContextPtr ctx)
    : dim_(dim), names_(names.empty() ? default_names(dim) : std::move(names)), ctx_(std::move(ctx)) {
  if (static_cast<int>(names_.size()) != dim_) throw DimensionMismatch("basis name count differs from dimension");
}

void HomogeneousSpaceData::add_isotropy(PolyMatrix a) {
  if (static_cast<int>(a.rows()) != dim_ || static_cast<int>(a.cols()) != dim_)
    throw DimensionMismatch("isotropy matrix must be " + std::to_string(dim_) + "x" + std::to_string(dim_));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      ContextPtr c = common_context(ctx_, a(i, j).context(), "isotropy entry");
      if (!same_context(c, ctx_)) *this = lift(c);
      a(i, j) = a(i, j).lift(ctx_);
    }
  isotropy_.push_back(std::move(a));
}

void HomogeneousSpaceData::set_bracket(int i, int j, const Vector& v) {
  if (i < 1 || j < 1 || i > dim_ || j > dim_) throw DimensionMismatch("bracket index outside the space");
  if (static_cast<int>(v.dim()) != dim_) throw DimensionMismatch("bracket value has the wrong length");
  if (i == j) {
    if (!v.is_zero()) throw ValidationError("nonzero bracket " + pair_name(i, i));
    return;
  }
  ContextPtr c = common_context(ctx_, v.context(), "bracket value");
  if (!same_context(c, ctx_)) *this = lift(c);
  Vector w = v.lift(ctx_);
  if (i > j) {
    std::swap(i, j);
    Vector neg(dim_, ctx_);
    for (int k = 0; k < dim_; ++k) neg.set(k, -w[k]);
    w = neg;
  }
  if (w.is_zero())
    brackets_.erase({i, j});
  else
    brackets_.insert_or_assign({i, j}, w);
}

Vector HomogeneousSpaceData::bracket_basis(int i, int j) const {
  Vector out(dim_, ctx_);
  if (i == j) return out;
  bool flip = i > j;
  auto it = brackets_.find(flip ? std::make_pair(j, i) : std::make_pair(i, j));
  if (it == brackets_.end()) return out;
  if (!flip) return it->second;
  for (int k = 0; k < dim_; ++k) out.set(k, -it->second[k]);
  return out;
}

Vector HomogeneousSpaceData::bracket(const Vector& u, const Vector& v) const {
  ContextPtr ctx = common_context(common_context(ctx_, u.context(), "bracket"), v.context(), "bracket");
  std::vector<Poly> acc(dim_, Poly(ctx));
  for (const auto& [ij, val] : brackets_) {
    auto [i, j] = ij;
    Poly f = u[i - 1].lift(ctx) * v[j - 1].lift(ctx) - u[j - 1].lift(ctx) * v[i - 1].lift(ctx);
    if (f.is_zero()) continue;
    for (int k = 0; k < dim_; ++k)
      if (!val[k].is_zero()) acc[k] += f * val[k].lift(ctx);
  }
  Vector out(dim_, ctx);
  for (int k = 0; k < dim_; ++k) out.set(k, acc[k]);
  return out;
}

bool HomogeneousSpaceData::isotropy_rational() const {
  for (const auto& a : isotropy_)
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        if (!a(i, j).is_constant()) return false;
  return true;
}

bool HomogeneousSpaceData::rational() const {
  if (!isotropy_rational()) return false;
  for (const auto& [ij, v] : brackets_)
    for (int k = 0; k < dim_; ++k)
      if (!v[k].is_constant()) return false;
  return true;
}

std::vector<QMatrix> HomogeneousSpaceData::rational_isotropy() const {
  if (!isotropy_rational())
    throw ValidationError("isotropy action depends on parameters " + ctx_->describe() + "; instantiate them first");
  std::vector<QMatrix> out;
  for (const auto& a : isotropy_) {
    QMatrix q(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) q(i, j) = a(i, j).constant_value();
    out.push_back(std::move(q));
  }
  return out;
}

HomogeneousSpaceData HomogeneousSpaceData::evaluate(const std::map<std::string, Rational>& assignment) const {
  HomogeneousSpaceData out(dim_, names_, Poly(ctx_).evaluate(assignment).context());
  out.partial_ = partial_;
  for (const auto& a : isotropy_) {
    PolyMatrix b(a.rows(), a.cols(), Poly(out.ctx_));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) b(i, j) = a(i, j).evaluate(assignment);
    out.isotropy_.push_back(std::move(b));
  }
  for (const auto& [ij, v] : brackets_) {
    Vector w(dim_, out.ctx_);
    for (int k = 0; k < dim_; ++k) w.set(k, v[k].evaluate(assignment));
    out.set_bracket(ij.first, ij.second, w);
  }
  return out;
}

HomogeneousSpaceData HomogeneousSpaceData::lift(const ContextPtr& target) const {
  HomogeneousSpaceData out(dim_, names_, target);
  out.partial_ = partial_;
  for (const auto& a : isotropy_) {
    PolyMatrix b(a.rows(), a.cols(), Poly(target));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) b(i, j) = a(i, j).lift(target);
    out.isotropy_.push_back(std::move(b));
  }
  for (const auto& [ij, v] : brackets_) out.brackets_.emplace(ij, v.lift(target));
  return out;
}

HomogeneousSpaceData reductive_split(const LieAlgebra& l, const std::vector<int>& h, const std::vector<int>& m) {
  const int n = l.dim();
  std::vector<int> pos(n + 1, 0);  // 1-based position in m, or 0
  std::set<int> seen;
  for (int x : h) {
    if (x < 1 || x > n || !seen.insert(x).second) throw ValidationError("bad or repeated h index " + std::to_string(x));
  }
  for (std::size_t a = 0; a < m.size(); ++a) {
    int x = m[a];
    if (x < 1 || x > n || !seen.insert(x).second) throw ValidationError("bad or repeated m index " + std::to_string(x));
    pos[x] = static_cast<int>(a) + 1;
  }
  if (static_cast<int>(seen.size()) != n) throw ValidationError("h and m indices do not cover the basis");
  const int dm = static_cast<int>(m.size());
  std::vector<std::string> names;
  for (int x : m) names.push_back(l.names()[x - 1]);
  HomogeneousSpaceData out(dm, names, l.context());

  for (std::size_t a = 0; a < h.size(); ++a)
    for (std::size_t b = a + 1; b < h.size(); ++b) {
      Vector v = l.bracket_basis(h[a], h[b]);
      for (int k = 1; k <= n; ++k)
        if (pos[k] && !v[k - 1].is_zero())
          throw ValidationError("h is not a subalgebra: " + pair_name(h[a], h[b]) + " has component " +
                                v[k - 1].str() + " along e" + std::to_string(k));
    }
  for (int x : h) {
    PolyMatrix ad(dm, dm, Poly(l.context()));
    for (int b = 0; b < dm; ++b) {
      Vector v = l.bracket_basis(x, m[b]);
      for (int k = 1; k <= n; ++k) {
        if (v[k - 1].is_zero()) continue;
        if (!pos[k])
          throw ValidationError("not reductive: " + pair_name(x, m[b]) + " has component " + v[k - 1].str() +
                                " along e" + std::to_string(k) + " in h");
        ad(pos[k] - 1, b) = v[k - 1];
      }
    }
    out.add_isotropy(std::move(ad));
  }
  for (int a = 0; a < dm; ++a)
    for (int b = a + 1; b < dm; ++b) {
      Vector v = l.bracket_basis(m[a], m[b]);
      Vector proj(dm, l.context());
      for (int k = 1; k <= n; ++k)
        if (pos[k]) proj.set(pos[k] - 1, v[k - 1]);
      out.set_bracket(a + 1, b + 1, proj);
    }
  return out;
}

HomogeneousSpaceData homogeneous_from_partial(int dim, std::vector<std::string> names,
                                              std::vector<PolyMatrix> isotropy,
                                              const std::vector<PartialBracket>& brackets, ContextPtr ctx) {
  HomogeneousSpaceData out(dim, std::move(names), std::move(ctx));
  out.set_partial(true);
  for (auto& a : isotropy) out.add_isotropy(std::move(a));
  std::map<std::pair<int, int>, const Vector*> given;
  for (const auto& b : brackets) {
    if (b.i == b.j) throw ValidationError("bracket entry " + pair_name(b.i, b.j) + " has equal indices");
    if (!given.emplace(std::make_pair(b.i, b.j), &b.value).second)
      throw ValidationError("bracket entry " + pair_name(b.i, b.j) + " given twice");
  }
  for (const auto& [ij, v] : given) {
    auto [i, j] = ij;
    auto rev = given.find({j, i});
    if (rev != given.end()) {
      if (i > j) continue;
      for (int k = 0; k < dim; ++k)
        if (!((*v)[k] + (*rev->second)[k].lift((*v)[k].context())).is_zero())
          throw ValidationError("bracket table is not antisymmetric: " + pair_name(i, j) + " != -" + pair_name(j, i));
    }
    out.set_bracket(i, j, *v);
  }
  return out;
}

HomogeneousSpaceData with_central_line(const HomogeneousSpaceData& h, const std::string& name) {
  const int n = h.dim();
  std::vector<std::string> names = h.names();
  names.push_back(name);
  HomogeneousSpaceData out(n + 1, names, h.context());
  out.set_partial(h.partial());
  for (const auto& a : h.isotropy()) {
    PolyMatrix b(n + 1, n + 1, Poly(h.context()));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = a(i, j);
    out.add_isotropy(std::move(b));
  }
  for (const auto& [ij, v] : h.brackets()) {
    Vector w(n + 1, h.context());
    for (int k = 0; k < n; ++k) w.set(k, v[k]);
    out.set_bracket(ij.first, ij.second, w);
  }
  return out;
}

}  // namespace g2hom
