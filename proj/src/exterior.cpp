#include "g2hom/exterior.hpp"

#include <algorithm>
#include <cctype>

namespace g2hom {

int sort_sign(MultiIndex& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

std::vector<MultiIndex> multi_indices(int n, int k) {
  std::vector<MultiIndex> out;
  if (k < 0 || k > n) return out;
  MultiIndex cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i + 1;
  while (true) {
    out.push_back(cur);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

ContextPtr common_context(const ContextPtr& a, const ContextPtr& b, const char* op) {
  if (same_context(a, b)) return a;
  if (b->size() == 0) return a;
  if (a->size() == 0) return b;
  throw ContextMismatch(std::string(op) + ": context " + a->describe() + " vs " + b->describe());
}

// ---------------------------------------------------------------- Vector

Vector::Vector(std::size_t dim, ContextPtr ctx) : ctx_(std::move(ctx)), comps_(dim, Poly(ctx_)) {}

Vector Vector::basis(std::size_t dim, int i, ContextPtr ctx) {
  if (i < 1 || static_cast<std::size_t>(i) > dim)
    throw DimensionMismatch("basis index " + std::to_string(i) + " outside 1.." + std::to_string(dim));
  Vector v(dim, ctx);
  v.comps_[i - 1] = Poly(ctx, 1);
  return v;
}

Vector Vector::from_rationals(const QVector& comps, ContextPtr ctx) {
  Vector v(comps.size(), ctx);
  for (std::size_t i = 0; i < comps.size(); ++i) v.comps_[i] = Poly(ctx, comps[i]);
  return v;
}

void Vector::set(std::size_t i, Poly value) {
  if (!same_context(value.context(), ctx_)) value = value.lift(ctx_);
  comps_.at(i) = std::move(value);
}

bool Vector::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const Poly& p) { return p.is_zero(); });
}

Vector Vector::lift(const ContextPtr& target) const {
  Vector v(dim(), target);
  for (std::size_t i = 0; i < dim(); ++i) v.comps_[i] = comps_[i].lift(target);
  return v;
}

// ---------------------------------------------------------------- AltForm

AltForm::AltForm(int dim, int degree, ContextPtr ctx) : dim_(dim), degree_(degree), ctx_(std::move(ctx)) {
  if (dim < 0 || degree < 0) throw DimensionMismatch("negative dimension or degree");
}

AltForm AltForm::monomial(int dim, MultiIndex idx, const Poly& c) {
  AltForm f(dim, static_cast<int>(idx.size()), c.context());
  f.add(std::move(idx), c);
  return f;
}

Poly AltForm::coefficient(MultiIndex idx) const {
  int s = sort_sign(idx);
  auto it = terms_.find(idx);
  if (s == 0 || it == terms_.end()) return Poly(ctx_);
  return s > 0 ? it->second : -it->second;
}

void AltForm::add(MultiIndex idx, const Poly& c) {
  if (static_cast<int>(idx.size()) != degree_)
    throw DimensionMismatch("index length " + std::to_string(idx.size()) + " in a " +
                            std::to_string(degree_) + "-form");
  for (int i : idx)
    if (i < 1 || i > dim_)
      throw DimensionMismatch("covector index " + std::to_string(i) + " outside 1.." + std::to_string(dim_));
  int s = sort_sign(idx);
  if (s == 0 || c.is_zero() || degree_ > dim_) return;
  Poly v = same_context(c.context(), ctx_) ? c : c.lift(common_context(ctx_, c.context(), "form coefficient"));
  if (!same_context(v.context(), ctx_)) *this = lift(v.context());
  if (s < 0) v = -v;
  auto [it, inserted] = terms_.try_emplace(std::move(idx), v);
  if (!inserted) {
    it->second += v;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

AltForm AltForm::operator-() const {
  AltForm r(*this);
  for (auto& [k, c] : r.terms_) c = -c;
  return r;
}

AltForm& AltForm::operator+=(const AltForm& o) {
  if (dim_ != o.dim_ || degree_ != o.degree_)
    throw DimensionMismatch("adding forms of different dimension or degree");
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

AltForm& AltForm::operator-=(const AltForm& o) { return *this += -o; }

AltForm& AltForm::operator*=(const Poly& c) {
  ContextPtr ctx = common_context(ctx_, c.context(), "form scaling");
  AltForm r(dim_, degree_, ctx);
  Poly cc = c.lift(ctx);
  for (const auto& [k, v] : terms_) r.add(k, v.lift(ctx) * cc);
  return *this = std::move(r);
}

AltForm& AltForm::operator*=(const Rational& c) {
  if (c.is_zero()) terms_.clear();
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

bool operator==(const AltForm& a, const AltForm& b) {
  return a.dim_ == b.dim_ && a.degree_ == b.degree_ && same_context(a.ctx_, b.ctx_) && a.terms_ == b.terms_;
}

AltForm AltForm::evaluate(const std::map<std::string, Rational>& assignment) const {
  AltForm r(dim_, degree_, Poly(ctx_).evaluate(assignment).context());
  for (const auto& [k, v] : terms_) r.add(k, v.evaluate(assignment));
  return r;
}

AltForm AltForm::lift(const ContextPtr& target) const {
  AltForm r(dim_, degree_, target);
  for (const auto& [k, v] : terms_) r.terms_.emplace(k, v.lift(target));
  return r;
}

namespace {

std::string render_index(const MultiIndex& idx) {
  std::string s = "e^{";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? " " : "") + std::to_string(idx[i]);
  return s + "}";
}

}  // namespace

std::string AltForm::str() const {
  if (terms_.empty()) return "0";
  if (degree_ == 0) return terms_.begin()->second.str();
  std::string out;
  bool first = true;
  for (const auto& [idx, c] : terms_) {
    bool negative = false;
    std::string coef;
    if (c.terms().size() == 1) {
      negative = c.terms().begin()->second.sign() < 0;
      Poly mag = negative ? -c : c;
      if (!(mag.is_constant() && mag.constant_value() == Rational(1))) coef = mag.str() + "*";
    } else {
      coef = "(" + c.str() + ")*";
    }
    if (first)
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    first = false;
    out += coef + render_index(idx);
  }
  return out;
}

AltForm AltForm::parse(std::string_view text, int dim, int degree, const ContextPtr& ctx) {
  AltForm f(dim, degree, ctx);
  auto fail = [&](const std::string& what) -> ParseError {
    return ParseError(what + " in form '" + std::string(text) + "'");
  };
  if (degree == 0) {
    Poly p = Poly::parse(text, ctx);
    if (!p.is_zero()) f.add({}, p);
    return f;
  }
  // Split at top-level signs.
  std::vector<std::pair<bool, std::string>> chunks;
  std::string cur;
  bool negative = false;
  int depth = 0;
  auto flush = [&](bool next_negative) {
    auto first = cur.find_first_not_of(" \t\n");
    if (first == std::string::npos) {
      if (!chunks.empty() || negative) throw fail("empty term");
    } else {
      chunks.emplace_back(negative, cur.substr(first));
    }
    cur.clear();
    negative = next_negative;
  };
  for (char ch : text) {
    if (ch == '(' || ch == '{') ++depth;
    if (ch == ')' || ch == '}') --depth;
    if (depth < 0) throw fail("unbalanced brackets");
    if (depth == 0 && (ch == '+' || ch == '-')) {
      bool leading = cur.find_first_not_of(" \t\n") == std::string::npos && chunks.empty();
      if (leading) {
        if (negative) throw fail("double sign");
        negative = ch == '-';
        continue;
      }
      flush(ch == '-');
      continue;
    }
    cur += ch;
  }
  if (depth != 0) throw fail("unbalanced brackets");
  flush(false);
  if (chunks.size() == 1 && chunks[0].second.find("e^{") == std::string::npos) {
    Poly p = Poly::parse(chunks[0].second, ctx);
    if (p.is_zero()) return f;
    throw fail("missing e^{...} factor");
  }
  for (auto& [neg, body] : chunks) {
    auto pos = body.rfind("e^{");
    auto close = body.find('}', pos);
    if (pos == std::string::npos || close == std::string::npos ||
        body.find_first_not_of(" \t\n", close + 1) != std::string::npos)
      throw fail("term '" + body + "' does not end in e^{...}");
    Poly coef(ctx, 1);
    std::string head = body.substr(0, pos);
    auto last = head.find_last_not_of(" \t\n");
    if (last != std::string::npos) {
      if (head[last] != '*') throw fail("expected '*' before e^{ in '" + body + "'");
      coef = Poly::parse(head.substr(0, last), ctx);
    }
    std::string inner = body.substr(pos + 3, close - pos - 3);
    MultiIndex idx;
    bool separated = inner.find_first_of(" ,") != std::string::npos;
    if (separated || dim > 9) {
      std::string num;
      for (char ch : inner + " ") {
        if (std::isdigit(static_cast<unsigned char>(ch))) {
          num += ch;
        } else if (ch == ' ' || ch == ',') {
          if (!num.empty()) idx.push_back(std::stoi(num));
          num.clear();
        } else {
          throw fail("bad index list '" + inner + "'");
        }
      }
    } else {
      for (char ch : inner) {
        if (!std::isdigit(static_cast<unsigned char>(ch))) throw fail("bad index list '" + inner + "'");
        idx.push_back(ch - '0');
      }
    }
    if (static_cast<int>(idx.size()) != degree)
      throw fail("term e^{" + inner + "} has degree " + std::to_string(idx.size()) + ", expected " +
                 std::to_string(degree));
    for (int i : idx)
      if (i < 1 || i > dim) throw fail("index " + std::to_string(i) + " outside 1.." + std::to_string(dim));
    f.add(idx, neg ? -coef : coef);
  }
  return f;
}

// ---------------------------------------------------------------- operations

AltForm wedge(const AltForm& a, const AltForm& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("wedge of forms on different spaces");
  ContextPtr ctx = common_context(a.context(), b.context(), "wedge");
  AltForm out(a.dim(), a.degree() + b.degree(), ctx);
  if (a.degree() + b.degree() > a.dim()) return out;
  for (const auto& [ia, ca] : a.terms())
    for (const auto& [ib, cb] : b.terms()) {
      MultiIndex idx;
      idx.reserve(ia.size() + ib.size());
      // merge with inversion count
      std::size_t x = 0, y = 0;
      int inversions = 0;
      bool overlap = false;
      while (x < ia.size() || y < ib.size()) {
        if (y == ib.size() || (x < ia.size() && ia[x] < ib[y])) {
          idx.push_back(ia[x++]);
        } else if (x == ia.size() || ib[y] < ia[x]) {
          inversions += static_cast<int>(ia.size() - x);
          idx.push_back(ib[y++]);
        } else {
          overlap = true;
          break;
        }
      }
      if (overlap) continue;
      Poly c = ca.lift(ctx) * cb.lift(ctx);
      out.add(idx, inversions % 2 ? -c : c);
    }
  return out;
}

AltForm contract_basis(int i, const AltForm& a) {
  if (a.degree() == 0) throw DimensionMismatch("contraction of a 0-form");
  if (i < 1 || i > a.dim()) throw DimensionMismatch("basis index outside the space");
  AltForm out(a.dim(), a.degree() - 1, a.context());
  for (const auto& [idx, c] : a.terms()) {
    auto it = std::find(idx.begin(), idx.end(), i);
    if (it == idx.end()) continue;
    auto p = it - idx.begin();
    MultiIndex rest(idx.begin(), it);
    rest.insert(rest.end(), it + 1, idx.end());
    out.add(rest, p % 2 ? -c : c);
  }
  return out;
}

AltForm contract(const Vector& v, const AltForm& a) {
  if (static_cast<int>(v.dim()) != a.dim()) throw DimensionMismatch("vector and form dimensions differ");
  if (a.degree() == 0) throw DimensionMismatch("contraction of a 0-form");
  ContextPtr ctx = common_context(v.context(), a.context(), "contract");
  AltForm out(a.dim(), a.degree() - 1, ctx);
  for (int i = 1; i <= a.dim(); ++i)
    if (!v[i - 1].is_zero()) out += contract_basis(i, a) * v[i - 1].lift(ctx);
  return out;
}

Poly top_coefficient(const AltForm& a) {
  if (a.degree() != a.dim())
    throw DimensionMismatch("top coefficient of a " + std::to_string(a.degree()) + "-form on a " +
                            std::to_string(a.dim()) + "-space");
  MultiIndex top(a.dim());
  for (int i = 0; i < a.dim(); ++i) top[i] = i + 1;
  return a.coefficient(top);
}

Poly evaluate(const AltForm& a, const std::vector<Vector>& vectors) {
  if (static_cast<int>(vectors.size()) != a.degree())
    throw DimensionMismatch("evaluating a " + std::to_string(a.degree()) + "-form on " +
                            std::to_string(vectors.size()) + " vectors");
  ContextPtr ctx = a.context();
  for (const auto& v : vectors) {
    if (static_cast<int>(v.dim()) != a.dim()) throw DimensionMismatch("vector dimension mismatch");
    ctx = common_context(ctx, v.context(), "evaluate");
  }
  Poly zero(ctx);
  Poly total(ctx);
  const std::size_t k = vectors.size();
  for (const auto& [idx, c] : a.terms()) {
    Matrix<Poly> m(k, k, zero);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t s = 0; s < k; ++s) m(r, s) = vectors[r][idx[s] - 1].lift(ctx);
    Poly d = determinant(m, zero);
    if (!d.is_zero()) total += c.lift(ctx) * d;
  }
  return total;
}

Poly evaluate_basis(const AltForm& a, const MultiIndex& idx) {
  if (static_cast<int>(idx.size()) != a.degree()) throw DimensionMismatch("arity mismatch");
  return a.coefficient(idx);
}

AltForm pullback(const AltForm& a, const QMatrix& t) {
  if (static_cast<int>(t.rows()) != a.dim() || t.rows() != t.cols())
    throw DimensionMismatch("pullback matrix shape");
  std::vector<Vector> cols;
  for (int j = 0; j < a.dim(); ++j) {
    QVector c(a.dim());
    for (int i = 0; i < a.dim(); ++i) c[i] = t(i, j);
    cols.push_back(Vector::from_rationals(c, a.context()));
  }
  AltForm out(a.dim(), a.degree(), a.context());
  for (const auto& idx : multi_indices(a.dim(), a.degree())) {
    std::vector<Vector> args;
    for (int j : idx) args.push_back(cols[j - 1]);
    out.add(idx, evaluate(a, args));
  }
  return out;
}

}  // namespace g2hom
