#include "g2hom/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace g2hom {

// ---------------------------------------------------------------- Rational

Rational::Rational(long num, long den) {
  if (den == 0) throw ValidationError("rational with zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) { value_.canonicalize(); }

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }),
          s.end());
  auto valid_int = [](std::string_view t) {
    if (!t.empty() && (t.front() == '-' || t.front() == '+')) t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den) || den.front() == '-' || den.front() == '+')
    throw ParseError("not a rational number: '" + std::string(text) + "'");
  if (num.front() == '+') num.erase(0, 1);
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  return Rational(mpq_class(n, d));
}

Rational& Rational::operator+=(const Rational& o) {
  value_ += o.value_;
  return *this;
}
Rational& Rational::operator-=(const Rational& o) {
  value_ -= o.value_;
  return *this;
}
Rational& Rational::operator*=(const Rational& o) {
  value_ *= o.value_;
  return *this;
}
Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw ValidationError("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational Rational::pow(unsigned exponent) const {
  Rational r(1);
  for (unsigned i = 0; i < exponent; ++i) r *= *this;
  return r;
}

std::string Rational::str() const {
  if (value_.get_den() == 1) return value_.get_num().get_str();
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

// ---------------------------------------------------------------- contexts

SymbolContext::SymbolContext(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const auto& n = names_[i];
    if (n.empty() || !(std::isalpha(static_cast<unsigned char>(n[0])) || n[0] == '_'))
      throw ValidationError("invalid symbol name '" + n + "'");
    for (char c : n)
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_'))
        throw ValidationError("invalid symbol name '" + n + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (names_[j] == n) throw ValidationError("duplicate symbol '" + n + "'");
  }
}

std::optional<std::size_t> SymbolContext::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::string SymbolContext::describe() const {
  std::string out = "[";
  for (std::size_t i = 0; i < names_.size(); ++i) out += (i ? ", " : "") + names_[i];
  return out + "]";
}

ContextPtr make_context(std::vector<std::string> names) {
  if (names.empty()) return empty_context();
  return std::make_shared<const SymbolContext>(std::move(names));
}

const ContextPtr& empty_context() {
  static const ContextPtr ctx = std::make_shared<const SymbolContext>(std::vector<std::string>{});
  return ctx;
}

bool same_context(const ContextPtr& a, const ContextPtr& b) { return a == b || *a == *b; }

ContextPtr merge_contexts(const ContextPtr& a, const ContextPtr& b) {
  std::vector<std::string> names = a->names();
  for (const auto& n : b->names())
    if (!a->index_of(n)) names.push_back(n);
  if (names.size() == a->size()) return a;
  return make_context(std::move(names));
}

bool GradedLexGreater::operator()(const Exponents& a, const Exponents& b) const {
  auto da = std::accumulate(a.begin(), a.end(), 0u);
  auto db = std::accumulate(b.begin(), b.end(), 0u);
  if (da != db) return da > db;
  return a > b;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(ContextPtr ctx) : ctx_(std::move(ctx)) {}

Poly::Poly(ContextPtr ctx, const Rational& constant) : ctx_(std::move(ctx)) {
  if (!constant.is_zero()) terms_.emplace(Exponents(ctx_->size(), 0), constant);
}

Poly Poly::variable(const ContextPtr& ctx, std::string_view name) {
  auto idx = ctx->index_of(name);
  if (!idx) throw ParseError("unknown symbol '" + std::string(name) + "' in context " + ctx->describe());
  Poly p(ctx);
  Exponents e(ctx->size(), 0);
  e[*idx] = 1;
  p.terms_.emplace(std::move(e), Rational(1));
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 &&
          std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                      [](auto x) { return x == 0; }));
}

Rational Poly::constant_value() const {
  if (!is_constant()) throw ValidationError("expected a constant, got '" + str() + "'");
  return constant_term();
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Exponents(ctx_->size(), 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

unsigned Poly::total_degree() const {
  if (terms_.empty()) return 0;
  const auto& e = terms_.begin()->first;
  return std::accumulate(e.begin(), e.end(), 0u);
}

void Poly::check_same(const Poly& o, const char* op) const {
  if (!same_context(ctx_, o.ctx_))
    throw ContextMismatch(std::string("polynomial ") + op + ": context " + ctx_->describe() +
                          " vs " + o.ctx_->describe());
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  check_same(o, "add");
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_same(o, "sub");
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Poly& Poly::operator*=(const Poly& o) {
  check_same(o, "mul");
  Poly r(ctx_);
  Exponents e(ctx_->size());
  for (const auto& [ea, ca] : terms_)
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  terms_ = std::move(r.terms_);
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  a.check_same(b, "compare");
  return a.terms_ == b.terms_;
}

Poly Poly::evaluate(const std::map<std::string, Rational>& assignment) const {
  for (const auto& [name, v] : assignment)
    if (!ctx_->index_of(name))
      throw ValidationError("cannot assign unknown symbol '" + name + "' in context " + ctx_->describe());
  std::vector<std::string> kept;
  std::vector<std::size_t> kept_idx;
  std::vector<std::optional<Rational>> value(ctx_->size());
  for (std::size_t i = 0; i < ctx_->size(); ++i) {
    auto it = assignment.find(ctx_->name(i));
    if (it == assignment.end()) {
      kept.push_back(ctx_->name(i));
      kept_idx.push_back(i);
    } else {
      value[i] = it->second;
    }
  }
  ContextPtr out_ctx = kept.size() == ctx_->size() ? ctx_ : make_context(kept);
  Poly r(out_ctx);
  Exponents e(kept.size());
  for (const auto& [ea, c] : terms_) {
    Rational coef = c;
    for (std::size_t i = 0; i < ea.size(); ++i)
      if (value[i] && ea[i]) coef *= value[i]->pow(ea[i]);
    for (std::size_t j = 0; j < kept_idx.size(); ++j) e[j] = ea[kept_idx[j]];
    r.add_term(e, coef);
  }
  return r;
}

Poly Poly::lift(const ContextPtr& target) const {
  if (same_context(ctx_, target)) {
    Poly r(*this);
    r.ctx_ = target;
    return r;
  }
  std::vector<std::size_t> where(ctx_->size());
  for (std::size_t i = 0; i < ctx_->size(); ++i) {
    auto idx = target->index_of(ctx_->name(i));
    if (!idx)
      throw ContextMismatch("cannot lift from " + ctx_->describe() + " to " + target->describe());
    where[i] = *idx;
  }
  Poly r(target);
  for (const auto& [ea, c] : terms_) {
    Exponents e(target->size(), 0);
    for (std::size_t i = 0; i < ea.size(); ++i) e[where[i]] = ea[i];
    r.add_term(e, c);
  }
  return r;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += ctx_->name(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    Rational mag = c.sign() < 0 ? -c : c;
    if (first)
      out += c.sign() < 0 ? "-" : "";
    else
      out += c.sign() < 0 ? " - " : " + ";
    first = false;
    if (mono.empty())
      out += mag.str();
    else if (mag == Rational(1))
      out += mono;
    else
      out += mag.str() + "*" + mono;
  }
  return out;
}

// ---------------------------------------------------------------- parser

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const ContextPtr& ctx) : text_(text), ctx_(ctx) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc(ctx_);
    bool negate = false;
    if (eat('-'))
      negate = true;
    else
      eat('+');
    Poly t = term();
    acc += negate ? -t : t;
    while (true) {
      if (eat('+'))
        acc += term();
      else if (eat('-'))
        acc -= term();
      else
        break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = power();
    while (true) {
      if (eat('*')) {
        acc *= power();
      } else if (eat('/')) {
        Poly d = power();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        acc *= Rational(1) / d.constant_value();
      } else {
        break;
      }
    }
    return acc;
  }

  Poly power() {
    Poly base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      unsigned e = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
      Poly r(ctx_, Rational(1));
      for (unsigned i = 0; i < e; ++i) r *= base;
      return r;
    }
    return base;
  }

  Poly atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++pos_;
      return -power();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Poly(ctx_, Rational(mpq_class(mpz_class(std::string(text_.substr(start, pos_ - start)), 10))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      return Poly::variable(ctx_, text_.substr(start, pos_ - start));
    }
    fail("unexpected character");
  }

  std::string_view text_;
  const ContextPtr& ctx_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(std::string_view text, const ContextPtr& ctx) { return PolyParser(text, ctx).parse(); }

}  // namespace g2hom
