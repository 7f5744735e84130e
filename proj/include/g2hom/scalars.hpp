#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "g2hom/errors.hpp"

namespace g2hom {

/// Exact rational number, always in lowest terms with positive denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(long num, long den);
  explicit Rational(mpq_class value);

  /// Accepts "p", "-p", "p/q" with optional surrounding blanks.
  static Rational parse(std::string_view text);

  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }
  bool is_integer() const { return value_.get_den() == 1; }
  const mpq_class& raw() const { return value_; }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rational pow(unsigned exponent) const;

  /// "p/q", with "/q" omitted when q == 1.
  std::string str() const;

 private:
  mpq_class value_;
};

/// Ordered list of parameter symbols shared by a family of polynomials.
class SymbolContext {
 public:
  explicit SymbolContext(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::string describe() const;

  friend bool operator==(const SymbolContext& a, const SymbolContext& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
};

using ContextPtr = std::shared_ptr<const SymbolContext>;

ContextPtr make_context(std::vector<std::string> names);
/// The shared context with no symbols, used for purely rational data.
const ContextPtr& empty_context();
bool same_context(const ContextPtr& a, const ContextPtr& b);
/// Symbols of `a` followed by those of `b` not already present.
ContextPtr merge_contexts(const ContextPtr& a, const ContextPtr& b);

using Exponents = std::vector<std::uint32_t>;

/// Graded-lexicographic order, largest monomial first.
struct GradedLexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Multivariate polynomial with rational coefficients over a SymbolContext.
/// Canonical: no zero coefficients, so equal polynomials have equal term maps.
class Poly {
 public:
  using TermMap = std::map<Exponents, Rational, GradedLexGreater>;

  Poly() : Poly(empty_context()) {}
  explicit Poly(ContextPtr ctx);
  Poly(ContextPtr ctx, const Rational& constant);

  static Poly variable(const ContextPtr& ctx, std::string_view name);
  static Poly parse(std::string_view text, const ContextPtr& ctx);

  const ContextPtr& context() const { return ctx_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Value of a constant polynomial; throws ValidationError otherwise.
  Rational constant_value() const;
  /// Coefficient of the monomial with all exponents zero.
  Rational constant_term() const;
  unsigned total_degree() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Poly& b) { return a *= b; }
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  /// Structural equality; contexts must agree.
  friend bool operator==(const Poly& a, const Poly& b);

  /// Substitutes the assigned symbols; the result lives in the context of the
  /// remaining symbols (in original order).
  Poly evaluate(const std::map<std::string, Rational>& assignment) const;
  /// Same polynomial re-expressed in a context containing all of its symbols.
  Poly lift(const ContextPtr& target) const;

  /// e.g. "6*b - 2", "-6*a4^3", "3/2*x*y^2"; zero renders as "0".
  std::string str() const;

 private:
  void check_same(const Poly& o, const char* op) const;
  void add_term(const Exponents& e, const Rational& c);

  ContextPtr ctx_;
  TermMap terms_;
};

}  // namespace g2hom
