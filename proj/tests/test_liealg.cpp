#include <doctest.h>

#include "g2hom/catalog.hpp"
#include "g2hom/liealg.hpp"
#include "oracles.hpp"

using namespace g2hom;

namespace {

QMatrix mat_mul(const QMatrix& a, const QMatrix& b) {
  QMatrix c(a.rows(), b.cols(), Rational(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j)
      for (std::size_t k = 0; k < a.cols(); ++k) c(i, j) = c(i, j) + a(i, k) * b(k, j);
  return c;
}

QMatrix commutator(const QMatrix& a, const QMatrix& b) {
  QMatrix x = mat_mul(a, b), y = mat_mul(b, a);
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j) x(i, j) = x(i, j) - y(i, j);
  return x;
}

/// Realified rational matrices of a bundled matrix case at its defaults.
std::vector<QMatrix> case_matrices(const CaseRecord& rec) {
  std::map<std::string, Rational> assign;
  for (const auto& [k, v] : rec.parameters) assign[k] = v;
  std::vector<QMatrix> out;
  for (const auto& [re, im] : rec.matrices) {
    QMatrix r(re.rows(), re.cols()), i(re.rows(), re.cols());
    for (std::size_t a = 0; a < re.rows(); ++a)
      for (std::size_t b = 0; b < re.cols(); ++b) {
        r(a, b) = re(a, b).evaluate(assign).constant_value();
        i(a, b) = rec.complex_field ? im(a, b).evaluate(assign).constant_value() : Rational(0);
      }
    out.push_back(rec.complex_field ? realify({r, i}) : r);
  }
  return out;
}

LieAlgebra so3() {
  LieAlgebra l(3, {"x", "y", "z"});
  l.add_constant(1, 2, 3, Poly(empty_context(), Rational(1)));
  l.add_constant(2, 3, 1, Poly(empty_context(), Rational(1)));
  l.add_constant(3, 1, 2, Poly(empty_context(), Rational(1)));
  return l;
}

}  // namespace

TEST_SUITE("liealg") {
  TEST_CASE("from_matrices on the first sl(3,R) case") {
    const CaseRecord& rec = bundled_case("T1.n1");
    auto m = case_matrices(rec);
    // Direct product of the 3x3 matrices: [e6,e7] = -2 e8.
    QMatrix c = commutator(m[5], m[6]);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) CHECK(c(i, j) == Rational(-2) * m[7](i, j));
    LieAlgebra l = LieAlgebra::from_matrices(m, rec.basis_names);
    Vector b = l.bracket_basis(6, 7);
    for (int k = 1; k <= 8; ++k) CHECK(b[k - 1].constant_value() == Rational(k == 8 ? -2 : 0));
  }

  TEST_CASE("Pauli-type so(3) relations [e_i,e_j] = 2 eps_ijk e_k") {
    std::vector<QMatrix> m(3, QMatrix(3, 3, Rational(0)));
    // 2 * (standard rotation generators)
    m[0](2, 1) = 2, m[0](1, 2) = -2;
    m[1](0, 2) = 2, m[1](2, 0) = -2;
    m[2](1, 0) = 2, m[2](0, 1) = -2;
    LieAlgebra l = LieAlgebra::from_matrices(m);
    CHECK(l.bracket_basis(1, 2)[2].constant_value() == Rational(2));
    CHECK(l.bracket_basis(2, 3)[0].constant_value() == Rational(2));
    CHECK(l.bracket_basis(3, 1)[1].constant_value() == Rational(2));
    CHECK(l.bracket_basis(2, 1)[2].constant_value() == Rational(-2));
    CHECK(jacobi_check(l).empty());
  }

  TEST_CASE("from_matrices edge cases") {
    LieAlgebra ab = LieAlgebra::from_matrices({QMatrix(1, 1, Rational(0))});
    CHECK(ab.dim() == 1);
    CHECK(ab.constants().empty());
    CHECK(jacobi_check(ab).empty());
    CHECK_THROWS_AS(LieAlgebra::from_matrices({}), ValidationError);
  }

  TEST_CASE("from_matrices rejects bad bases") {
    QMatrix a(2, 2, Rational(0)), b(2, 2, Rational(0));
    a(0, 1) = 1;
    b(0, 1) = 2;
    CHECK_THROWS_AS(LieAlgebra::from_matrices({a, b}), ValidationError);
    QMatrix e(2, 2, Rational(0)), f(2, 2, Rational(0));
    e(0, 1) = 1;
    f(1, 0) = 1;
    try {
      LieAlgebra::from_matrices({e, f});  // [e,f] = h is missing
      FAIL("expected ValidationError");
    } catch (const ValidationError& err) {
      CHECK(std::string(err.what()).find("commutator") != std::string::npos);
    }
  }

  TEST_CASE("jacobi_check") {
    CHECK(jacobi_check(so3()).empty());
    // [x,y] = y, [x,z] = z, [y,z] = x: [[x,y],z] + [[y,z],x] + [[z,x],y] = 2x.
    LieAlgebra broken(3, {"x", "y", "z"});
    broken.add_constant(1, 2, 2, Poly(empty_context(), Rational(1)));
    broken.add_constant(1, 3, 3, Poly(empty_context(), Rational(1)));
    broken.add_constant(2, 3, 1, Poly(empty_context(), Rational(1)));
    auto bad = jacobi_check(broken);
    REQUIRE(bad.size() == 1);
    CHECK(bad[0].i == 1);
    CHECK(bad[0].j == 2);
    CHECK(bad[0].k == 3);
    CHECK(bad[0].cyclic_sum[0].constant_value() == Rational(2));
    CHECK(jacobi_check(LieAlgebra(4, {"a", "b", "c", "d"})).empty());
  }

  TEST_CASE("matrix-born catalog algebras satisfy Jacobi and reproduce commutators") {
    for (const auto& id : bundled_case_ids()) {
      const CaseRecord& rec = bundled_case(id);
      if (rec.source != CaseSource::MatrixBasis) continue;
      CAPTURE(id);
      auto m = case_matrices(rec);
      LieAlgebra l = LieAlgebra::from_matrices(m, rec.basis_names);
      CHECK(jacobi_check(l).empty());
      // sum_k c^k_ij M_k == [M_i, M_j]
      for (int i = 1; i <= l.dim(); ++i)
        for (int j = i + 1; j <= l.dim(); ++j) {
          QMatrix c = commutator(m[i - 1], m[j - 1]);
          Vector b = l.bracket_basis(i, j);
          for (int k = 1; k <= l.dim(); ++k) {
            Rational ck = b[k - 1].constant_value();
            if (ck.is_zero()) continue;
            for (std::size_t r = 0; r < c.rows(); ++r)
              for (std::size_t s = 0; s < c.cols(); ++s) c(r, s) = c(r, s) - ck * m[k - 1](r, s);
          }
          CHECK(c == QMatrix(c.rows(), c.cols(), Rational(0)));
        }
    }
  }

  TEST_CASE("reductive_split round trip against matrix commutators") {
    for (const auto& id : bundled_case_ids()) {
      const CaseRecord& rec = bundled_case(id);
      if (rec.source != CaseSource::MatrixBasis) continue;
      CAPTURE(id);
      auto m = case_matrices(rec);
      HomogeneousSpaceData h = reductive_split(LieAlgebra::from_matrices(m, rec.basis_names), rec.h_indices, rec.m_indices);
      auto iso = h.rational_isotropy();
      REQUIRE(iso.size() == rec.h_indices.size());
      for (std::size_t a = 0; a < iso.size(); ++a)
        for (std::size_t j = 0; j < rec.m_indices.size(); ++j) {
          QMatrix c = commutator(m[rec.h_indices[a] - 1], m[rec.m_indices[j] - 1]);
          for (std::size_t i = 0; i < rec.m_indices.size(); ++i) {
            Rational x = iso[a](i, j);
            const QMatrix& mi = m[rec.m_indices[i] - 1];
            for (std::size_t r = 0; r < c.rows(); ++r)
              for (std::size_t s = 0; s < c.cols(); ++s) c(r, s) = c(r, s) - x * mi(r, s);
          }
          CHECK(c == QMatrix(c.rows(), c.cols(), Rational(0)));
        }
    }
  }

  TEST_CASE("reductive_split examples") {
    const CaseRecord& n1 = bundled_case("T1.n1");
    HomogeneousSpaceData h = instantiate(n1).base;
    REQUIRE(h.isotropy().size() == 1);
    QMatrix a = h.rational_isotropy()[0];
    // m0 + m1 + m2 + m3: the kernel of ad(e8)|_m is one-dimensional.
    std::vector<oracle::Row> rows;
    for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
    CHECK(oracle::kernel(rows, 7).size() == 1);

    LieAlgebra l = so3();
    HomogeneousSpaceData full = reductive_split(l, {}, {1, 2, 3});
    CHECK(full.isotropy().empty());
    CHECK(full.bracket_basis(1, 2)[2].constant_value() == Rational(1));

    HomogeneousSpaceData n4 = instantiate(bundled_case("T1.n4")).base;
    for (const auto& x : n4.rational_isotropy())
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(x(i, j).is_zero());  // [h, p] = 0 on the p-block
  }

  TEST_CASE("reductive_split errors carry a witness") {
    LieAlgebra l = so3();
    CHECK_THROWS_WITH_AS(reductive_split(l, {1, 2}, {3}), doctest::Contains("h is not a subalgebra"), ValidationError);
    // sl(2) with h = {e}: [e, h] = -2e leaves m = {h, f}.
    LieAlgebra sl2(3, {"h", "e", "f"});
    sl2.add_constant(1, 2, 2, Poly(empty_context(), Rational(2)));
    sl2.add_constant(1, 3, 3, Poly(empty_context(), Rational(-2)));
    sl2.add_constant(2, 3, 1, Poly(empty_context(), Rational(1)));
    REQUIRE(jacobi_check(sl2).empty());
    CHECK_THROWS_WITH_AS(reductive_split(sl2, {2}, {1, 3}), doctest::Contains("not reductive"), ValidationError);
    CHECK_NOTHROW(reductive_split(sl2, {1}, {2, 3}));
    CHECK_THROWS_AS(reductive_split(sl2, {1}, {2}), ValidationError);
  }

  TEST_CASE("homogeneous_from_partial") {
    CHECK(instantiate(bundled_case("T2.n3.a13")).base.partial());
    HomogeneousSpaceData flat = homogeneous_from_partial(6, {"e1", "e2", "e3", "e4", "e5", "e6"}, {}, {});
    CHECK(flat.brackets().empty());
    CHECK(flat.partial());
    std::vector<std::string> names{"x", "y", "z"};
    Vector v = Vector::basis(3, 3), w = Vector::basis(3, 3), minus_v = Vector::from_rationals({0, 0, -1});
    CHECK_NOTHROW(homogeneous_from_partial(3, names, {}, {{1, 2, v}, {2, 1, minus_v}}));
    // Only i < j given: the partner is implied.
    HomogeneousSpaceData one = homogeneous_from_partial(3, names, {}, {{1, 2, v}});
    CHECK(one.bracket_basis(2, 1) == minus_v);
    CHECK_THROWS_WITH_AS(homogeneous_from_partial(3, names, {}, {{1, 2, v}, {2, 1, w}}),
                         doctest::Contains("not antisymmetric"), ValidationError);
  }

  TEST_CASE("complex matrices are realified") {
    QMatrix re(1, 1, Rational(0)), im(1, 1, Rational(1));
    QMatrix r = realify({re, im});
    CHECK(r(0, 1) == Rational(-1));
    CHECK(r(1, 0) == Rational(1));
  }
}
