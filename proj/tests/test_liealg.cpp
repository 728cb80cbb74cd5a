#include <gtest/gtest.h>

#include <random>

#include "g2nil/catalog.hpp"
#include "g2nil/liealg.hpp"

using namespace g2nil;
using Q = Rational;

namespace {

std::vector<Q> basis(int n, int i) {
  std::vector<Q> v(n, Q(0));
  v[i] = Q(1);
  return v;
}

}  // namespace

TEST(LieAlgebra, BracketSignConvention) {
  // d f^7 = f^12  =>  [e1, e2] = -e7
  auto L = catalog_algebra<Q>("h3+R4");
  auto b = L.bracket(basis(7, 0), basis(7, 1));
  std::vector<Q> want(7, Q(0));
  want[6] = Q(-1);
  EXPECT_EQ(b, want);
  EXPECT_EQ(L.bracket(basis(7, 1), basis(7, 0))[6], Q(1));
}

TEST(LieAlgebra, DifferentialMatchesBracket) {
  // d alpha(x, y) = -alpha([x, y]) for every catalog algebra and basis pair
  for (auto& e : catalog()) {
    auto L = catalog_algebra<Q>(e.id);
    for (int k = 0; k < 7; ++k) {
      auto da = ce_diff(L, KForm<Q>::covector(basis(7, k)));
      for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j)
          EXPECT_EQ(da.coeff(std::vector<int>{i + 1, j + 1}), -L.bracket(basis(7, i), basis(7, j))[k]) << e.id;
    }
  }
}

TEST(LieAlgebra, DSquaredVanishesOnCatalog) {
  for (auto& e : catalog()) EXPECT_TRUE(d_squared_vanishes(catalog_algebra<Q>(e.id))) << e.id;
}

TEST(LieAlgebra, DSquaredFailsOnNonJacobi) {
  // d f^3 = f^12, d f^1 = f^23 is not a Lie algebra: d^2 f^3 = -f^2 ^ d f^1... nonzero
  std::vector<KForm<Q>> d(3, KForm<Q>(3, 2));
  d[2] = KForm<Q>::monomial(3, {1, 2});
  d[0] = KForm<Q>::monomial(3, {1, 3});
  EXPECT_FALSE(d_squared_vanishes(LieAlgebra<Q>(d, "bad")));
}

TEST(LieAlgebra, LeibnizRule) {
  auto L = catalog_algebra<Q>("n7_3_D1");
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> u(-3, 3);
  for (int t = 0; t < 50; ++t) {
    KForm<Q> a(7, 1), b(7, 2);
    for (Mask m : combinations(7, 1)) a.add(m, Q(u(rng)));
    for (Mask m : combinations(7, 2)) b.add(m, Q(u(rng)));
    // d(a ^ b) = da ^ b - a ^ db
    EXPECT_EQ(ce_diff(L, wedge(a, b)), wedge(ce_diff(L, a), b) - wedge(a, ce_diff(L, b)));
  }
}

TEST(LieAlgebra, DerivedAndCenter) {
  auto L = catalog_algebra<Q>("h3C+R");
  EXPECT_EQ(derived_algebra(L).cols(), 2);
  EXPECT_EQ(center(L).cols(), 3);  // e5, e6, e7
  EXPECT_TRUE(is_two_step(L));
  EXPECT_FALSE(is_abelian(L));
}

TEST(LieAlgebra, TwoStepRejectsThreeStep) {
  std::array<std::string, 7> d{"0", "0", "0", "0", "0", "f12", "f16"};
  EXPECT_FALSE(is_two_step(make_algebra<Q>(d, "filiform-like")));
}

TEST(LieAlgebra, RejectsBadShapes) {
  EXPECT_THROW(LieAlgebra<Q>(std::vector<KForm<Q>>{KForm<Q>(3, 2)}), DimensionMismatch);
  EXPECT_THROW(parse_form<Q>("f12", 7, 1), ParseError);
}

TEST(Ricci, HeisenbergClosedForm) {
  // h3 + R^4 with orthonormal basis: Rc = diag(-1/2, -1/2, 0, 0, 0, 0, 1/2)
  auto L = catalog_algebra<Q>("h3+R4");
  auto rc = ricci(L, Matrix<Q>::identity(7));
  EXPECT_EQ(rc, Matrix<Q>::diag({Q(-1, 2), Q(-1, 2), 0, 0, 0, 0, Q(1, 2)}));
}

TEST(Ricci, ScalesWithMetric) {
  // scaling g by c scales the Ricci endomorphism by 1/c
  auto L = catalog_algebra<Q>("n7_3_B");
  auto g = nilsoliton_metric<Q>("n7_3_B");
  EXPECT_EQ(ricci(L, Q(3) * g), Q(1, 3) * ricci(L, g));
}

TEST(Nilsoliton, CatalogMetricsPassExactly) {
  for (auto& e : catalog()) {
    auto r = is_nilsoliton(catalog_algebra<Q>(e.id), nilsoliton_metric<Q>(e.id));
    EXPECT_TRUE(r.verdict) << e.id;
    EXPECT_LT(r.lambda, Q(0)) << e.id;
  }
}

TEST(Nilsoliton, SolitonConstants) {
  EXPECT_EQ(is_nilsoliton(catalog_algebra<Q>("n7_2_A"), nilsoliton_metric<Q>("n7_2_A")).lambda, Q(-7, 2));
  EXPECT_EQ(is_nilsoliton(catalog_algebra<Q>("n7_2_B"), nilsoliton_metric<Q>("n7_2_B")).lambda, Q(-4));
}

TEST(Nilsoliton, RejectsNonSoliton) {
  EXPECT_FALSE(is_nilsoliton(catalog_algebra<Q>("n7_3_B"), Matrix<Q>::identity(7)).verdict);
  EXPECT_FALSE(is_nilsoliton(catalog_algebra<Q>("n7_2_A"), Matrix<Q>::identity(7)).verdict);
  auto g = family_metric<Q>("h5+R2", parse_params<Q>("r=1,s=2"));
  EXPECT_FALSE(is_nilsoliton(catalog_algebra<Q>("h5+R2"), g).verdict);
}

TEST(Nilsoliton, FloatAgrees) {
  for (auto& e : catalog())
    EXPECT_TRUE(is_nilsoliton(catalog_algebra<double>(e.id), nilsoliton_metric<double>(e.id)).verdict) << e.id;
}

TEST(Subalgebra, DerivedIdealIsAbelian) {
  auto L = catalog_algebra<Q>("h7");
  Matrix<Q> f(7, 3);
  f(0, 0) = f(1, 1) = f(6, 2) = Q(1);  // <e1, e2, e7> = h3
  auto h3 = subalgebra(L, f);
  EXPECT_EQ(h3.dim(), 3);
  EXPECT_TRUE(d_squared_vanishes(h3));
  EXPECT_EQ(derived_algebra(h3).cols(), 1);
  Matrix<Q> bad(7, 2);
  bad(0, 0) = bad(1, 1) = Q(1);
  EXPECT_THROW(subalgebra(L, bad), Error);
}
