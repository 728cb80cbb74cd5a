#include <gtest/gtest.h>

#include "g2nil/catalog.hpp"
#include "g2nil/structure.hpp"

using namespace g2nil;
using Q = Rational;

namespace {

template <class T>
CriterionReport purely(const std::string& alg, const Matrix<T>& g) {
  auto L = catalog_algebra<T>(alg);
  return purely_exists(decompose(L, g), L, g);
}

Matrix<Q> fam(const std::string& alg, const std::string& p) { return family_metric<Q>(alg, parse_params<Q>(p)); }

}  // namespace

TEST(Decompose, H7Identity) {
  auto L = catalog_algebra<Q>("h7");
  auto D = decompose(L, Matrix<Q>::identity(7));
  EXPECT_EQ(D.derived_dim(), 1);
  EXPECT_EQ(D.r.cols(), 6);
  EXPECT_EQ(D.a_dim(), 0);
  ASSERT_EQ(D.j_mats.size(), 1u);
  // j(z) is skew for the identity metric
  EXPECT_EQ(D.j_mats[0].transpose(), -D.j_mats[0]);
}

TEST(Decompose, CenterSizes) {
  struct Row {
    const char* name;
    int k, p;
  };
  for (auto [name, k, p] : {Row{"h3+R4", 1, 4}, Row{"h5+R2", 1, 2}, Row{"n5_2+R2", 2, 2}, Row{"h3+h3+R", 2, 1},
                            Row{"h3C+R", 2, 1}, Row{"n6_2+R", 2, 1}, Row{"n7_2_A", 2, 0}, Row{"n7_2_B", 2, 0},
                            Row{"n6_3+R", 3, 1}, Row{"n7_3_A", 3, 0}, Row{"n7_3_D1", 3, 0}}) {
    auto L = catalog_algebra<Q>(name);
    auto D = decompose(L, Matrix<Q>::identity(7));
    EXPECT_EQ(D.derived_dim(), k) << name;
    EXPECT_EQ(D.a_dim(), p) << name;
  }
}

TEST(Decompose, RejectsNonTwoStep) {
  // [e1, e2] = -e6 and [e1, e6] = -e7: the derived algebra is not central
  std::array<std::string, 7> d{"0", "0", "0", "0", "0", "f12", "f16"};
  auto L = make_algebra<Q>(d, "three-step");
  EXPECT_THROW(decompose(L, Matrix<Q>::identity(7)), Unsupported);
}

TEST(Decompose, RejectsIndefiniteMetric) {
  auto L = catalog_algebra<Q>("h7");
  Matrix<Q> g = Matrix<Q>::identity(7);
  g(3, 3) = -1;
  EXPECT_THROW(decompose(L, g), NotPositiveDefinite);
}

TEST(Surd, ExactZeroTest) {
  Surd<Q> a{Q(3), Q(-1), Q(9)};  // 3 - sqrt 9
  EXPECT_TRUE(a.is_zero());
  Surd<Q> b{Q(3), Q(1), Q(9)};
  EXPECT_FALSE(b.is_zero());
  Surd<Q> c{Q(1), Q(-1), Q(2)};
  EXPECT_FALSE(c.is_zero());
  EXPECT_EQ(c.str(), "1 + -1*sqrt(2)");
  EXPECT_EQ(Surd<Q>({Q(1), Q(1), Q(4)}).str(), "3");
  EXPECT_TRUE(surd_equal(c * c, Surd<Q>{Q(3), Q(-2), Q(2)}));
}

TEST(Case1, H7Family) {
  EXPECT_FALSE(purely("h7", fam("h7", "r=1,s=1,t=1")).exists);
  auto rep = purely("h7", fam("h7", "r=1/2,s=1,t=1"));
  EXPECT_TRUE(rep.exists);
  EXPECT_EQ(rep.case_id, 1);
  ASSERT_EQ(rep.spectrum.size(), 3u);
  EXPECT_NEAR(rep.spectrum[0] + rep.spectrum[1] + rep.spectrum[2], 0.0, 1e-12);
  EXPECT_TRUE(purely("h7", fam("h7", "r=1,s=2,t=2")).exists);
}

TEST(Case1, H3R4NeverPurely) {
  auto rep = purely("h3+R4", fam("h3+R4", "r=3"));
  EXPECT_FALSE(rep.exists);
  ASSERT_EQ(rep.diagnostics.size(), 1u);
  EXPECT_EQ(rep.diagnostics[0].label, "tr^2(j(z)^2) = 4 tr(j(z)^4)");
  // j(z) has a single block of size 1/r: tr(j^2) = -2/r^2, tr(j^4) = 2/r^4
  EXPECT_EQ(rep.diagnostics[0].lhs_str, "4/81");
  EXPECT_EQ(rep.diagnostics[0].rhs_str, "8/81");
}

TEST(Case1, H5R2NeedsEqualBlocks) {
  EXPECT_TRUE(purely("h5+R2", fam("h5+R2", "r=2,s=2")).exists);
  EXPECT_FALSE(purely("h5+R2", fam("h5+R2", "r=1/2,s=1")).exists);
}

TEST(Case2, FamiliesExact) {
  EXPECT_TRUE(purely("n5_2+R2", fam("n5_2+R2", "E=1,G=1")).exists);
  EXPECT_FALSE(purely("n5_2+R2", fam("n5_2+R2", "E=1,G=2")).exists);
  EXPECT_TRUE(purely("h3C+R", fam("h3C+R", "r=1/4,s=1/9,E=1,F=0,G=49/25")).exists);
  EXPECT_TRUE(purely("h3C+R", fam("h3C+R", "r=1/4,s=1/9,E=1,F=0,G=25")).exists);
  EXPECT_FALSE(purely("h3C+R", fam("h3C+R", "r=1/4,s=1/9,E=1,F=0,G=1")).exists);
  EXPECT_TRUE(purely("h3+h3+R", fam("h3+h3+R", "a=3/5,b=4/5,E=1,F=-24/25,G=1")).exists);
  EXPECT_FALSE(purely("h3+h3+R", fam("h3+h3+R", "a=0,b=0,E=1,F=0,G=1")).exists);
  EXPECT_TRUE(purely("n6_2+R", fam("n6_2+R", "r=1/4,E=1,F=0,G=1")).exists);
  EXPECT_FALSE(purely("n6_2+R", fam("n6_2+R", "r=1,E=1,F=0,G=1")).exists);
}

TEST(Case2, SurdDiagnosticsWhenDetIsNotASquare) {
  // r = 1/2 makes det of the 4-plane metric a non-square
  auto rep = purely("n6_2+R", fam("n6_2+R", "r=1/2,E=1,F=0,G=1"));
  EXPECT_FALSE(rep.exists);
  bool saw_surd = false;
  for (auto& d : rep.diagnostics)
    saw_surd = saw_surd || (d.lhs_str + d.rhs_str).find("sqrt") != std::string::npos;
  EXPECT_TRUE(saw_surd);
  // the closed form predicts existence exactly at G = E r / (sqrt r + 1)^2 = 3 - 2 sqrt 2: not rational
}

TEST(Case2, NoCenterMeansNoCoclosed) {
  auto L = catalog_algebra<Q>("n7_2_A");
  auto g = Matrix<Q>::identity(7);
  auto D = decompose(L, g);
  EXPECT_FALSE(coclosed_exists(D).exists);
  auto rep = purely_exists(D, L, g);
  EXPECT_FALSE(rep.exists);
  EXPECT_FALSE(rep.coclosed_possible);
}

TEST(Case3, IdentityVerdicts) {
  for (auto name : {"n6_3+R", "n7_3_A", "n7_3_B", "n7_3_B1", "n7_3_D"})
    EXPECT_FALSE(purely(name, Matrix<Q>::identity(7)).exists) << name;
  for (auto name : {"n7_3_C", "n7_3_D1"}) {
    auto rep = purely(name, Matrix<Q>::identity(7));
    EXPECT_TRUE(rep.exists) << name;
    EXPECT_EQ(rep.rotation.size(), 3u) << name;
  }
}

TEST(Case3, ExactAndFloatAgree) {
  for (auto& e : catalog()) {
    if (e.derived_dim != 3) continue;
    auto q = purely(e.id, nilsoliton_metric<Q>(e.id));
    auto d = purely(e.id, nilsoliton_metric<double>(e.id));
    EXPECT_EQ(q.exists, d.exists) << e.id;
    EXPECT_EQ(q.exists, e.nilsoliton_purely_coclosed) << e.id;
  }
}

TEST(CoframeMatrices, N63IdentityIsHalfIdentity) {
  auto L = catalog_algebra<Q>("n6_3+R");
  auto m = coframe_matrices(L, Matrix<Q>::identity(7));
  Matrix<Q> half = Q(1, 2) * Matrix<Q>::identity(3);
  EXPECT_EQ(m.S_plus, half);
  EXPECT_EQ(m.S_minus, half);
  EXPECT_EQ(m.tr2_plus, Q(9, 4));
  EXPECT_EQ(m.twotr_plus, Q(3, 2));
}

TEST(CoframeMatrices, RejectsNonAdaptedCoframe) {
  auto L = catalog_algebra<Q>("n6_3+R");
  Matrix<Q> c = Matrix<Q>::identity(7);
  c(0, 4) = 1;  // e^1 no longer vanishes on n'
  EXPECT_THROW(coframe_matrices(L, c), Error);
}

TEST(Symmetrizer, AlreadySymmetricTraceFree) {
  Matrix<double> m = Matrix<double>::diag({1, -2, 1});
  auto s = symmetrize_M(m);
  EXPECT_EQ(s.P, Matrix<double>::identity(3));
}

TEST(Symmetrizer, RotatedDiagonal) {
  // M = R diag(1, 2, -3) with R a rotation: feasible
  double c = std::cos(0.7), s = std::sin(0.7);
  Matrix<double> r{{c, -s, 0}, {s, c, 0}, {0, 0, 1}};
  Matrix<double> m = r * Matrix<double>::diag({1, 2, -3});
  auto out = symmetrize_M(m);
  auto ptp = out.P.transpose() * out.P - Matrix<double>::identity(3);
  EXPECT_LT(ptp.max_abs(), 1e-12);
  EXPECT_LT((out.A - out.A.transpose()).max_abs(), 1e-9);
  EXPECT_LT(std::abs(out.A.trace()), 1e-9);
}

TEST(Symmetrizer, InfeasibleThrows) {
  EXPECT_THROW(symmetrize_M(Matrix<double>::diag({1, 1, 1})), Infeasible);
}

TEST(Case1Helpers, BalancingSigns) {
  auto s = balancing_signs({3, 2, 1});
  ASSERT_TRUE(s.has_value());
  EXPECT_EQ(3 * (*s)[0] + 2 * (*s)[1] + (*s)[2], 0);
  EXPECT_FALSE(balancing_signs({3, 1, 1}).has_value());
}
