#include <cmath>

#include <gtest/gtest.h>

#include "kw4/jet.hpp"
#include "kw4/random.hpp"
#include "support.hpp"

using namespace kw4;
using kw4::test::central;

namespace {

Jet1<double> affine(const Vector4<double>& c, double v) {
  Jet1<double> j = Jet1<double>::constant(v);
  for (int i = 0; i < kDim; ++i) j += c[i] * Jet1<double>::coordinate(i);
  return j;
}

double affine_at(const Vector4<double>& c, double v, const Vector4<double>& x) {
  double s = v;
  for (int i = 0; i < kDim; ++i) s += c[i] * x[i];
  return s;
}

}  // namespace

TEST(Jet, CoordinateHasUnitPartial) {
  const Jet1<double> x2 = Jet1<double>::coordinate(2);
  EXPECT_EQ(x2.value, 0.0);
  for (int i = 0; i < kDim; ++i) EXPECT_EQ(x2.partials[i], i == 2 ? 1.0 : 0.0);
}

TEST(Jet, ProductAndQuotientMatchFiniteDifferences) {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector4<double> a = rng.vector<double>(), b = rng.vector<double>(), c = rng.vector<double>();
    const double va = rng.uniform(), vb = rng.uniform(), vc = 2.0 + rng.unit();
    const Jet1<double> j = jet_mul(jet_mul(affine(a, va), affine(b, vb)), jet_inv(affine(c, vc)));
    const auto f = [&](const Vector4<double>& x) {
      return affine_at(a, va, x) * affine_at(b, vb, x) / affine_at(c, vc, x);
    };
    EXPECT_NEAR(j.value, f({}), 1e-15);
    for (int i = 0; i < kDim; ++i) EXPECT_NEAR(j.partials[i], central(f, i), 1e-8);
  }
}

TEST(Jet, ExpScaleMatchesFiniteDifferences) {
  const Vector4<double> df{0.3, -0.2, 0.5, 0.1};
  const Jet1<double> j = jet_exp_scale(0.4, df, 2.0);
  const auto f = [&](const Vector4<double>& x) { return std::exp(2.0 * affine_at(df, 0.4, x)); };
  EXPECT_NEAR(j.value, f({}), 1e-15);
  for (int i = 0; i < kDim; ++i) EXPECT_NEAR(j.partials[i], central(f, i), 1e-8);
}

TEST(Jet, InverseOfTinyValueThrows) {
  EXPECT_THROW(jet_inv(Jet1<double>::constant(1e-15)), SingularValue);
  EXPECT_NO_THROW(jet_inv(Jet1<double>::constant(1e-13)));
}

TEST(Jet, TruncationDropsPartials) {
  const Jet1<double> j = Jet1<double>::constant(2.0) + 3.0 * Jet1<double>::coordinate(1);
  const Jet1<double> t = j.truncated();
  EXPECT_EQ(t.value, 2.0);
  EXPECT_EQ(max_abs(t.partials), 0.0);
}

TEST(Jet, MatrixInverseMatchesFiniteDifferences) {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix4<double> m0 = rng.matrix<double>();
    for (int i = 0; i < kDim; ++i) m0[i][i] += 4.0;
    std::array<Matrix4<double>, kDim> m1{};
    for (auto& s : m1) s = rng.matrix<double>();
    const JetMatrix<double> inv = jet_matrix_inverse(assemble_jet_matrix(m0, m1));
    for (int r = 0; r < kDim; ++r)
      for (int c = 0; c < kDim; ++c) {
        const auto f = [&](const Vector4<double>& x) {
          Matrix4<double> m = m0;
          for (int k = 0; k < kDim; ++k) m = m + scale(x[k], m1[k]);
          return inverse(m)[r][c];
        };
        EXPECT_NEAR(inv[r][c].value, f({}), 1e-13);
        for (int k = 0; k < kDim; ++k) EXPECT_NEAR(inv[r][c].partials[k], central(f, k), 1e-7);
      }
  }
}

TEST(Jet, SingularMatrixThrows) {
  JetMatrix<double> z{};
  EXPECT_THROW(jet_matrix_inverse(z), SingularMetric);
}

TEST(Jet, ComplexEmbeddingIsBitIdentical) {
  Rng rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector4<double> a = rng.vector<double>(), b = rng.vector<double>();
    const double va = rng.uniform(), vb = 1.5 + rng.unit();
    const Jet1<double> r = jet_mul(affine(a, va), jet_inv(affine(b, vb)));
    Jet1<Complex> ca = Jet1<Complex>::constant(va), cb = Jet1<Complex>::constant(vb);
    for (int i = 0; i < kDim; ++i) {
      ca.partials[i] = a[i];
      cb.partials[i] = b[i];
    }
    const Jet1<Complex> c = jet_mul(ca, jet_inv(cb));
    EXPECT_EQ(c.value.re, r.value);
    EXPECT_EQ(c.value.im, 0.0);
    for (int i = 0; i < kDim; ++i) EXPECT_EQ(c.partials[i].re, r.partials[i]);
  }
}
