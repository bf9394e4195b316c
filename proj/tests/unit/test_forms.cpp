#include <gtest/gtest.h>

#include "kw4/forms.hpp"
#include "support.hpp"

using namespace kw4;

namespace {

PForm<double> e(std::initializer_list<int> idx) { return PForm<double>::basis(idx, JetOrder::Value); }

template <Scalar S>
PForm<S> random_form(int p, Rng& rng, JetOrder order = JetOrder::Value) {
  PForm<S> a(p, order);
  for (unsigned m : basis_masks(p)) {
    Jet1<S> c = Jet1<S>::constant(rng.draw<S>());
    if (order == JetOrder::First)
      for (auto& d : c.partials) d = rng.draw<S>();
    a.set(m, c);
  }
  return a;
}

}  // namespace

TEST(Forms, BasisCarriesPermutationSign) {
  EXPECT_EQ(e({2, 0})[0b0101].value, -1.0);
  EXPECT_EQ(e({1, 0, 2})[0b0111].value, -1.0);
  EXPECT_EQ(e({2, 0, 1})[0b0111].value, 1.0);
  EXPECT_EQ(max_abs_diff(e({1, 1}), PForm<double>(2, JetOrder::Value)), 0.0);
}

TEST(Forms, ComponentReordersIndices) {
  const PForm<double> a = 3.0 * e({0, 2});
  EXPECT_EQ(a.component({2, 0}).value, -3.0);
  EXPECT_EQ(a.component({0, 0}).value, 0.0);
  EXPECT_THROW(a.component({0}), DegreeMismatch);
}

TEST(Forms, WedgeIsGradedCommutative) {
  Rng rng(3);
  for (int p = 0; p <= 4; ++p)
    for (int q = 0; p + q <= 4; ++q) {
      const PForm<double> a = random_form<double>(p, rng), b = random_form<double>(q, rng);
      const double sign = (p * q) % 2 ? -1.0 : 1.0;
      EXPECT_LT(max_abs_diff(wedge(a, b), sign * wedge(b, a)), 1e-14);
    }
}

TEST(Forms, WedgeIsAssociativeAndChecksDegree) {
  EXPECT_EQ(max_abs_diff(wedge(e({0}), wedge(e({1}), e({2}))), e({0, 1, 2})), 0.0);
  EXPECT_EQ(max_abs_diff(wedge(e({1}), e({0})), -1.0 * e({0, 1})), 0.0);
  EXPECT_THROW(wedge(e({0, 1, 2}), e({0, 3})), DegreeOverflow);
}

TEST(Forms, WedgeFollowsLeibnizOnJets) {
  PForm<double> a(1, JetOrder::First);
  a.set(0b0001, Jet1<double>::coordinate(2));
  PForm<double> b(1, JetOrder::First);
  b.set(0b0010, Jet1<double>::constant(2.0) + Jet1<double>::coordinate(3));
  const PForm<double> w = wedge(a, b);
  EXPECT_EQ(w[0b0011].value, 0.0);
  EXPECT_EQ(w[0b0011].partials[2], 2.0);
  EXPECT_EQ(w[0b0011].partials[3], 0.0);
}

TEST(Forms, StarTableOfFlatParaModelIsExact) {
  const Model<double> m = standard_model(StructureKind::Para, Signature::Neutral);
  const VolumeElement<double> mu = kahler_volume(m);
  EXPECT_EQ(mu.density.value, -1.0);
  const auto star = [&](const PForm<double>& a) { return hodge_star(a, m.metric, mu); };
  EXPECT_EQ(max_abs_diff(star(e({0, 2})), -1.0 * e({1, 3})), 0.0);
  EXPECT_EQ(max_abs_diff(star(e({1, 3})), -1.0 * e({0, 2})), 0.0);
  EXPECT_EQ(max_abs_diff(star(e({0, 1, 2})), -1.0 * e({1})), 0.0);
  EXPECT_EQ(max_abs_diff(star(e({0, 1, 3})), e({0})), 0.0);
  EXPECT_EQ(max_abs_diff(star(e({0, 2, 3})), -1.0 * e({3})), 0.0);
  EXPECT_EQ(max_abs_diff(star(e({1, 2, 3})), e({2})), 0.0);
}

TEST(Forms, FlippedOrientationNegatesStar) {
  const Model<double> m = standard_model(StructureKind::Para, Signature::Neutral);
  const VolumeElement<double> mu = kahler_volume(m, true);
  EXPECT_EQ(mu.density.value, 1.0);
  EXPECT_EQ(max_abs_diff(hodge_star(e({0, 2}), m.metric, mu), e({1, 3})), 0.0);
}

TEST(Forms, DoubleStarSignSweep) {
  for (const auto& kc : test::kAllKinds) {
    for (std::uint64_t t = 0; t < 30; ++t) {
      const Model<double> m = test::draw_model<double>(kc.kind, kc.signature, 21, t);
      const VolumeElement<double> mu = kahler_volume(m);
      const double det_sign = determinant(m.metric.g0) > 0 ? 1.0 : -1.0;
      Rng rng = Rng::for_trial(99, t);
      for (int p = 0; p <= 4; ++p) {
        const PForm<double> a = random_form<double>(p, rng);
        const PForm<double> ss = hodge_star(hodge_star(a, m.metric, mu), m.metric, mu);
        const double sign = ((p * (4 - p)) % 2 ? -1.0 : 1.0) * det_sign;
        EXPECT_LT(max_abs_diff(ss, sign * a), 1e-9) << "p=" << p << " trial " << t;
      }
    }
  }
}

TEST(Forms, WedgeWithStarGivesInnerProductTimesVolume) {
  for (const auto& kc : test::kAllKinds) {
    for (std::uint64_t t = 0; t < 30; ++t) {
      const Model<double> m = test::draw_model<double>(kc.kind, kc.signature, 8, t);
      const VolumeElement<double> mu = kahler_volume(m);
      Rng rng = Rng::for_trial(17, t);
      for (int p = 0; p <= 4; ++p) {
        const PForm<double> a = random_form<double>(p, rng), b = random_form<double>(p, rng);
        const double lhs = wedge(a, hodge_star(b, m.metric, mu))[0b1111].value;
        const double rhs = form_inner(a, b, m.metric).value * mu.density.value;
        EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
}

TEST(Forms, InnerProductRejectsMixedDegrees) {
  const Model<double> m = standard_model(StructureKind::Para, Signature::Neutral);
  EXPECT_THROW(form_inner(e({0}), e({0, 1}), m.metric), DegreeMismatch);
}

TEST(Forms, ExteriorDerivativeOfCoordinateForm) {
  PForm<double> a(1, JetOrder::First);
  a.set(0b0001, Jet1<double>::coordinate(1));  // x^2 dx^1
  const PForm<double> d = exterior_derivative(a);
  EXPECT_EQ(d.order(), JetOrder::Value);
  EXPECT_EQ(max_abs_diff(d, -1.0 * e({0, 1})), 0.0);
  EXPECT_THROW(exterior_derivative(d), OrderExhausted);
  EXPECT_THROW(exterior_derivative(PForm<double>(4, JetOrder::First)), DegreeOverflow);
}

TEST(Forms, ExteriorDerivativeOfExactOneFormVanishes) {
  // d(df) = 0 for f = x^1 x^3 + 2 x^2 x^4: df has symmetric first partials.
  PForm<double> df(1, JetOrder::First);
  df.set(0b0001, Jet1<double>::coordinate(2));
  df.set(0b0100, Jet1<double>::coordinate(0));
  df.set(0b0010, 2.0 * Jet1<double>::coordinate(3));
  df.set(0b1000, 2.0 * Jet1<double>::coordinate(1));
  EXPECT_EQ(max_abs_diff(exterior_derivative(df), PForm<double>(2, JetOrder::Value)), 0.0);
}

TEST(Forms, ConformalExampleStarAndCodifferential) {
  Rng rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = test::draw_f(rng);
    const Model<double> m = example_model(f);
    const PForm<double> omega = kahler_form(m);
    const VolumeElement<double> mu = kahler_volume(m);
    const PForm<double> star = hodge_star(omega, m.metric, mu);
    EXPECT_LT(max_abs_diff(star, -omega), 1e-14);
    // -Omega = dx1^dx3 + e^{2f} dx2^dx4 to first order.
    EXPECT_EQ(star[0b0101].value, 1.0);
    EXPECT_NEAR(star[0b1010].value, 1.0, 1e-15);
    for (int i = 0; i < kDim; ++i) EXPECT_NEAR(star[0b1010].partials[i], 2.0 * f[i], 1e-14);

    const PForm<double> dstar = exterior_derivative(star);
    const PForm<double> want = 2.0 * f[0] * e({0, 1, 3}) - 2.0 * f[2] * e({1, 2, 3});
    EXPECT_LT(max_abs_diff(dstar, want), 1e-14);

    const PForm<double> delta = codifferential_2form(omega, m.metric, mu);
    const PForm<double> want_delta = -2.0 * f[0] * e({0}) + 2.0 * f[2] * e({2});
    EXPECT_LT(max_abs_diff(delta, want_delta), 1e-14);
  }
}

TEST(Forms, VolumeFromDegenerateKahlerFormThrows) {
  EXPECT_THROW(volume_from_kahler(e({0, 1})), SingularMetric);
  EXPECT_THROW(volume_from_kahler(e({0})), DegreeMismatch);
}
