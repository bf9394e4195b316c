#include <gtest/gtest.h>

#include "kw4/weyl.hpp"
#include "support.hpp"

using namespace kw4;

namespace {

// (nabla_{d_i} g)(d_j, d_k) at the origin.
template <Scalar S>
Tensor3<S> covariant_metric_derivative(const Model<S>& m, const Connection<S>& c) {
  const Matrix4<S>& g = m.metric.g0;
  Tensor3<S> r{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) {
        S v = m.metric.g1[i][j][k];
        for (int l = 0; l < kDim; ++l) v -= c.gamma[i][j][l] * g[l][k] + c.gamma[i][k][l] * g[j][l];
        r[i][j][k] = v;
      }
  return r;
}

double gamma_scale(const Model<double>& m) { return std::max(1.0, max_abs(m.metric.g1)); }

}  // namespace

TEST(Weyl, FlatModelsHaveZeroEverything) {
  for (const auto& kc : test::kAllKinds) {
    const Model<double> m = standard_model(kc.kind, kc.signature);
    EXPECT_EQ(max_abs(levi_civita(m).gamma), 0.0);
    const KwReport<double> r = verify_kw(m);
    EXPECT_EQ(max_abs(r.phi.phi), 0.0);
    EXPECT_LT(r.residual, 1e-14);
    EXPECT_TRUE(r.pass);
  }
}

TEST(Weyl, ZeroConnectionGivesZeroNablaJ) {
  EXPECT_EQ(max_abs(nabla_J(Connection<double>{}, standard_para_structure<double>()).value), 0.0);
}

TEST(Weyl, ConformalExampleGoldenValues) {
  Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = test::draw_f(rng);
    const auto [f1, f2, f3, f4] = f;
    const Model<double> m = example_model(f);
    const Connection<double> lc = levi_civita(m);
    // nabla_{d2} d4 = nabla_{d4} d2 = -f1 d3 - f3 d1; nabla_{d4} d4 = 2 f4 d4.
    for (int k = 0; k < kDim; ++k) {
      const double d24 = k == 2 ? -f1 : k == 0 ? -f3 : 0.0;
      EXPECT_NEAR(lc.gamma[1][3][k], d24, 1e-15);
      EXPECT_NEAR(lc.gamma[3][1][k], d24, 1e-15);
      EXPECT_NEAR(lc.gamma[3][3][k], k == 3 ? 2.0 * f4 : 0.0, 1e-15);
    }
    // (nabla_{d2} J) d3 = -2 f3 d2.
    const NablaJ<double> lcj = nabla_J(lc, m.structure);
    for (int k = 0; k < kDim; ++k) EXPECT_NEAR(lcj.value[1][2][k], k == 1 ? -2.0 * f3 : 0.0, 1e-15);

    const LeeForm<double> lf = lee_form(m);
    EXPECT_NEAR(lf.phi[0], -f1, 1e-15);
    EXPECT_NEAR(lf.phi[1], 0.0, 1e-15);
    EXPECT_NEAR(lf.phi[2], -f3, 1e-15);
    EXPECT_NEAR(lf.phi[3], 0.0, 1e-15);
    EXPECT_NEAR(lf.phi_sharp[0], -f3, 1e-15);
    EXPECT_NEAR(lf.phi_sharp[2], -f1, 1e-15);

    // Theta_{24} = f1 d3 + f3 d1.
    const Connection<double> w = weyl_connection(m, lf);
    EXPECT_NEAR(w.gamma[1][3][2] - lc.gamma[1][3][2], f1, 1e-15);
    EXPECT_NEAR(w.gamma[1][3][0] - lc.gamma[1][3][0], f3, 1e-15);

    const KwReport<double> r = verify_kw(m);
    EXPECT_LT(r.residual, 1e-12);
    (void)f2;
  }
}

TEST(Weyl, LeviCivitaIsTorsionFreeAndMetric) {
  for (const auto& kc : test::kAllKinds)
    for (std::uint64_t t = 0; t < 100; ++t) {
      const Model<double> m = test::draw_model<double>(kc.kind, kc.signature, 55, t);
      const Connection<double> lc = levi_civita(m);
      for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) EXPECT_EQ(lc.gamma[i][j], lc.gamma[j][i]);
      EXPECT_LT(max_abs(covariant_metric_derivative(m, lc)), 1e-10 * gamma_scale(m));
    }
}

TEST(Weyl, WeylConditionHolds) {
  for (const auto& kc : test::kAllKinds)
    for (std::uint64_t t = 0; t < 100; ++t) {
      const Model<double> m = test::draw_model<double>(kc.kind, kc.signature, 56, t);
      const LeeForm<double> lf = lee_form(m);
      const Tensor3<double> ng = covariant_metric_derivative(m, weyl_connection(m, lf));
      Tensor3<double> want{};
      for (int i = 0; i < kDim; ++i) want[i] = scale(-2.0 * lf.phi[i], m.metric.g0);
      EXPECT_LT(max_abs_diff(ng, want), 1e-10);
    }
}

TEST(Weyl, ExistenceOnRandomModels) {
  for (const auto& kc : test::kAllKinds)
    for (std::uint64_t t = 0; t < 300; ++t) {
      const Model<double> m = test::draw_model<double>(kc.kind, kc.signature, 42, t);
      const KwReport<double> r = verify_kw(m);
      EXPECT_TRUE(r.pass) << to_string(kc.kind) << " trial " << t << " residual " << r.residual;
    }
}

TEST(Weyl, ExistenceWithComplexScalars) {
  for (const auto& kc : test::kAllKinds)
    for (std::uint64_t t = 0; t < 100; ++t) {
      const Model<Complex> m = test::draw_model<Complex>(kc.kind, kc.signature, 43, t);
      EXPECT_TRUE(verify_kw(m).pass) << to_string(kc.kind) << " trial " << t;
    }
}

TEST(Weyl, OrientationFlipDoesNotChangeLeeForm) {
  for (std::uint64_t t = 0; t < 20; ++t) {
    const Model<double> m = test::draw_model<double>(StructureKind::Para, Signature::Neutral, 7, t);
    EXPECT_LT(max_abs_diff(lee_form(m, true).phi, lee_form(m, false).phi), 1e-12);
  }
}

TEST(Weyl, GaugeCovariance) {
  for (const auto& kc : test::kAllKinds)
    for (std::uint64_t t = 0; t < 100; ++t) {
      const Model<double> m = test::draw_model<double>(kc.kind, kc.signature, 60, t);
      Rng rng = Rng::for_trial(61, t);
      const double f0 = rng.uniform();
      const Vector4<double> df = rng.vector<double>();
      const Model<double> s = conformal_rescale(m, f0, df);
      const LeeForm<double> a = lee_form(m), b = lee_form(s);
      for (int i = 0; i < kDim; ++i) EXPECT_NEAR(b.phi[i], a.phi[i] - df[i], 1e-9);
      EXPECT_LT(max_abs_diff(weyl_connection(s, b).gamma, weyl_connection(m, a).gamma), 1e-9);
    }
}

TEST(Weyl, EquivarianceUnderGroupAction) {
  for (const auto& kc : test::kAllKinds)
    for (std::uint64_t t = 0; t < 100; ++t) {
      const Model<double> m = test::draw_model<double>(kc.kind, kc.signature, 70, t);
      Rng rng = Rng::for_trial(71, t);
      const Matrix4<double> A = random_transform<double>(rng, 10.0);
      const double cond = condition_number(A);
      const double before = verify_kw(m).residual;
      const double after = verify_kw(gl4_action(A, m)).residual;
      // Both residuals are roundoff; the conjugated model is worse conditioned,
      // so the additive floor is 1e-8 rather than 1e-9.
      EXPECT_LE(after, cond * cond * cond * before + 1e-8);
      EXPECT_EQ(after <= 1e-7, before <= 1e-7);
    }
}

TEST(Weyl, UniquenessRankOnCanonicalModels) {
  EXPECT_EQ(uniqueness_rank(standard_model(StructureKind::Para, Signature::Neutral)), 4);
  EXPECT_EQ(uniqueness_rank(standard_model(StructureKind::Complex, Signature::Definite)), 4);
  EXPECT_EQ(uniqueness_rank(standard_model(StructureKind::Complex, Signature::Neutral)), 4);
}

TEST(Weyl, UniquenessRankOnConjugatedModels) {
  for (const auto& kc : test::kAllKinds)
    for (std::uint64_t t = 0; t < 100; ++t) {
      const Model<double> m = test::draw_model<double>(kc.kind, kc.signature, 80, t);
      Rng rng = Rng::for_trial(81, t);
      EXPECT_EQ(uniqueness_rank(gl4_action(random_transform<double>(rng, 10.0), m)), 4);
    }
}

TEST(Weyl, UniquenessMatrixHasNoZeroColumn) {
  const std::vector<double> L = uniqueness_matrix(standard_model(StructureKind::Para, Signature::Neutral));
  ASSERT_EQ(L.size(), 256u);
  for (int a = 0; a < kDim; ++a) {
    double col = 0.0;
    for (int r = 0; r < 64; ++r) col = std::max(col, std::abs(L[static_cast<std::size_t>(r) * 4 + a]));
    EXPECT_GT(col, 0.5);
  }
}

TEST(Weyl, LinearizationVanishesOnSpanningSet) {
  const Model<double> base = standard_model(StructureKind::Para, Signature::Neutral);
  const auto basis = anti_invariant_spanning_set();
  for (const auto& eps : basis) EXPECT_LT(max_abs(pullback(eps, base.J()) + eps), 1e-15);
  EXPECT_LT(linearization_map(base, basis).max_entry(), 1e-10);
}

TEST(Weyl, LinearizationRejectsInvariantPerturbation) {
  const Model<double> base = standard_model(StructureKind::Para, Signature::Neutral);
  EXPECT_THROW(linearization_map(base, {symmetric_product(0, 1)}), InvalidModel);
}

TEST(Weyl, LinearizationIsAdditive) {
  const Model<double> base = standard_model(StructureKind::Para, Signature::Neutral);
  Rng rng(90);
  for (int t = 0; t < 100; ++t) {
    Tensor3<double> a{}, b{}, ab{};
    for (int i = 0; i < kDim; ++i) {
      a[i] = project_tensor(rng.symmetric_matrix<double>(), base.structure);
      b[i] = project_tensor(rng.symmetric_matrix<double>(), base.structure);
      ab[i] = a[i] + b[i];
    }
    const Tensor3<double> ea = linearization_value(base, a), eb = linearization_value(base, b);
    const Tensor3<double> eab = linearization_value(base, ab);
    Tensor3<double> sum{};
    for (int i = 0; i < kDim; ++i) sum[i] = ea[i] + eb[i];
    EXPECT_LT(max_abs_diff(eab, sum), 1e-10);
    EXPECT_LT(max_abs(eab), 1e-10);
  }
}

TEST(Weyl, OracleOnFlatModel) {
  const FdOracleResult<double> o = fd_oracle(standard_model(StructureKind::Para, Signature::Neutral));
  EXPECT_LT(max_abs(o.phi), 1e-12);
  EXPECT_LT(max_abs(o.gamma), 1e-12);
  EXPECT_LT(max_abs(o.nabla_j), 1e-12);
}

TEST(Weyl, OracleOnConformalExample) {
  const std::array<double, 4> f{0.3, -0.1, 0.7, 0.2};
  const FdOracleResult<double> o = fd_oracle(example_model(f), 1e-4);
  EXPECT_NEAR(o.phi[0], -0.3, 1e-8);
  EXPECT_NEAR(o.phi[1], 0.0, 1e-8);
  EXPECT_NEAR(o.phi[2], -0.7, 1e-8);
  EXPECT_NEAR(o.phi[3], 0.0, 1e-8);
}

TEST(Weyl, OracleAgreesWithJetEngine) {
  for (const auto& kc : test::kAllKinds)
    for (std::uint64_t t = 0; t < 50; ++t) {
      const Model<double> m = test::draw_model<double>(kc.kind, kc.signature, 100, t);
      const FdOracleResult<double> o = fd_oracle(m);
      const LeeForm<double> lf = lee_form(m);
      const Connection<double> lc = levi_civita(m);
      const Connection<double> w = weyl_connection(m, lf);
      EXPECT_LT(max_abs_diff(o.phi, lf.phi), 1e-6);
      EXPECT_LT(max_abs_diff(o.gamma, lc.gamma), 1e-6);
      EXPECT_LT(max_abs_diff(o.weyl_gamma, w.gamma), 1e-6);
      EXPECT_LT(max_abs_diff(o.nabla_j, nabla_J(w, m.structure).value), 1e-6);
    }
}

TEST(Weyl, OracleRejectsBadStep) {
  const Model<double> m = standard_model(StructureKind::Para, Signature::Neutral);
  EXPECT_THROW(fd_oracle(m, 1e-7), Error);
  EXPECT_THROW(fd_oracle(m, 0.1), Error);
}
