#include <gtest/gtest.h>

#include "kw4/continuation.hpp"
#include "support.hpp"

using namespace kw4;

TEST(Continuation, RealDataEmbedsBitIdentically) {
  for (std::size_t t = 0; t < 100; ++t) {
    const ContinuationRecord r = continuation_trial(Battery::RealData, 7, 100, t);
    EXPECT_EQ(r.embedding_defect, 0.0);
    EXPECT_TRUE(r.pass) << "trial " << t;
  }
}

TEST(Continuation, AllBatteriesPass) {
  const std::vector<ContinuationRecord> recs = continuation_trials(7, 200);
  ASSERT_EQ(recs.size(), 600u);
  for (const auto& r : recs) EXPECT_TRUE(r.pass) << to_string(r.battery) << " trial " << r.trial << " " << r.residual;
  for (std::size_t i = 400; i < 600; ++i) {
    EXPECT_GT(recs[i].condition, 0.0);
    EXPECT_LE(recs[i].condition, 100.0);
  }
}

TEST(Continuation, TrialsAreIndependentOfBatchSize) {
  const ContinuationRecord a = continuation_trial(Battery::ComplexData, 9, 50, 3);
  const std::vector<ContinuationRecord> all = continuation_trials(9, 50);
  EXPECT_EQ(a.residual, all[50 + 3].residual);
}

TEST(Continuation, ComplexDataHasNonzeroImaginaryParts) {
  Rng rng(4);
  const Model<Complex> m = random_model(standard_para_structure<Complex>(), Signature::Neutral, rng);
  double im = 0.0;
  for (const auto& row : m.metric.g0)
    for (const auto& z : row) im = std::max(im, std::abs(z.im));
  EXPECT_GT(im, 0.0);
}

TEST(Continuation, HermitianReductionOnStandardModels) {
  EXPECT_LT(hermitian_reduction_check(standard_model(StructureKind::Complex, Signature::Definite)).max_deviation(),
            1e-12);
  EXPECT_LT(hermitian_reduction_check(standard_model(StructureKind::Complex, Signature::Neutral)).max_deviation(),
            1e-12);
}

TEST(Continuation, HermitianReductionOnRandomModels) {
  for (const Signature sig : {Signature::Neutral, Signature::Definite})
    for (std::uint64_t t = 0; t < 100; ++t) {
      const Model<double> m = test::draw_model<double>(StructureKind::Complex, sig, 13, t);
      const ReductionReport r = hermitian_reduction_check(m);
      EXPECT_LT(r.max_deviation(), 1e-9) << "trial " << t;
    }
}

TEST(Continuation, HermitianReductionRejectsParaKind) {
  EXPECT_THROW(hermitian_reduction_check(standard_model(StructureKind::Para, Signature::Neutral)), InvalidStructure);
}
