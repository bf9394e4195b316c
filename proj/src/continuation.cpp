#include "kw4/continuation.hpp"

namespace kw4 {

std::string_view to_string(Battery b) {
  switch (b) {
    case Battery::RealData: return "real-data";
    case Battery::ComplexData: return "complex-data";
    case Battery::ComplexStructure: return "complex-structure";
  }
  return "unknown";
}

ContinuationRecord continuation_trial(Battery battery, std::uint64_t seed, std::size_t count, std::size_t trial,
                                      const ContinuationOptions& opts) {
  const auto b = static_cast<std::uint64_t>(battery);
  Rng rng = Rng::for_trial(seed, b * count + trial);
  ContinuationRecord rec;
  rec.battery = battery;
  rec.trial = trial;

  switch (battery) {
    case Battery::RealData: {
      const Model<double> real = random_model(standard_para_structure<double>(), Signature::Neutral, rng);
      const double real_residual = verify_kw(real).residual;
      rec.residual = verify_kw(to_complex(real)).residual;
      rec.embedding_defect = std::abs(rec.residual - real_residual);
      rec.pass = rec.residual <= opts.tolerance_real_data && rec.embedding_defect == 0.0;
      break;
    }
    case Battery::ComplexData: {
      const Model<Complex> m = random_model(standard_para_structure<Complex>(), Signature::Neutral, rng);
      rec.residual = verify_kw(m).residual;
      rec.pass = rec.residual <= opts.tolerance_complex_data;
      break;
    }
    case Battery::ComplexStructure: {
      const Matrix4<Complex> a = random_transform<Complex>(rng, opts.max_condition);
      rec.condition = condition_number(a);
      const Structure<Complex> base = standard_para_structure<Complex>();
      const Structure<Complex> s =
          make_structure(StructureKind::Para, matmul(a, matmul(base.J, inverse<SingularTransform>(a))));
      // Conjugation by A costs up to cond(A)^2 in the conditioning of g0.
      SampleOptions sample;
      sample.max_condition = kDefaultSampleCondition * std::pow(rec.condition, 1.5);
      const Model<Complex> m = random_model(s, Signature::Neutral, rng, sample);
      rec.residual = verify_kw(m).residual;
      rec.pass = rec.residual <= opts.tolerance_complex_structure;
      break;
    }
  }
  return rec;
}

std::vector<ContinuationRecord> continuation_trials(std::uint64_t seed, std::size_t count,
                                                    const ContinuationOptions& opts) {
  std::vector<ContinuationRecord> out;
  out.reserve(3 * count);
  for (Battery b : {Battery::RealData, Battery::ComplexData, Battery::ComplexStructure})
    for (std::size_t t = 0; t < count; ++t) out.push_back(continuation_trial(b, seed, count, t, opts));
  return out;
}

}  // namespace kw4
