#pragma once

// Complex-scalar replays of the analytic continuation argument.
//
// Battery A: real J+, real data, run in complex arithmetic.
// Battery B: real J+, complex data projected onto J+.
// Battery C: J+ conjugated by a random complex A, complex data projected
//            onto the conjugated structure.

#include <cstdint>
#include <string_view>
#include <vector>

#include "kw4/weyl.hpp"

namespace kw4 {

enum class Battery { RealData, ComplexData, ComplexStructure };

std::string_view to_string(Battery b);

struct ContinuationOptions {
  double tolerance_real_data = 1e-8;
  double tolerance_complex_data = 1e-8;
  double tolerance_complex_structure = 1e-7;
  double max_condition = 100.0;
};

struct ContinuationRecord {
  Battery battery = Battery::RealData;
  std::size_t trial = 0;
  double residual = 0.0;
  bool pass = false;
  // Battery A only: |complex residual - real residual|; zero when the
  // complex run reproduces the real run.
  double embedding_defect = 0.0;
  // Battery C only.
  double condition = 0.0;
};

// One record per trial per battery, ordered by battery then trial. Trial t of
// battery b draws from trial stream b * count + t of the base seed.
std::vector<ContinuationRecord> continuation_trials(std::uint64_t seed, std::size_t count,
                                                    const ContinuationOptions& opts = {});

ContinuationRecord continuation_trial(Battery battery, std::uint64_t seed, std::size_t count, std::size_t trial,
                                      const ContinuationOptions& opts = {});

struct ReductionReport {
  double j_squared = 0.0;        // |J+^2 - Id|
  double trace = 0.0;            // |tr J+|
  double anti_invariance = 0.0;  // |J+* g + g| over g0 and every g1 slice
  double kahler_relation = 0.0;  // |Omega- + i Omega+| over jets
  double lee_agreement = 0.0;    // |phi(J-) - phi(J+)|

  double max_deviation() const {
    return std::max({j_squared, trace, anti_invariance, kahler_relation, lee_agreement});
  }
};

// Embeds a complex-kind model into complex scalars, sets J+ = i J-, and
// measures the identities relating the two structures.
template <Scalar S>
ReductionReport hermitian_reduction_check(const Model<S>& m) {
  if (m.kind() != StructureKind::Complex) throw InvalidStructure("hermitian_reduction_check: complex kind required");
  Model<Complex> minus;
  if constexpr (is_complex_v<S>) {
    minus = m;
  } else {
    minus = to_complex(m);
  }
  validate_model(minus);
  Model<Complex> plus = minus;
  plus.structure.kind = StructureKind::Para;
  plus.structure.J = scale(kImaginaryUnit, minus.J());

  ReductionReport r;
  r.j_squared = max_abs(Matrix4<Complex>(matmul(plus.J(), plus.J()) - identity_matrix<Complex>()));
  r.trace = magnitude(trace(plus.J()));
  r.anti_invariance = max_abs(Matrix4<Complex>(pullback(plus.metric.g0, plus.J()) + plus.metric.g0));
  for (int i = 0; i < kDim; ++i) {
    r.anti_invariance = std::max(
        r.anti_invariance, max_abs(Matrix4<Complex>(pullback(plus.metric.g1[i], plus.J()) + plus.metric.g1[i])));
  }
  const PForm<Complex> omega_minus = kahler_form(minus);
  const PForm<Complex> omega_plus = kahler_form(plus);
  r.kahler_relation = max_abs_diff(omega_minus, Complex(0.0, -1.0) * omega_plus);
  r.lee_agreement = max_abs_diff(lee_form(minus).phi, lee_form(plus).phi);
  return r;
}

}  // namespace kw4
