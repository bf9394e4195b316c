#pragma once

#include <array>
#include <functional>

#include "kw4/runner.hpp"
#include "kw4/weyl.hpp"

namespace kw4::test {

// Central difference of a scalar function of x along direction i.
inline double central(const std::function<double(const Vector4<double>&)>& f, int i, double h = 1e-6) {
  Vector4<double> xp{}, xm{};
  xp[i] = h;
  xm[i] = -h;
  return (f(xp) - f(xm)) / (2.0 * h);
}

inline std::array<double, 4> draw_f(Rng& rng) {
  std::array<double, 4> f{};
  for (double& x : f) x = rng.uniform(-1.0, 1.0);
  return f;
}

template <Scalar S>
Model<S> draw_model(StructureKind kind, Signature sig, std::uint64_t seed, std::uint64_t t) {
  Rng rng = Rng::for_trial(seed, t);
  return random_model(standard_structure<S>(kind), sig, rng);
}

struct KindCase {
  StructureKind kind;
  Signature signature;
};

inline const std::array<KindCase, 3> kAllKinds = {{{StructureKind::Para, Signature::Neutral},
                                                   {StructureKind::Complex, Signature::Neutral},
                                                   {StructureKind::Complex, Signature::Definite}}};

}  // namespace kw4::test
