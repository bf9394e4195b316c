#pragma once

// Reproducible sampling. The generator is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; uniform doubles are derived from the
// top 53 bits by hand so no implementation-defined distribution is involved.
// Trial t of a sweep with base seed s draws from the stream seeded by
// s ^ splitmix64(t); scrambling t keeps nearby base seeds from sharing streams.

#include <cstdint>
#include <random>

#include "kw4/linalg.hpp"
#include "kw4/scalar.hpp"

namespace kw4 {

class Rng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64;seed=base^splitmix64(trial);u=(x>>11)*2^-53;v2";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  static Rng for_trial(std::uint64_t base_seed, std::uint64_t trial) { return Rng(base_seed ^ splitmix64(trial)); }

  static constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // Uniform on [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform on [lo, hi).
  double uniform(double lo = -1.0, double hi = 1.0) { return lo + (hi - lo) * unit(); }

  // Real: uniform on [-1, 1). Complex: both parts uniform on [-1, 1).
  template <Scalar S>
  S draw() {
    if constexpr (is_complex_v<S>) {
      const double re = uniform();
      const double im = uniform();
      return Complex(re, im);
    } else {
      return uniform();
    }
  }

  template <Scalar S>
  Matrix4<S> matrix() {
    Matrix4<S> m{};
    for (auto& row : m)
      for (auto& x : row) x = draw<S>();
    return m;
  }

  template <Scalar S>
  Matrix4<S> symmetric_matrix() {
    Matrix4<S> m{};
    for (int i = 0; i < kDim; ++i)
      for (int j = i; j < kDim; ++j) m[i][j] = m[j][i] = draw<S>();
    return m;
  }

  template <Scalar S>
  Vector4<S> vector() {
    Vector4<S> v{};
    for (auto& x : v) x = draw<S>();
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace kw4
