#pragma once

#include "kw4/jet.hpp"
#include "kw4/linalg.hpp"

namespace kw4 {

// 1-jet of a metric at the origin: g(x) = g0 + sum_i x^i g1[i].
// g1[i][j][k] is d_i g_{jk}(0).
template <Scalar S>
struct MetricJet {
  Matrix4<S> g0{};
  Tensor3<S> g1{};

  // Entry (j, k) of g as a jet.
  Jet1<S> entry(int j, int k) const {
    Jet1<S> e;
    e.value = g0[j][k];
    for (int i = 0; i < kDim; ++i) e.partials[i] = g1[i][j][k];
    return e;
  }

  JetMatrix<S> as_jet_matrix() const {
    JetMatrix<S> m{};
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) m[j][k] = entry(j, k);
    return m;
  }

  // The affine metric evaluated at a point.
  Matrix4<S> at(const Vector4<S>& x) const {
    Matrix4<S> g = g0;
    for (int i = 0; i < kDim; ++i) g = g + scale(x[i], g1[i]);
    return g;
  }
};

// Largest violation of g0 = g0^T and g1[i] = g1[i]^T.
template <Scalar S>
double symmetry_defect(const MetricJet<S>& g) {
  double d = max_abs_diff(g.g0, transpose(g.g0));
  for (int i = 0; i < kDim; ++i) d = std::max(d, max_abs_diff(g.g1[i], transpose(g.g1[i])));
  return d;
}

inline MetricJet<Complex> to_complex(const MetricJet<double>& g) {
  return {to_complex(g.g0), to_complex(g.g1)};
}

}  // namespace kw4
