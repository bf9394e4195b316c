#pragma once

// First-order Taylor jets in four variables.
//
// A Jet1 carries f(0) and the four partials of f at the origin. Products
// truncate at order one, so the coordinate jet x^i squares to zero.

#include <array>
#include <string>

#include "kw4/errors.hpp"
#include "kw4/linalg.hpp"
#include "kw4/scalar.hpp"

namespace kw4 {

// |value| below this raises SingularValue in jet_inv.
inline constexpr double kSingularValueThreshold = 1e-14;

template <Scalar S>
struct Jet1 {
  S value{};
  Vector4<S> partials{};

  static Jet1 constant(const S& v) { return Jet1{v, {}}; }

  // The coordinate function x^i (0-based).
  static Jet1 coordinate(int i) {
    Jet1 j;
    j.partials[i] = S(1.0);
    return j;
  }

  Jet1& operator+=(const Jet1& o) {
    value += o.value;
    for (int i = 0; i < kDim; ++i) partials[i] += o.partials[i];
    return *this;
  }
  Jet1& operator-=(const Jet1& o) {
    value -= o.value;
    for (int i = 0; i < kDim; ++i) partials[i] -= o.partials[i];
    return *this;
  }
  Jet1& operator*=(const S& s) {
    value *= s;
    for (auto& p : partials) p *= s;
    return *this;
  }

  friend Jet1 operator+(Jet1 a, const Jet1& b) { return a += b; }
  friend Jet1 operator-(Jet1 a, const Jet1& b) { return a -= b; }
  friend Jet1 operator-(const Jet1& a) {
    Jet1 r;
    r.value = -a.value;
    for (int i = 0; i < kDim; ++i) r.partials[i] = -a.partials[i];
    return r;
  }
  friend Jet1 operator*(const S& s, Jet1 a) { return a *= s; }
  friend Jet1 operator*(Jet1 a, const S& s) { return a *= s; }
  friend Jet1 operator*(const Jet1& a, const Jet1& b) { return jet_mul(a, b); }

  // Copy with the derivative information dropped.
  Jet1 truncated() const { return constant(value); }
};

template <Scalar S>
Jet1<S> jet_mul(const Jet1<S>& a, const Jet1<S>& b) {
  Jet1<S> r;
  r.value = a.value * b.value;
  for (int i = 0; i < kDim; ++i) r.partials[i] = a.partials[i] * b.value + a.value * b.partials[i];
  return r;
}

template <Scalar S>
Jet1<S> jet_inv(const Jet1<S>& a, double threshold = kSingularValueThreshold) {
  if (!(magnitude(a.value) > threshold)) {
    throw SingularValue("jet_inv: value magnitude below singularity threshold");
  }
  Jet1<S> r;
  r.value = S(1.0) / a.value;
  const S inv_sq = r.value * r.value;
  for (int i = 0; i < kDim; ++i) r.partials[i] = -(a.partials[i] * inv_sq);
  return r;
}

// Jet of exp(s * f) from the 1-jet (f0, df) of f.
template <Scalar S>
Jet1<S> jet_exp_scale(const S& f0, const Vector4<S>& df, const S& s) {
  Jet1<S> r;
  r.value = scalar_exp(s * f0);
  for (int i = 0; i < kDim; ++i) r.partials[i] = s * df[i] * r.value;
  return r;
}

template <Scalar S>
double max_abs_diff(const Jet1<S>& a, const Jet1<S>& b) {
  double m = magnitude(a.value - b.value);
  for (int i = 0; i < kDim; ++i) m = std::max(m, magnitude(a.partials[i] - b.partials[i]));
  return m;
}

template <Scalar S>
using JetMatrix = Matrix4<Jet1<S>>;

template <Scalar S>
Matrix4<S> value_part(const JetMatrix<S>& a) {
  Matrix4<S> v{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) v[i][j] = a[i][j].value;
  return v;
}

// The matrix of d/dx^k entries.
template <Scalar S>
Matrix4<S> partial_part(const JetMatrix<S>& a, int k) {
  Matrix4<S> v{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) v[i][j] = a[i][j].partials[k];
  return v;
}

template <Scalar S>
JetMatrix<S> assemble_jet_matrix(const Matrix4<S>& value, const std::array<Matrix4<S>, kDim>& partials) {
  JetMatrix<S> a{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      a[i][j].value = value[i][j];
      for (int k = 0; k < kDim; ++k) a[i][j].partials[k] = partials[k][i][j];
    }
  return a;
}

template <Scalar S>
JetMatrix<S> jet_matmul(const JetMatrix<S>& a, const JetMatrix<S>& b) {
  JetMatrix<S> c{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      Jet1<S> acc;
      for (int k = 0; k < kDim; ++k) acc += jet_mul(a[i][k], b[k][j]);
      c[i][j] = acc;
    }
  return c;
}

// Value level by partial-pivot elimination; partials from
// d(A^-1) = -A^-1 (dA) A^-1.
template <Scalar S>
JetMatrix<S> jet_matrix_inverse(const JetMatrix<S>& a) {
  LuInverse<S> lu;
  if (!try_invert(value_part(a), lu)) {
    throw SingularMetric("jet_matrix_inverse: determinant below singularity threshold");
  }
  const Matrix4<S>& inv = lu.inverse;
  std::array<Matrix4<S>, kDim> dinv{};
  for (int k = 0; k < kDim; ++k) {
    dinv[k] = scale(S(-1.0), matmul(matmul(inv, partial_part(a, k)), inv));
  }
  return assemble_jet_matrix(inv, dinv);
}

}  // namespace kw4
