#pragma once

// Fixed 4x4 linear algebra over a scalar ring.

#include <algorithm>
#include <array>
#include <cstddef>
#include <utility>

#include "kw4/errors.hpp"
#include "kw4/scalar.hpp"

namespace kw4 {

inline constexpr int kDim = 4;

template <class T>
using Vector4 = std::array<T, kDim>;

template <class T>
using Matrix4 = std::array<std::array<T, kDim>, kDim>;

// t[i][j][k]; the meaning of each slot is fixed by the owning type.
template <class T>
using Tensor3 = std::array<Matrix4<T>, kDim>;

// Relative determinant guard: |det| < kSingularDetRatio * (max |entry|)^4.
inline constexpr double kSingularDetRatio = 1e-12;

template <Scalar S>
Matrix4<S> identity_matrix() {
  Matrix4<S> m{};
  for (int i = 0; i < kDim; ++i) m[i][i] = S(1.0);
  return m;
}

template <Scalar S>
Matrix4<S> matmul(const Matrix4<S>& a, const Matrix4<S>& b) {
  Matrix4<S> c{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      S acc{};
      for (int k = 0; k < kDim; ++k) acc += a[i][k] * b[k][j];
      c[i][j] = acc;
    }
  return c;
}

template <Scalar S>
Vector4<S> matvec(const Matrix4<S>& a, const Vector4<S>& v) {
  Vector4<S> out{};
  for (int i = 0; i < kDim; ++i) {
    S acc{};
    for (int k = 0; k < kDim; ++k) acc += a[i][k] * v[k];
    out[i] = acc;
  }
  return out;
}

template <Scalar S>
Matrix4<S> transpose(const Matrix4<S>& a) {
  Matrix4<S> t{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) t[i][j] = a[j][i];
  return t;
}

template <Scalar S>
Matrix4<S> operator+(const Matrix4<S>& a, const Matrix4<S>& b) {
  Matrix4<S> c{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) c[i][j] = a[i][j] + b[i][j];
  return c;
}

template <Scalar S>
Matrix4<S> operator-(const Matrix4<S>& a, const Matrix4<S>& b) {
  Matrix4<S> c{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) c[i][j] = a[i][j] - b[i][j];
  return c;
}

template <Scalar S>
Matrix4<S> scale(const S& s, const Matrix4<S>& a) {
  Matrix4<S> c{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) c[i][j] = s * a[i][j];
  return c;
}

template <Scalar S>
S trace(const Matrix4<S>& a) {
  S t{};
  for (int i = 0; i < kDim; ++i) t += a[i][i];
  return t;
}

template <Scalar S>
double max_abs(const Matrix4<S>& a) {
  double m = 0.0;
  for (const auto& row : a)
    for (const auto& x : row) m = std::max(m, magnitude(x));
  return m;
}

template <Scalar S>
double max_abs(const Tensor3<S>& t) {
  double m = 0.0;
  for (const auto& slice : t) m = std::max(m, max_abs(slice));
  return m;
}

template <Scalar S>
double max_abs(const Vector4<S>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, magnitude(x));
  return m;
}

template <Scalar S>
double max_abs_diff(const Matrix4<S>& a, const Matrix4<S>& b) {
  return max_abs(Matrix4<S>(a - b));
}

template <Scalar S>
double max_abs_diff(const Tensor3<S>& a, const Tensor3<S>& b) {
  double m = 0.0;
  for (int i = 0; i < kDim; ++i) m = std::max(m, max_abs_diff(a[i], b[i]));
  return m;
}

template <Scalar S>
double max_abs_diff(const Vector4<S>& a, const Vector4<S>& b) {
  double m = 0.0;
  for (int i = 0; i < kDim; ++i) m = std::max(m, magnitude(a[i] - b[i]));
  return m;
}

template <Scalar S>
struct LuInverse {
  Matrix4<S> inverse;
  S determinant;
};

// Gauss-Jordan elimination with partial pivoting. Returns false when the
// matrix fails the relative determinant guard.
template <Scalar S>
bool try_invert(const Matrix4<S>& a, LuInverse<S>& out) {
  Matrix4<S> m = a;
  Matrix4<S> inv = identity_matrix<S>();
  S det(1.0);
  const double scale_ref = max_abs(a);
  if (scale_ref == 0.0) return false;
  for (int col = 0; col < kDim; ++col) {
    int pivot = col;
    double best = magnitude(m[col][col]);
    for (int r = col + 1; r < kDim; ++r) {
      const double v = magnitude(m[r][col]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (best == 0.0) return false;
    if (pivot != col) {
      std::swap(m[pivot], m[col]);
      std::swap(inv[pivot], inv[col]);
      det = -det;
    }
    const S p = m[col][col];
    det *= p;
    for (int j = 0; j < kDim; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (int r = 0; r < kDim; ++r) {
      if (r == col) continue;
      const S f = m[r][col];
      for (int j = 0; j < kDim; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  const double s2 = scale_ref * scale_ref;
  if (magnitude(det) < kSingularDetRatio * s2 * s2) return false;
  out.inverse = inv;
  out.determinant = det;
  return true;
}

template <class Err = SingularMetric, Scalar S>
Matrix4<S> inverse(const Matrix4<S>& a) {
  LuInverse<S> lu;
  if (!try_invert(a, lu)) throw Err("matrix is singular to working precision");
  return lu.inverse;
}

template <Scalar S>
S determinant(const Matrix4<S>& a) {
  LuInverse<S> lu;
  if (!try_invert(a, lu)) {
    // Fall back to cofactor expansion so that singular inputs still report.
    S det{};
    const int perm[24][4] = {
        {0, 1, 2, 3}, {0, 1, 3, 2}, {0, 2, 1, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}, {0, 3, 2, 1},
        {1, 0, 2, 3}, {1, 0, 3, 2}, {1, 2, 0, 3}, {1, 2, 3, 0}, {1, 3, 0, 2}, {1, 3, 2, 0},
        {2, 0, 1, 3}, {2, 0, 3, 1}, {2, 1, 0, 3}, {2, 1, 3, 0}, {2, 3, 0, 1}, {2, 3, 1, 0},
        {3, 0, 1, 2}, {3, 0, 2, 1}, {3, 1, 0, 2}, {3, 1, 2, 0}, {3, 2, 0, 1}, {3, 2, 1, 0}};
    for (const auto& p : perm) {
      int inversions = 0;
      for (int i = 0; i < kDim; ++i)
        for (int j = i + 1; j < kDim; ++j)
          if (p[i] > p[j]) ++inversions;
      S term(inversions % 2 ? -1.0 : 1.0);
      for (int i = 0; i < kDim; ++i) term *= a[i][p[i]];
      det += term;
    }
    return det;
  }
  return lu.determinant;
}

// Embeds real data into complex scalars.
inline Matrix4<Complex> to_complex(const Matrix4<double>& a) {
  Matrix4<Complex> c{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) c[i][j] = Complex(a[i][j]);
  return c;
}

inline Tensor3<Complex> to_complex(const Tensor3<double>& t) {
  Tensor3<Complex> c{};
  for (int i = 0; i < kDim; ++i) c[i] = to_complex(t[i]);
  return c;
}

inline Vector4<Complex> to_complex(const Vector4<double>& v) {
  Vector4<Complex> c{};
  for (int i = 0; i < kDim; ++i) c[i] = Complex(v[i]);
  return c;
}

}  // namespace kw4
