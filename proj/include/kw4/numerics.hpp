#pragma once

// Spectral helpers backed by Eigen. Used for rank and conditioning
// diagnostics only; none of the geometry runs through here.

#include <span>
#include <vector>

#include "kw4/linalg.hpp"
#include "kw4/scalar.hpp"

namespace kw4 {

// Singular values of a row-major rows x cols matrix, descending.
std::vector<double> singular_values(std::span<const double> row_major, int rows, int cols);
std::vector<double> singular_values(std::span<const Complex> row_major, int rows, int cols);

// Number of singular values above rel_threshold * largest.
template <Scalar S>
int numerical_rank(std::span<const S> row_major, int rows, int cols, double rel_threshold) {
  const std::vector<double> sv = singular_values(row_major, rows, cols);
  if (sv.empty() || sv.front() == 0.0) return 0;
  int rank = 0;
  for (double s : sv)
    if (s > rel_threshold * sv.front()) ++rank;
  return rank;
}

double condition_number(const Matrix4<double>& a);
double condition_number(const Matrix4<Complex>& a);

// Count of negative eigenvalues of a real symmetric matrix.
int negative_eigenvalue_count(const Matrix4<double>& a);

}  // namespace kw4
