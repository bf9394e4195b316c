#include "kw4/numerics.hpp"

#include <Eigen/Dense>
#include <complex>
#include <limits>

namespace kw4 {
namespace {

template <class EigenScalar, class In, class Convert>
std::vector<double> svd_values(std::span<const In> data, int rows, int cols, Convert convert) {
  using Mat = Eigen::Matrix<EigenScalar, Eigen::Dynamic, Eigen::Dynamic>;
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = convert(data[static_cast<std::size_t>(r) * cols + c]);
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

std::span<const double> flatten(const Matrix4<double>& a) { return {&a[0][0], 16}; }
std::span<const Complex> flatten(const Matrix4<Complex>& a) { return {&a[0][0], 16}; }

double condition_from(const std::vector<double>& sv) {
  if (sv.empty() || sv.back() == 0.0) return std::numeric_limits<double>::infinity();
  return sv.front() / sv.back();
}

}  // namespace

std::vector<double> singular_values(std::span<const double> row_major, int rows, int cols) {
  return svd_values<double>(row_major, rows, cols, [](double x) { return x; });
}

std::vector<double> singular_values(std::span<const Complex> row_major, int rows, int cols) {
  return svd_values<std::complex<double>>(row_major, rows, cols,
                                          [](const Complex& z) { return std::complex<double>(z.re, z.im); });
}

double condition_number(const Matrix4<double>& a) { return condition_from(singular_values(flatten(a), 4, 4)); }

double condition_number(const Matrix4<Complex>& a) { return condition_from(singular_values(flatten(a), 4, 4)); }

int negative_eigenvalue_count(const Matrix4<double>& a) {
  Eigen::Matrix4d m;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) m(i, j) = a[i][j];
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(m, Eigen::EigenvaluesOnly);
  int count = 0;
  for (int i = 0; i < kDim; ++i)
    if (es.eigenvalues()(i) < 0.0) ++count;
  return count;
}

}  // namespace kw4
