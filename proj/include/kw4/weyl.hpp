#pragma once

// Levi-Civita and Weyl connections at the origin of a model, the Lee form,
// the covariant derivative of J, and the checks built on them.
//
// Index conventions: gamma[i][j][k] is the d_k component of nabla_{d_i} d_j,
// and nabla_J[i][j][k] is the d_k component of (nabla_{d_i} J) d_j.

#include <vector>

#include "kw4/forms.hpp"
#include "kw4/numerics.hpp"
#include "kw4/structures.hpp"

namespace kw4 {

template <Scalar S>
struct Connection {
  Tensor3<S> gamma{};
};

template <Scalar S>
struct LeeForm {
  Vector4<S> phi{};
  Vector4<S> phi_sharp{};
};

template <Scalar S>
struct NablaJ {
  Tensor3<S> value{};
};

inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr double kRankThreshold = 1e-8;

struct KwOptions {
  double tolerance = kDefaultTolerance;
  // Reverse the orientation induced by the Kahler form. The codifferential,
  // and hence every reported quantity, is independent of this choice.
  bool flip_orientation = false;
};

template <Scalar S>
Connection<S> levi_civita(const Model<S>& m) {
  const Matrix4<S> ginv = value_part(inverse_metric(m.metric));
  const Tensor3<S>& d = m.metric.g1;
  Connection<S> c;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) {
        S acc{};
        for (int l = 0; l < kDim; ++l) acc += ginv[k][l] * (d[i][j][l] + d[j][i][l] - d[l][i][j]);
        c.gamma[i][j][k] = S(0.5) * acc;
      }
  return c;
}

// (J alpha)(X) = alpha(J X).
template <Scalar S>
Vector4<S> apply_to_covector(const Matrix4<S>& J, const Vector4<S>& alpha) {
  Vector4<S> r{};
  for (int i = 0; i < kDim; ++i)
    for (int k = 0; k < kDim; ++k) r[i] += alpha[k] * J[k][i];
  return r;
}

template <Scalar S>
Vector4<S> one_form_components(const PForm<S>& a) {
  if (a.degree() != 1) throw DegreeMismatch("expected a 1-form");
  Vector4<S> v{};
  for (int i = 0; i < kDim; ++i) v[i] = a[1u << i].value;
  return v;
}

template <Scalar S>
Vector4<S> codifferential_of_kahler(const Model<S>& m, bool flip_orientation = false) {
  const PForm<S> omega = kahler_form(m);
  const VolumeElement<S> mu = volume_from_kahler(omega, flip_orientation);
  return one_form_components(codifferential_2form(omega, m.metric, mu));
}

// phi = 1/2 J delta Omega (para) or -1/2 J delta Omega (complex).
template <Scalar S>
LeeForm<S> lee_form(const Model<S>& m, bool flip_orientation = false) {
  const Vector4<S> delta = codifferential_of_kahler(m, flip_orientation);
  const S c(m.kind() == StructureKind::Para ? 0.5 : -0.5);
  LeeForm<S> lf;
  const Vector4<S> j_delta = apply_to_covector(m.J(), delta);
  for (int i = 0; i < kDim; ++i) lf.phi[i] = c * j_delta[i];
  lf.phi_sharp = matvec(inverse(m.metric.g0), lf.phi);
  return lf;
}

// nabla^phi_X Y = nabla^g_X Y + phi(X) Y + phi(Y) X - g(X, Y) phi^#.
template <Scalar S>
Connection<S> weyl_connection(const Model<S>& m, const LeeForm<S>& lf) {
  Connection<S> c = levi_civita(m);
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) {
        S extra = -(m.metric.g0[i][j] * lf.phi_sharp[k]);
        if (j == k) extra += lf.phi[i];
        if (i == k) extra += lf.phi[j];
        c.gamma[i][j][k] += extra;
      }
  return c;
}

// J is constant in coordinates, so only the connection terms contribute.
template <Scalar S>
NablaJ<S> nabla_J(const Connection<S>& c, const Structure<S>& s) {
  NablaJ<S> n;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) {
        S acc{};
        for (int m = 0; m < kDim; ++m) {
          acc += c.gamma[i][m][k] * s.J[m][j];
          acc -= c.gamma[i][j][m] * s.J[k][m];
        }
        n.value[i][j][k] = acc;
      }
  return n;
}

template <Scalar S>
struct KwReport {
  double residual = 0.0;
  LeeForm<S> phi;
  bool pass = false;
  NablaJ<S> nabla;
};

template <Scalar S>
KwReport<S> verify_kw(const Model<S>& m, const KwOptions& opts = {}) {
  KwReport<S> r;
  r.phi = lee_form(m, opts.flip_orientation);
  r.nabla = nabla_J(weyl_connection(m, r.phi), m.structure);
  r.residual = max_abs(r.nabla.value);
  r.pass = r.residual <= opts.tolerance;
  return r;
}

// The linear map phi -> {[Theta_{d_i}, J]}_i as a 64 x 4 matrix, row index
// 16 i + 4 k + j for the (k, j) entry of the i-th commutator.
template <Scalar S>
std::vector<S> uniqueness_matrix(const Model<S>& m) {
  const Matrix4<S> ginv = inverse(m.metric.g0);
  const Matrix4<S>& g0 = m.metric.g0;
  const Matrix4<S>& J = m.J();
  std::vector<S> out(64 * 4);
  for (int a = 0; a < kDim; ++a) {
    Vector4<S> phi{};
    phi[a] = S(1.0);
    const Vector4<S> sharp = matvec(ginv, phi);
    for (int i = 0; i < kDim; ++i) {
      // theta[k][j]: d_k component of Theta_{d_i} d_j.
      Matrix4<S> theta{};
      for (int j = 0; j < kDim; ++j)
        for (int k = 0; k < kDim; ++k) {
          S v = -(g0[i][j] * sharp[k]);
          if (j == k) v += phi[i];
          if (i == k) v += phi[j];
          theta[k][j] = v;
        }
      const Matrix4<S> comm = matmul(theta, J) - matmul(J, theta);
      for (int k = 0; k < kDim; ++k)
        for (int j = 0; j < kDim; ++j) out[static_cast<std::size_t>(16 * i + 4 * k + j) * 4 + a] = comm[k][j];
    }
  }
  return out;
}

template <Scalar S>
int uniqueness_rank(const Model<S>& m, double rel_threshold = kRankThreshold) {
  const std::vector<S> mat = uniqueness_matrix(m);
  return numerical_rank<S>(std::span<const S>(mat), 64, 4, rel_threshold);
}

// Symmetric product dx^a o dx^b = 1/2 (dx^a (x) dx^b + dx^b (x) dx^a).
inline Matrix4<double> symmetric_product(int a, int b) {
  Matrix4<double> e{};
  e[a][b] += 0.5;
  e[b][a] += 0.5;
  return e;
}

// dx^1 o dx^3, dx^1 o dx^4, dx^2 o dx^3, dx^2 o dx^4.
inline std::vector<Matrix4<double>> anti_invariant_spanning_set() {
  return {symmetric_product(0, 2), symmetric_product(0, 3), symmetric_product(1, 2), symmetric_product(1, 3)};
}

template <Scalar S>
struct LinearizationTable {
  // values[b][i]: nabla^phi J at the origin for g = g0 + x^i eps_b.
  std::vector<std::array<Tensor3<S>, kDim>> values;

  double max_entry() const {
    double m = 0.0;
    for (const auto& row : values)
      for (const auto& t : row) m = std::max(m, max_abs(t));
    return m;
  }
};

// Evaluates eps -> nabla^phi J(0) for the perturbations g0 + x^i eps of the
// flat base model, one direction at a time.
template <Scalar S>
LinearizationTable<S> linearization_map(const Model<S>& base, const std::vector<Matrix4<S>>& basis,
                                        const KwOptions& opts = {}) {
  LinearizationTable<S> table;
  const S sign(compatibility_sign(base.kind()));
  for (const Matrix4<S>& eps : basis) {
    const double ref = std::max(1.0, max_abs(eps)) * std::max(1.0, max_abs(base.J()));
    if (max_abs(Matrix4<S>(pullback(eps, base.J()) - scale(sign, eps))) > kCompatibilityTolerance * ref) {
      throw InvalidModel("linearization_map: perturbation is not compatible with J");
    }
    std::array<Tensor3<S>, kDim> row{};
    for (int i = 0; i < kDim; ++i) {
      Model<S> m = base;
      m.metric.g1 = Tensor3<S>{};
      m.metric.g1[i] = eps;
      row[i] = verify_kw(make_model(m.structure, m.metric), opts).nabla.value;
    }
    table.values.push_back(row);
  }
  return table;
}

// nabla^phi J(0) for a full first-order perturbation g0 + sum_i x^i eps_i.
template <Scalar S>
Tensor3<S> linearization_value(const Model<S>& base, const Tensor3<S>& eps, const KwOptions& opts = {}) {
  MetricJet<S> g = base.metric;
  g.g1 = eps;
  return verify_kw(make_model(base.structure, g), opts).nabla.value;
}

// Independent finite-difference evaluation of phi, the Levi-Civita symbols,
// and nabla^phi J. Works on the affine metric at stencil points with plain
// matrix arithmetic and full antisymmetric tensors; central differences with
// one Richardson level.
template <Scalar S>
struct FdOracleResult {
  Vector4<S> phi{};
  Tensor3<S> gamma{};
  Tensor3<S> weyl_gamma{};
  Tensor3<S> nabla_j{};
};

namespace oracle_detail {

inline int levi_civita_symbol(int a, int b, int c, int d) {
  const int p[4] = {a, b, c, d};
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] == p[j]) return 0;
  int inversions = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

template <Scalar S>
S pfaffian(const Matrix4<S>& w) {
  return w[0][1] * w[2][3] - w[0][2] * w[1][3] + w[0][3] * w[1][2];
}

// Star of the Kahler form at a point, as a full antisymmetric matrix.
template <Scalar S>
Matrix4<S> star_kahler_at(const Model<S>& m, const Vector4<S>& x, bool flip) {
  const Matrix4<S> g = m.metric.at(x);
  const Matrix4<S> ginv = inverse(g);
  const Matrix4<S> omega = matmul(g, m.J());
  S mu = pfaffian(omega);
  if (flip) mu = -mu;
  const Matrix4<S> raised = matmul(ginv, matmul(omega, transpose(ginv)));
  Matrix4<S> star{};
  for (int c = 0; c < kDim; ++c)
    for (int d = 0; d < kDim; ++d) {
      S acc{};
      for (int a = 0; a < kDim; ++a)
        for (int b = 0; b < kDim; ++b) {
          const int e = levi_civita_symbol(a, b, c, d);
          if (e != 0) acc += S(0.5 * e) * raised[a][b];
        }
      star[c][d] = acc * mu;
    }
  return star;
}

template <Scalar S, class F>
auto richardson(F&& f, int direction, double h) {
  auto central = [&](double step) {
    Vector4<S> xp{}, xm{};
    xp[direction] = S(step);
    xm[direction] = S(-step);
    const auto fp = f(xp);
    const auto fm = f(xm);
    auto d = fp;
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) d[i][j] = (fp[i][j] - fm[i][j]) / S(2.0 * step);
    return d;
  };
  const auto coarse = central(h);
  const auto fine = central(h / 2.0);
  auto r = fine;
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) r[i][j] = (S(4.0) * fine[i][j] - coarse[i][j]) / S(3.0);
  return r;
}

}  // namespace oracle_detail

template <Scalar S>
FdOracleResult<S> fd_oracle(const Model<S>& m, double h = 1e-4, bool flip_orientation = false) {
  using namespace oracle_detail;
  if (!(h >= 1e-6 && h <= 1e-2)) throw Error("fd_oracle: step must lie in [1e-6, 1e-2]");
  FdOracleResult<S> r;

  // dg[l][i][j] = d_l g_ij and dstar[l][c][d] = d_l (*Omega)_cd.
  Tensor3<S> dg{};
  Tensor3<S> dstar{};
  for (int l = 0; l < kDim; ++l) {
    dg[l] = richardson<S>([&](const Vector4<S>& x) { return m.metric.at(x); }, l, h);
    dstar[l] = richardson<S>([&](const Vector4<S>& x) { return star_kahler_at(m, x, flip_orientation); }, l, h);
  }

  const Matrix4<S> g0 = m.metric.g0;
  const Matrix4<S> ginv = inverse(g0);
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) {
        S acc{};
        for (int l = 0; l < kDim; ++l) acc += ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        r.gamma[i][j][k] = S(0.5) * acc;
      }

  // (d beta)_{abc} = d_a beta_bc + d_b beta_ca + d_c beta_ab.
  S d3[4][4][4];
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      for (int c = 0; c < kDim; ++c) d3[a][b][c] = dstar[a][b][c] + dstar[b][c][a] + dstar[c][a][b];

  S mu0 = pfaffian(matmul(g0, m.J()));
  if (flip_orientation) mu0 = -mu0;

  // delta Omega = - * d * Omega; (*gamma)_d = 1/3! gamma^{abc} eps_{abcd} mu.
  Vector4<S> delta{};
  for (int d = 0; d < kDim; ++d) {
    S acc{};
    for (int a = 0; a < kDim; ++a)
      for (int b = 0; b < kDim; ++b)
        for (int c = 0; c < kDim; ++c) {
          const int e = levi_civita_symbol(a, b, c, d);
          if (e == 0) continue;
          S raised{};
          for (int p = 0; p < kDim; ++p)
            for (int q = 0; q < kDim; ++q)
              for (int s = 0; s < kDim; ++s) raised += ginv[a][p] * ginv[b][q] * ginv[c][s] * d3[p][q][s];
          acc += S(e / 6.0) * raised;
        }
    delta[d] = -(acc * mu0);
  }

  const S c(m.kind() == StructureKind::Para ? 0.5 : -0.5);
  for (int i = 0; i < kDim; ++i) {
    S acc{};
    for (int k = 0; k < kDim; ++k) acc += delta[k] * m.J()[k][i];
    r.phi[i] = c * acc;
  }
  Vector4<S> sharp{};
  for (int k = 0; k < kDim; ++k)
    for (int l = 0; l < kDim; ++l) sharp[k] += ginv[k][l] * r.phi[l];

  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) {
        S v = r.gamma[i][j][k] - g0[i][j] * sharp[k];
        if (j == k) v += r.phi[i];
        if (i == k) v += r.phi[j];
        r.weyl_gamma[i][j][k] = v;
      }

  // (nabla_i J)^k_j = Gamma^k_{im} J^m_j - J^k_m Gamma^m_{ij}.
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j)
      for (int k = 0; k < kDim; ++k) {
        S acc{};
        for (int p = 0; p < kDim; ++p)
          acc += r.weyl_gamma[i][p][k] * m.J()[p][j] - m.J()[k][p] * r.weyl_gamma[i][j][p];
        r.nabla_j[i][j][k] = acc;
      }
  return r;
}

}  // namespace kw4
