#pragma once

// Model data for (para-)Hermitian 4-manifolds at a point.
//
// A Model pairs a constant structure J (J^2 = +Id for para, -Id for complex)
// with the 1-jet of a compatible metric: J*g = -g (para) or J*g = g
// (complex), where (J*g)(X, Y) = g(JX, JY). Matrices act on column vectors:
// J[k][j] is the d_k component of J d_j.

#include <string>
#include <string_view>

#include "kw4/errors.hpp"
#include "kw4/forms.hpp"
#include "kw4/jet.hpp"
#include "kw4/linalg.hpp"
#include "kw4/metric.hpp"
#include "kw4/numerics.hpp"
#include "kw4/random.hpp"

namespace kw4 {

enum class StructureKind { Para, Complex };

// (2,2) neutral or (0,4) definite.
enum class Signature { Neutral, Definite };

std::string_view to_string(StructureKind kind);
std::string_view to_string(Signature signature);

// -1 for para (J*g = -g), +1 for complex (J*g = g).
inline double compatibility_sign(StructureKind kind) { return kind == StructureKind::Para ? -1.0 : 1.0; }

// +1 for para (J^2 = Id), -1 for complex (J^2 = -Id).
inline double square_sign(StructureKind kind) { return kind == StructureKind::Para ? 1.0 : -1.0; }

inline constexpr double kStructureTolerance = 1e-12;
inline constexpr double kCompatibilityTolerance = 1e-10;

template <Scalar S>
struct Structure {
  StructureKind kind = StructureKind::Para;
  Matrix4<S> J = identity_matrix<S>();
};

// Defects are measured relative to max(1, |J|^2) so that conjugated
// structures with large entries are judged at their own scale.
template <Scalar S>
double structure_defect(const Structure<S>& s) {
  const double scale_j = std::max(1.0, max_abs(s.J));
  const Matrix4<S> sq = matmul(s.J, s.J) - scale(S(square_sign(s.kind)), identity_matrix<S>());
  return std::max(max_abs(sq) / (scale_j * scale_j), magnitude(trace(s.J)) / scale_j);
}

template <Scalar S>
Structure<S> make_structure(StructureKind kind, const Matrix4<S>& J) {
  Structure<S> s{kind, J};
  if (!(structure_defect(s) <= kStructureTolerance)) {
    throw InvalidStructure(kind == StructureKind::Para ? "J must satisfy J^2 = Id and tr J = 0"
                                                       : "J must satisfy J^2 = -Id and tr J = 0");
  }
  return s;
}

// J+ = diag(1, 1, -1, -1).
template <Scalar S>
Structure<S> standard_para_structure() {
  Matrix4<S> J{};
  J[0][0] = S(1.0);
  J[1][1] = S(1.0);
  J[2][2] = S(-1.0);
  J[3][3] = S(-1.0);
  return {StructureKind::Para, J};
}

// J- e1 = e2, J- e2 = -e1, J- e3 = e4, J- e4 = -e3.
template <Scalar S>
Structure<S> standard_complex_structure() {
  Matrix4<S> J{};
  J[1][0] = S(1.0);
  J[0][1] = S(-1.0);
  J[3][2] = S(1.0);
  J[2][3] = S(-1.0);
  return {StructureKind::Complex, J};
}

// (J*b)(X, Y) = b(JX, JY), i.e. J^T b J.
template <Scalar S>
Matrix4<S> pullback(const Matrix4<S>& b, const Matrix4<S>& J) {
  return matmul(transpose(J), matmul(b, J));
}

template <Scalar S>
struct Model {
  Structure<S> structure;
  MetricJet<S> metric;

  StructureKind kind() const { return structure.kind; }
  const Matrix4<S>& J() const { return structure.J; }
};

template <Scalar S>
double compatibility_defect(const MetricJet<S>& g, const Structure<S>& s) {
  const S sign(compatibility_sign(s.kind));
  const double scale_j = std::max(1.0, max_abs(s.J));
  const double ref = std::max(1.0, std::max(max_abs(g.g0), max_abs(g.g1))) * scale_j * scale_j;
  double d = max_abs(Matrix4<S>(pullback(g.g0, s.J) - scale(sign, g.g0)));
  for (int i = 0; i < kDim; ++i) d = std::max(d, max_abs(Matrix4<S>(pullback(g.g1[i], s.J) - scale(sign, g.g1[i]))));
  return d / ref;
}

template <Scalar S>
void validate_model(const Model<S>& m) {
  if (!(structure_defect(m.structure) <= kStructureTolerance)) throw InvalidStructure("structure fails J^2 / trace checks");
  const double ref = std::max(1.0, std::max(max_abs(m.metric.g0), max_abs(m.metric.g1)));
  if (!(symmetry_defect(m.metric) <= kStructureTolerance * ref)) throw InvalidModel("metric jet is not symmetric");
  if (!(compatibility_defect(m.metric, m.structure) <= kCompatibilityTolerance)) {
    throw InvalidModel(m.kind() == StructureKind::Para ? "metric is not anti-invariant under J (J*g != -g)"
                                                       : "metric is not invariant under J (J*g != g)");
  }
  LuInverse<S> lu;
  if (!try_invert(m.metric.g0, lu)) throw SingularMetric("g0 is degenerate");
}

template <Scalar S>
Model<S> make_model(const Structure<S>& s, const MetricJet<S>& g) {
  Model<S> m{s, g};
  validate_model(m);
  return m;
}

// Para: 1/2 (b - J*b); complex: 1/2 (b + J*b); slot-wise on g0 and g1[i].
template <Scalar S>
Matrix4<S> project_tensor(const Matrix4<S>& raw, const Structure<S>& s) {
  return scale(S(0.5), Matrix4<S>(raw + scale(S(compatibility_sign(s.kind)), pullback(raw, s.J))));
}

template <Scalar S>
MetricJet<S> project_compatible(const Matrix4<S>& g0raw, const Tensor3<S>& g1raw, const Structure<S>& s) {
  if (!(structure_defect(s) <= kStructureTolerance)) throw InvalidStructure("structure fails J^2 / trace checks");
  MetricJet<S> g;
  g.g0 = project_tensor(g0raw, s);
  for (int i = 0; i < kDim; ++i) g.g1[i] = project_tensor(g1raw[i], s);
  // det(g0raw - J*g0raw) = 16 det(g0) for para, and likewise for complex.
  LuInverse<S> lu;
  if (!try_invert(g.g0, lu)) throw DegenerateProjection("projected g0 is degenerate");
  return g;
}

// Omega_{ij} = sum_k g_{ik} J^k_j as jets of the affine metric.
template <Scalar S>
PForm<S> kahler_form(const Model<S>& m) {
  Matrix4<Jet1<S>> omega{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) {
      Jet1<S> acc;
      for (int k = 0; k < kDim; ++k) acc += m.metric.entry(i, k) * m.J()[k][j];
      omega[i][j] = acc;
    }
  const double ref = std::max(1.0, std::max(max_abs(m.metric.g0), max_abs(m.metric.g1))) *
                     std::max(1.0, max_abs(m.J()));
  PForm<S> f(2, JetOrder::First);
  for (int i = 0; i < kDim; ++i)
    for (int j = i + 1; j < kDim; ++j) {
      if (max_abs_diff(omega[i][j], -omega[j][i]) > kCompatibilityTolerance * ref) {
        throw InvalidModel("Kahler form is not antisymmetric; metric is not compatible with J");
      }
      f.set((1u << i) | (1u << j), omega[i][j]);
    }
  return f;
}

template <Scalar S>
VolumeElement<S> kahler_volume(const Model<S>& m, bool flip = false) {
  return volume_from_kahler(kahler_form(m), flip);
}

// Nijenhuis tensor of a variable structure at the origin: N[a][b][k] is the
// d_k component of N(d_a, d_b). The sign pattern is chosen from J(0)^2 = +-Id.
template <Scalar S>
Tensor3<S> nijenhuis(const JetMatrix<S>& Jjet) {
  const Matrix4<S> J0 = value_part(Jjet);
  const Matrix4<S> sq = matmul(J0, J0);
  const double scale_j = std::max(1.0, max_abs(J0));
  const double tol = kStructureTolerance * scale_j * scale_j;
  double sign;
  if (max_abs(Matrix4<S>(sq - identity_matrix<S>())) <= tol) {
    sign = 1.0;
  } else if (max_abs(Matrix4<S>(sq + identity_matrix<S>())) <= tol) {
    sign = -1.0;
  } else {
    throw InvalidStructure("nijenhuis: J(0) squares to neither Id nor -Id");
  }
  auto dJ = [&](int k, int j, int m) { return Jjet[k][j].partials[m]; };
  Tensor3<S> n{};
  for (int a = 0; a < kDim; ++a)
    for (int b = 0; b < kDim; ++b)
      for (int k = 0; k < kDim; ++k) {
        S acc{};
        for (int l = 0; l < kDim; ++l) {
          acc += J0[k][l] * dJ(l, a, b);
          acc -= J0[k][l] * dJ(l, b, a);
          acc += J0[l][a] * dJ(k, b, l);
          acc -= J0[l][b] * dJ(k, a, l);
        }
        n[a][b][k] = S(sign) * acc;
      }
  return n;
}

// Linear change of coordinates y = A x. Vectors push forward by A, so
// J -> A J A^-1, g0 -> A^-T g0 A^-1, and the derivative slot picks up A^-1.
template <Scalar S>
Model<S> gl4_action(const Matrix4<S>& A, const Model<S>& m) {
  LuInverse<S> lu;
  if (!try_invert(A, lu)) throw SingularTransform("gl4_action: transform is singular");
  const Matrix4<S>& B = lu.inverse;
  const Matrix4<S> Bt = transpose(B);
  Model<S> out;
  out.structure.kind = m.kind();
  out.structure.J = matmul(A, matmul(m.J(), B));
  out.metric.g0 = matmul(Bt, matmul(m.metric.g0, B));
  Tensor3<S> pulled{};
  for (int i = 0; i < kDim; ++i) pulled[i] = matmul(Bt, matmul(m.metric.g1[i], B));
  for (int j = 0; j < kDim; ++j) {
    Matrix4<S> acc{};
    for (int i = 0; i < kDim; ++i) acc = acc + scale(B[i][j], pulled[i]);
    out.metric.g1[j] = acc;
  }
  validate_model(out);
  return out;
}

// Extends the covector map e^i -> sum_j M[j][i] e^j to p-forms as an algebra
// morphism. With y = A x the coordinate form components transform by A^-T.
template <Scalar S>
PForm<S> transform_covectors(const Matrix4<S>& M, const PForm<S>& a) {
  JetMatrix<S> mj{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) mj[i][j] = Jet1<S>::constant(M[i][j]);
  PForm<S> r(a.degree(), a.order());
  for (unsigned out : basis_masks(a.degree()))
    for (unsigned in : basis_masks(a.degree())) {
      const S minor = forms_detail::minor_determinant(mj, out, in).value;
      if (minor == S{}) continue;
      r.add(out, minor * a[in]);
    }
  return r;
}

// Metric jet of e^{2f} g truncated to order 1; J unchanged.
template <Scalar S>
Model<S> conformal_rescale(const Model<S>& m, const S& f0, const Vector4<S>& df) {
  const Jet1<S> factor = jet_exp_scale(f0, df, S(2.0));
  Model<S> out = m;
  out.metric.g0 = scale(factor.value, m.metric.g0);
  for (int i = 0; i < kDim; ++i) {
    out.metric.g1[i] = scale(factor.partials[i], m.metric.g0) + scale(factor.value, m.metric.g1[i]);
  }
  return out;
}

// Canonical flat models. Para (2,2): g(e1,e3) = g(e2,e4) = 1 with J+ diagonal.
// Complex (2,2): g0 = diag(1,1,-1,-1). Complex (0,4): g0 = -Id, or +Id when
// positive_definite is set. Para (0,4) does not exist.
Model<double> standard_model(StructureKind kind, Signature signature, bool positive_definite = false);

inline Model<Complex> to_complex(const Model<double>& m) {
  return {{m.structure.kind, to_complex(m.structure.J)}, to_complex(m.metric)};
}

inline constexpr double kDefaultSampleCondition = 100.0;

// Sample options for random models.
struct SampleOptions {
  bool positive_definite = false;
  // Redraw when cond(g0) exceeds this; zero disables the bound.
  double max_condition = kDefaultSampleCondition;
  int max_retries = 100;
};

// Raw entries drawn from the generator, projected onto the structure, and
// redrawn on degenerate or badly conditioned projections. Definite requests
// start from -R^T R (or R^T R when positive_definite is set). Real complex-kind models are also
// redrawn until g0 has the requested signature.
template <Scalar S>
Model<S> random_model(const Structure<S>& s, Signature signature, Rng& rng, const SampleOptions& opts = {}) {
  if (s.kind == StructureKind::Para && signature == Signature::Definite) {
    throw UnsupportedSignature("para-Hermitian models have neutral signature (2,2)");
  }
  for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
    Matrix4<S> g0raw = rng.symmetric_matrix<S>();
    if (signature == Signature::Definite) {
      // R^T R stays definite under the J-invariant projection.
      const Matrix4<S> r = rng.matrix<S>();
      g0raw = scale(S(opts.positive_definite ? 1.0 : -1.0), matmul(transpose(r), r));
    }
    Tensor3<S> g1raw{};
    for (auto& slice : g1raw) slice = rng.symmetric_matrix<S>();
    MetricJet<S> g;
    try {
      g = project_compatible(g0raw, g1raw, s);
    } catch (const DegenerateProjection&) {
      continue;
    }
    if (opts.max_condition > 0.0 && !(condition_number(g.g0) <= opts.max_condition)) continue;
    if constexpr (!is_complex_v<S>) {
      if (s.kind == StructureKind::Complex) {
        const int neg = negative_eigenvalue_count(g.g0);
        const int want = signature == Signature::Neutral ? 2 : (opts.positive_definite ? 0 : 4);
        if (neg != want) continue;
      }
    }
    try {
      return make_model(s, g);
    } catch (const Error&) {
      continue;
    }
  }
  throw DegenerateProjection("random_model: retry cap reached");
}

template <Scalar S>
Structure<S> standard_structure(StructureKind kind) {
  return kind == StructureKind::Para ? standard_para_structure<S>() : standard_complex_structure<S>();
}

// Random invertible matrix with condition number at most max_condition.
template <Scalar S>
Matrix4<S> random_transform(Rng& rng, double max_condition, int max_retries = 1000) {
  for (int attempt = 0; attempt < max_retries; ++attempt) {
    const Matrix4<S> a = rng.matrix<S>();
    if (condition_number(a) <= max_condition) return a;
  }
  throw SingularTransform("random_transform: retry cap reached");
}

}  // namespace kw4
