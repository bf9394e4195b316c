#pragma once

// Differential forms on the 4-dimensional model with jet coefficients.
//
// A p-form stores one coefficient per strictly increasing multi-index
// (i1 < ... < ip), encoded as a bit mask over the coordinate indices 0..3.
// Forms are tagged with the jet order of their coefficients: order-1 forms
// carry first partials at the origin, order-0 forms carry values only and
// cannot be differentiated.

#include <algorithm>
#include <bit>
#include <initializer_list>
#include <span>
#include <vector>

#include "kw4/errors.hpp"
#include "kw4/jet.hpp"
#include "kw4/metric.hpp"

namespace kw4 {

enum class JetOrder : int { Value = 0, First = 1 };

class DegreeMismatch : public Error {
 public:
  using Error::Error;
};

namespace forms_detail {

inline constexpr unsigned kAllMask = 0b1111;

inline constexpr unsigned kMasks0[] = {0b0000};
inline constexpr unsigned kMasks1[] = {0b0001, 0b0010, 0b0100, 0b1000};
inline constexpr unsigned kMasks2[] = {0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100};
inline constexpr unsigned kMasks3[] = {0b0111, 0b1011, 0b1101, 0b1110};
inline constexpr unsigned kMasks4[] = {0b1111};

inline int mask_degree(unsigned mask) { return std::popcount(mask); }

inline std::vector<int> mask_indices(unsigned mask) {
  std::vector<int> idx;
  for (int i = 0; i < kDim; ++i)
    if (mask & (1u << i)) idx.push_back(i);
  return idx;
}

// Sign of the permutation that sorts (indices of a, then indices of b).
inline int merge_sign(unsigned a, unsigned b) {
  int inversions = 0;
  for (int i = 0; i < kDim; ++i) {
    if (!(a & (1u << i))) continue;
    for (int j = 0; j < i; ++j)
      if (b & (1u << j)) ++inversions;
  }
  return inversions % 2 ? -1 : 1;
}

}  // namespace forms_detail

// Masks of the given degree in lexicographic order of their multi-indices.
inline std::span<const unsigned> basis_masks(int degree) {
  using namespace forms_detail;
  switch (degree) {
    case 0: return kMasks0;
    case 1: return kMasks1;
    case 2: return kMasks2;
    case 3: return kMasks3;
    case 4: return kMasks4;
    default: throw DegreeOverflow("form degree must lie in 0..4");
  }
}

template <Scalar S>
class PForm {
 public:
  PForm(int degree, JetOrder order) : degree_(degree), order_(order) {
    if (degree < 0 || degree > kDim) throw DegreeOverflow("form degree must lie in 0..4");
  }

  // dx^{i1} ^ ... ^ dx^{ip} for 0-based, not necessarily sorted indices.
  static PForm basis(std::initializer_list<int> indices, JetOrder order = JetOrder::First) {
    return basis(std::span<const int>(indices.begin(), indices.size()), order);
  }

  static PForm basis(std::span<const int> indices, JetOrder order = JetOrder::First) {
    PForm f(static_cast<int>(indices.size()), order);
    unsigned mask = 0;
    int inversions = 0;
    std::vector<int> seen;
    for (int i : indices) {
      if (i < 0 || i >= kDim) throw DegreeOverflow("basis index out of range");
      if (mask & (1u << i)) return f;
      for (int s : seen)
        if (s > i) ++inversions;
      seen.push_back(i);
      mask |= 1u << i;
    }
    f.coeffs_[mask] = Jet1<S>::constant(S(inversions % 2 ? -1.0 : 1.0));
    return f;
  }

  int degree() const { return degree_; }
  JetOrder order() const { return order_; }

  const Jet1<S>& operator[](unsigned mask) const { return coeffs_[check(mask)]; }

  void set(unsigned mask, const Jet1<S>& c) {
    coeffs_[check(mask)] = order_ == JetOrder::Value ? c.truncated() : c;
  }

  void add(unsigned mask, const Jet1<S>& c) {
    set(mask, coeffs_[check(mask)] + c);
  }

  // Coefficient for an arbitrary ordering of distinct indices, with the
  // permutation sign applied; repeated indices give zero.
  Jet1<S> component(std::initializer_list<int> indices) const {
    if (static_cast<int>(indices.size()) != degree_) throw DegreeMismatch("component: index count != degree");
    const PForm unit = basis(indices, JetOrder::Value);
    for (unsigned m : basis_masks(degree_)) {
      const S s = unit.coeffs_[m].value;
      if (magnitude(s) != 0.0) return s * coeffs_[m];
    }
    return {};
  }

  PForm with_order(JetOrder order) const {
    PForm f(degree_, order);
    for (unsigned m : basis_masks(degree_)) f.set(m, coeffs_[m]);
    return f;
  }

  PForm& operator+=(const PForm& o) {
    require_same_degree(o);
    order_ = std::min(order_, o.order_);
    for (unsigned m : basis_masks(degree_)) set(m, coeffs_[m] + o.coeffs_[m]);
    return *this;
  }
  PForm& operator-=(const PForm& o) {
    require_same_degree(o);
    order_ = std::min(order_, o.order_);
    for (unsigned m : basis_masks(degree_)) set(m, coeffs_[m] - o.coeffs_[m]);
    return *this;
  }
  PForm& operator*=(const S& s) {
    for (unsigned m : basis_masks(degree_)) coeffs_[m] *= s;
    return *this;
  }
  friend PForm operator+(PForm a, const PForm& b) { return a += b; }
  friend PForm operator-(PForm a, const PForm& b) { return a -= b; }
  friend PForm operator*(const S& s, PForm a) { return a *= s; }
  friend PForm operator-(PForm a) { return a *= S(-1.0); }

 private:
  unsigned check(unsigned mask) const {
    if (mask > forms_detail::kAllMask || forms_detail::mask_degree(mask) != degree_) {
      throw DegreeMismatch("multi-index does not match form degree");
    }
    return mask;
  }
  void require_same_degree(const PForm& o) const {
    if (o.degree_ != degree_) throw DegreeMismatch("forms of different degree");
  }

  int degree_;
  JetOrder order_;
  std::array<Jet1<S>, 16> coeffs_{};
};

// Largest coefficient difference (values and, where both carry them, partials).
template <Scalar S>
double max_abs_diff(const PForm<S>& a, const PForm<S>& b) {
  if (a.degree() != b.degree()) throw DegreeMismatch("forms of different degree");
  const bool jets = a.order() == JetOrder::First && b.order() == JetOrder::First;
  double d = 0.0;
  for (unsigned m : basis_masks(a.degree())) {
    d = std::max(d, jets ? max_abs_diff(a[m], b[m]) : magnitude(a[m].value - b[m].value));
  }
  return d;
}

// The 4-form mu = density * dx^1 ^ dx^2 ^ dx^3 ^ dx^4.
template <Scalar S>
struct VolumeElement {
  Jet1<S> density;
  // True when the orientation is opposite to the one induced by the Kahler form.
  bool flipped = false;
};

template <Scalar S>
PForm<S> wedge(const PForm<S>& a, const PForm<S>& b) {
  if (a.degree() + b.degree() > kDim) throw DegreeOverflow("wedge: total degree exceeds 4");
  PForm<S> r(a.degree() + b.degree(), std::min(a.order(), b.order()));
  for (unsigned ma : basis_masks(a.degree())) {
    if (a[ma].value == S{} && max_abs(a[ma].partials) == 0.0) continue;
    for (unsigned mb : basis_masks(b.degree())) {
      if (ma & mb) continue;
      const int sign = forms_detail::merge_sign(ma, mb);
      r.add(ma | mb, S(static_cast<double>(sign)) * jet_mul(a[ma], b[mb]));
    }
  }
  return r;
}

// mu = 1/2 Omega ^ Omega, optionally with the orientation reversed.
template <Scalar S>
VolumeElement<S> volume_from_kahler(const PForm<S>& omega, bool flip = false) {
  if (omega.degree() != 2) throw DegreeMismatch("volume_from_kahler: Omega must be a 2-form");
  Jet1<S> density = S(0.5) * wedge(omega, omega)[forms_detail::kAllMask];
  if (flip) density = -density;
  if (!(magnitude(density.value) > kSingularValueThreshold)) {
    throw SingularMetric("volume element vanishes at the origin");
  }
  return {density, flip};
}

namespace forms_detail {

// det[m(rows[a], cols[b])] by permutation expansion in jet arithmetic.
template <Scalar S>
Jet1<S> minor_determinant(const JetMatrix<S>& m, unsigned rows, unsigned cols) {
  const std::vector<int> r = mask_indices(rows);
  std::vector<int> c = mask_indices(cols);
  if (r.empty()) return Jet1<S>::constant(S(1.0));
  Jet1<S> det;
  std::vector<int> perm(c.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<int>(i);
  do {
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    Jet1<S> term = Jet1<S>::constant(S(inversions % 2 ? -1.0 : 1.0));
    for (std::size_t i = 0; i < perm.size(); ++i) term = jet_mul(term, m[r[i]][c[perm[i]]]);
    det += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return det;
}

template <Scalar S>
JetMatrix<S> truncate(const JetMatrix<S>& m) {
  JetMatrix<S> t{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) t[i][j] = m[i][j].truncated();
  return t;
}

template <Scalar S>
Jet1<S> form_inner(const PForm<S>& a, const PForm<S>& b, const JetMatrix<S>& ginv) {
  if (a.degree() != b.degree()) throw DegreeMismatch("form_inner: degrees differ");
  const bool jets = a.order() == JetOrder::First && b.order() == JetOrder::First;
  const JetMatrix<S> h = jets ? ginv : truncate(ginv);
  Jet1<S> acc;
  for (unsigned mi : basis_masks(a.degree())) {
    for (unsigned mj : basis_masks(b.degree())) {
      acc += jet_mul(jet_mul(a[mi], b[mj]), minor_determinant(h, mi, mj));
    }
  }
  return jets ? acc : acc.truncated();
}

// Raise all indices with g^-1 and contract with mu.
template <Scalar S>
PForm<S> hodge_star(const PForm<S>& a, const JetMatrix<S>& ginv, const VolumeElement<S>& mu) {
  const int p = a.degree();
  const bool jets = a.order() == JetOrder::First;
  const JetMatrix<S> h = jets ? ginv : truncate(ginv);
  const Jet1<S> density = jets ? mu.density : mu.density.truncated();
  PForm<S> r(kDim - p, a.order());
  for (unsigned mi : basis_masks(p)) {
    Jet1<S> raised;
    for (unsigned ma : basis_masks(p)) raised += jet_mul(minor_determinant(h, mi, ma), a[ma]);
    const unsigned comp = kAllMask & ~mi;
    const int sign = merge_sign(mi, comp);
    r.add(comp, S(static_cast<double>(sign)) * jet_mul(density, raised));
  }
  return r;
}

}  // namespace forms_detail

template <Scalar S>
JetMatrix<S> inverse_metric(const MetricJet<S>& g) {
  return jet_matrix_inverse(g.as_jet_matrix());
}

// <e^I, e^J> = det[g^{i_a j_b}], extended bilinearly.
template <Scalar S>
Jet1<S> form_inner(const PForm<S>& a, const PForm<S>& b, const MetricJet<S>& g) {
  return forms_detail::form_inner(a, b, inverse_metric(g));
}

template <Scalar S>
PForm<S> hodge_star(const PForm<S>& a, const MetricJet<S>& g, const VolumeElement<S>& mu) {
  return forms_detail::hodge_star(a, inverse_metric(g), mu);
}

// One derivative is consumed, so the result carries values only.
template <Scalar S>
PForm<S> exterior_derivative(const PForm<S>& a) {
  if (a.order() != JetOrder::First) throw OrderExhausted("exterior_derivative: form carries no partials");
  if (a.degree() >= kDim) throw DegreeOverflow("exterior_derivative: degree 4 has no successor");
  PForm<S> r(a.degree() + 1, JetOrder::Value);
  for (unsigned ma : basis_masks(a.degree())) {
    for (int i = 0; i < kDim; ++i) {
      const unsigned mi = 1u << i;
      if (ma & mi) continue;
      const int sign = forms_detail::merge_sign(mi, ma);
      r.add(ma | mi, Jet1<S>::constant(S(static_cast<double>(sign)) * a[ma].partials[i]));
    }
  }
  return r;
}

// delta a = - * d * a, inner star at jet order 1, outer star on g0 only.
template <Scalar S>
PForm<S> codifferential_2form(const PForm<S>& a, const MetricJet<S>& g, const VolumeElement<S>& mu) {
  if (a.degree() != 2) throw DegreeMismatch("codifferential_2form: expected a 2-form");
  if (a.order() != JetOrder::First) throw OrderExhausted("codifferential_2form: form carries no partials");
  const JetMatrix<S> ginv = inverse_metric(g);
  const PForm<S> inner = forms_detail::hodge_star(a, ginv, mu);
  const PForm<S> d = exterior_derivative(inner);
  return -forms_detail::hodge_star(d, ginv, mu);
}

}  // namespace kw4
