#include "kw4/structures.hpp"

namespace kw4 {

std::string_view to_string(StructureKind kind) { return kind == StructureKind::Para ? "para" : "complex"; }

std::string_view to_string(Signature signature) { return signature == Signature::Neutral ? "2,2" : "0,4"; }

Model<double> standard_model(StructureKind kind, Signature signature, bool positive_definite) {
  MetricJet<double> g;
  if (kind == StructureKind::Para) {
    if (signature != Signature::Neutral) {
      throw UnsupportedSignature("para-Hermitian models have neutral signature (2,2)");
    }
    g.g0[0][2] = g.g0[2][0] = 1.0;
    g.g0[1][3] = g.g0[3][1] = 1.0;
    return make_model(standard_para_structure<double>(), g);
  }
  if (signature == Signature::Neutral) {
    g.g0[0][0] = g.g0[1][1] = 1.0;
    g.g0[2][2] = g.g0[3][3] = -1.0;
  } else {
    const double d = positive_definite ? 1.0 : -1.0;
    for (int i = 0; i < kDim; ++i) g.g0[i][i] = d;
  }
  return make_model(standard_complex_structure<double>(), g);
}

}  // namespace kw4
