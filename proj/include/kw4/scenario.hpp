#pragma once

// Scenario files: JSON objects describing one run of the harness.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "kw4/errors.hpp"
#include "kw4/linalg.hpp"
#include "kw4/scalar.hpp"
#include "kw4/structures.hpp"

namespace kw4 {

enum class Mode { Verify, Uniqueness, Linearization, Continuation, StarTable, Example32, OracleCompare, Gauge };
enum class ScalarField { Real, Complex };

std::string_view to_string(Mode m);
std::string_view to_string(ScalarField s);
std::optional<Mode> parse_mode(std::string_view s);
std::optional<StructureKind> parse_kind(std::string_view s);
std::optional<Signature> parse_signature(std::string_view s);

struct Scenario {
  Mode mode = Mode::Verify;
  StructureKind kind = StructureKind::Para;
  Signature signature = Signature::Neutral;
  ScalarField scalars = ScalarField::Real;
  // Explicit data. Stored complex; real scenarios reject nonzero imaginary parts.
  std::optional<Matrix4<Complex>> g0;
  std::optional<Tensor3<Complex>> g1;
  std::optional<Matrix4<Complex>> J;
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::optional<double> tolerance;
  // example-3-2: fixed f; absent means draw f per trial.
  std::optional<std::array<double, 4>> f;
  double step = 1e-4;  // oracle-compare
  bool flip_orientation = false;
  bool positive_definite = false;
};

// Parse or validation failure; line is 1-based, 0 when unknown.
class ScenarioError : public Error {
 public:
  ScenarioError(std::string source, int line, const std::string& what);
  const std::string& source() const { return source_; }
  int line() const { return line_; }
  // "source:line: error: what"
  std::string message() const;

 private:
  std::string source_;
  int line_;
};

Scenario parse_scenario(std::string_view text, const std::string& source = "<scenario>");
Scenario load_scenario(const std::string& path);

// The structure used for random draws or explicit data.
template <Scalar S>
Structure<S> scenario_structure(const Scenario& sc);

// The fixed model when g0 is present, projected onto the structure.
template <Scalar S>
Model<S> explicit_model(const Scenario& sc);

}  // namespace kw4
