#include "kw4/scenario.hpp"

#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <json.hpp>

namespace kw4 {

using nlohmann::json;

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::Verify: return "verify";
    case Mode::Uniqueness: return "uniqueness";
    case Mode::Linearization: return "linearization";
    case Mode::Continuation: return "continuation";
    case Mode::StarTable: return "star-table";
    case Mode::Example32: return "example-3-2";
    case Mode::OracleCompare: return "oracle-compare";
    case Mode::Gauge: return "gauge";
  }
  return "unknown";
}

std::string_view to_string(ScalarField s) { return s == ScalarField::Real ? "real" : "complex"; }

std::optional<Mode> parse_mode(std::string_view s) {
  for (Mode m : {Mode::Verify, Mode::Uniqueness, Mode::Linearization, Mode::Continuation, Mode::StarTable,
                 Mode::Example32, Mode::OracleCompare, Mode::Gauge})
    if (to_string(m) == s) return m;
  return std::nullopt;
}

std::optional<StructureKind> parse_kind(std::string_view s) {
  if (s == "para") return StructureKind::Para;
  if (s == "complex") return StructureKind::Complex;
  return std::nullopt;
}

std::optional<Signature> parse_signature(std::string_view s) {
  if (s == "2,2" || s == "(2,2)") return Signature::Neutral;
  if (s == "0,4" || s == "(0,4)") return Signature::Definite;
  return std::nullopt;
}

ScenarioError::ScenarioError(std::string source, int line, const std::string& what)
    : Error(what), source_(std::move(source)), line_(line) {}

std::string ScenarioError::message() const {
  std::ostringstream os;
  os << source_ << ':' << line_ << ": error: " << what();
  return os.str();
}

namespace {

int line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  int line = 1;
  for (std::size_t i = 0; i < offset; ++i)
    if (text[i] == '\n') ++line;
  return line;
}

class Parser {
 public:
  Parser(std::string_view text, std::string source) : text_(text), source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    throw ScenarioError(source_, line_of_key(key), key.empty() ? what : "'" + key + "': " + what);
  }

  int line_of_key(const std::string& key) const {
    if (key.empty()) return 1;
    const std::regex re("\"" + key + "\"\\s*:");
    std::cmatch m;
    if (std::regex_search(text_.data(), text_.data() + text_.size(), m, re))
      return line_of_offset(text_, static_cast<std::size_t>(m.position(0)));
    return 1;
  }

  Complex scalar(const json& v, const std::string& key, bool real_only) const {
    if (v.is_number()) return Complex(v.get<double>());
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
      const Complex z(v[0].get<double>(), v[1].get<double>());
      if (real_only && z.im != 0.0) fail(key, "imaginary part given but scalars is \"real\"");
      return z;
    }
    fail(key, "expected a number or a [re, im] pair");
  }

  Matrix4<Complex> matrix(const json& v, const std::string& key, bool real_only) const {
    if (!v.is_array() || v.size() != kDim) fail(key, "expected a 4x4 nested array");
    Matrix4<Complex> m{};
    for (int i = 0; i < kDim; ++i) {
      const json& row = v[static_cast<std::size_t>(i)];
      if (!row.is_array() || row.size() != kDim) fail(key, "expected a 4x4 nested array");
      for (int j = 0; j < kDim; ++j) m[i][j] = scalar(row[static_cast<std::size_t>(j)], key, real_only);
    }
    return m;
  }

  Tensor3<Complex> tensor(const json& v, const std::string& key, bool real_only) const {
    if (!v.is_array() || v.size() != kDim) fail(key, "expected a 4x4x4 nested array");
    Tensor3<Complex> t{};
    for (int i = 0; i < kDim; ++i) t[i] = matrix(v[static_cast<std::size_t>(i)], key, real_only);
    return t;
  }

 private:
  std::string_view text_;
  std::string source_;
};

const std::set<std::string> kKnownKeys = {"mode",  "kind", "signature", "scalars", "g0",
                                          "g1",    "J",    "seed",      "trials",  "tolerance",
                                          "f",     "step", "flip_orientation", "positive_definite",
                                          "description"};

std::string string_field(const Parser& p, const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_string()) p.fail(key, "expected a string");
  return v.get<std::string>();
}

bool bool_field(const Parser& p, const json& doc, const std::string& key) {
  const json& v = doc.at(key);
  if (!v.is_boolean()) p.fail(key, "expected true or false");
  return v.get<bool>();
}

Matrix4<double> real_matrix(const Matrix4<Complex>& m) {
  Matrix4<double> r{};
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) r[i][j] = m[i][j].re;
  return r;
}

template <Scalar S>
Matrix4<S> narrow(const Matrix4<Complex>& m) {
  if constexpr (is_complex_v<S>) {
    return m;
  } else {
    return real_matrix(m);
  }
}

}  // namespace

template <Scalar S>
Structure<S> scenario_structure(const Scenario& sc) {
  if (sc.J) return make_structure(sc.kind, narrow<S>(*sc.J));
  return standard_structure<S>(sc.kind);
}

template <Scalar S>
Model<S> explicit_model(const Scenario& sc) {
  if (!sc.g0) throw InvalidModel("scenario has no explicit g0");
  const Structure<S> s = scenario_structure<S>(sc);
  Tensor3<S> g1{};
  if (sc.g1)
    for (int i = 0; i < kDim; ++i) g1[i] = narrow<S>((*sc.g1)[i]);
  return make_model(s, project_compatible(narrow<S>(*sc.g0), g1, s));
}

template Structure<double> scenario_structure<double>(const Scenario&);
template Structure<Complex> scenario_structure<Complex>(const Scenario&);
template Model<double> explicit_model<double>(const Scenario&);
template Model<Complex> explicit_model<Complex>(const Scenario&);

Scenario parse_scenario(std::string_view text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    std::string what = e.what();
    if (const auto pos = what.find("parse error"); pos != std::string::npos) what = what.substr(pos);
    throw ScenarioError(source, line_of_offset(text, at), what);
  }
  const Parser p(text, source);
  if (!doc.is_object()) p.fail("", "scenario must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (!kKnownKeys.contains(key)) p.fail(key, "unknown field");

  Scenario sc;
  if (!doc.contains("mode")) p.fail("", "missing required field 'mode'");
  const std::string mode = string_field(p, doc, "mode");
  if (auto m = parse_mode(mode)) {
    sc.mode = *m;
  } else {
    p.fail("mode", "unknown mode \"" + mode + "\"");
  }
  if (doc.contains("kind")) {
    const std::string k = string_field(p, doc, "kind");
    if (auto v = parse_kind(k)) {
      sc.kind = *v;
    } else {
      p.fail("kind", "expected \"para\" or \"complex\"");
    }
  }
  if (doc.contains("signature")) {
    const std::string s = string_field(p, doc, "signature");
    if (auto v = parse_signature(s)) {
      sc.signature = *v;
    } else {
      p.fail("signature", "expected \"2,2\" or \"0,4\"");
    }
  }
  if (sc.kind == StructureKind::Para && sc.signature == Signature::Definite)
    p.fail("signature", "para-Hermitian models have signature 2,2");
  if (doc.contains("scalars")) {
    const std::string s = string_field(p, doc, "scalars");
    if (s == "real") {
      sc.scalars = ScalarField::Real;
    } else if (s == "complex") {
      sc.scalars = ScalarField::Complex;
    } else {
      p.fail("scalars", "expected \"real\" or \"complex\"");
    }
  }
  if (doc.contains("seed")) {
    const json& v = doc["seed"];
    if (!v.is_number_unsigned()) p.fail("seed", "expected an unsigned integer");
    sc.seed = v.get<std::uint64_t>();
  }
  if (doc.contains("trials")) {
    const json& v = doc["trials"];
    if (!v.is_number_integer() || v.get<long long>() <= 0) p.fail("trials", "expected a positive integer");
    sc.trials = v.get<std::size_t>();
  }
  if (doc.contains("tolerance")) {
    const json& v = doc["tolerance"];
    if (!v.is_number() || !(v.get<double>() > 0.0)) p.fail("tolerance", "expected a positive number");
    sc.tolerance = v.get<double>();
  }
  if (doc.contains("step")) {
    const json& v = doc["step"];
    if (!v.is_number() || !(v.get<double>() >= 1e-6 && v.get<double>() <= 1e-2))
      p.fail("step", "expected a number in [1e-6, 1e-2]");
    sc.step = v.get<double>();
  }
  if (doc.contains("f")) {
    const json& v = doc["f"];
    if (!v.is_array() || v.size() != 4) p.fail("f", "expected four numbers");
    std::array<double, 4> f{};
    for (std::size_t i = 0; i < 4; ++i) {
      if (!v[i].is_number()) p.fail("f", "expected four numbers");
      f[i] = v[i].get<double>();
    }
    sc.f = f;
  }
  if (doc.contains("flip_orientation")) sc.flip_orientation = bool_field(p, doc, "flip_orientation");
  if (doc.contains("positive_definite")) sc.positive_definite = bool_field(p, doc, "positive_definite");
  if (doc.contains("description") && !doc["description"].is_string()) p.fail("description", "expected a string");

  const bool real_only = sc.scalars == ScalarField::Real;
  if (doc.contains("J")) sc.J = p.matrix(doc["J"], "J", real_only);
  if (doc.contains("g0")) sc.g0 = p.matrix(doc["g0"], "g0", real_only);
  if (doc.contains("g1")) {
    if (!sc.g0) p.fail("g1", "g1 requires g0");
    sc.g1 = p.tensor(doc["g1"], "g1", real_only);
  }

  const bool fixed_para = sc.mode == Mode::StarTable || sc.mode == Mode::Example32;
  if (fixed_para && (sc.kind != StructureKind::Para || sc.g0 || sc.J))
    p.fail("mode", "mode \"" + mode + "\" uses the fixed para model; drop kind, g0 and J");
  if (sc.mode == Mode::Continuation && (sc.g0 || sc.J || sc.kind != StructureKind::Para))
    p.fail("mode", "continuation draws its own para data; drop kind, g0 and J");
  if (sc.mode == Mode::Linearization && sc.g0)
    p.fail("g0", "linearization perturbs the flat model; explicit g0 is not accepted");

  try {
    if (sc.J) {
      if (real_only) {
        (void)scenario_structure<double>(sc);
      } else {
        (void)scenario_structure<Complex>(sc);
      }
    }
  } catch (const Error& e) {
    p.fail("J", e.what());
  }
  try {
    if (sc.g0) {
      if (real_only) {
        (void)explicit_model<double>(sc);
      } else {
        (void)explicit_model<Complex>(sc);
      }
    }
  } catch (const Error& e) {
    p.fail("g0", e.what());
  }
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError(path, 0, "cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

}  // namespace kw4
