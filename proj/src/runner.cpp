#include "kw4/runner.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "kw4/continuation.hpp"
#include "kw4/weyl.hpp"

namespace kw4 {

bool RunResult::all_pass() const {
  return !records.empty() && std::all_of(records.begin(), records.end(), [](const Record& r) { return r.pass; });
}

std::size_t RunResult::pass_count() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const Record& r) { return r.pass; }));
}

double RunResult::max_residual() const {
  double m = 0.0;
  for (const Record& r : records)
    if (r.residual) m = std::max(m, *r.residual);
  return m;
}

double default_tolerance(Mode m) {
  switch (m) {
    case Mode::Verify: return kDefaultTolerance;
    case Mode::Uniqueness: return 1e-7;
    case Mode::Linearization: return 1e-10;
    case Mode::Continuation: return 1e-8;
    case Mode::StarTable: return 0.0;
    case Mode::Example32: return 1e-12;
    case Mode::OracleCompare: return 1e-6;
    case Mode::Gauge: return 1e-9;
  }
  return kDefaultTolerance;
}

namespace {

std::string num(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << (x + 0.0);
  return os.str();
}

std::string sci(double x) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << x;
  return os.str();
}

std::string covector_text(const Vector4<double>& v) {
  return "(" + num(v[0]) + ", " + num(v[1]) + ", " + num(v[2]) + ", " + num(v[3]) + ")";
}

std::string basis_name(unsigned mask) {
  std::string s = "e";
  for (int i : forms_detail::mask_indices(mask)) s += static_cast<char>('1' + i);
  return s;
}

std::string form_text(const PForm<double>& a) {
  std::string s;
  for (unsigned m : basis_masks(a.degree())) {
    const double c = a[m].value;
    if (c == 0.0) continue;
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    if (std::abs(c) != 1.0) s += num(std::abs(c)) + " ";
    s += basis_name(m);
  }
  return s.empty() ? "0" : s;
}

template <Scalar S>
Model<S> trial_model(const Scenario& sc, Rng& rng) {
  if (sc.g0) return explicit_model<S>(sc);
  SampleOptions o;
  o.positive_definite = sc.positive_definite;
  return random_model(scenario_structure<S>(sc), sc.signature, rng, o);
}

template <Scalar S>
Model<S> base_model(const Scenario& sc) {
  const Model<double> m = standard_model(sc.kind, sc.signature, sc.positive_definite);
  if constexpr (is_complex_v<S>) {
    return to_complex(m);
  } else {
    return m;
  }
}

template <Scalar S>
double tensor_diff(const Tensor3<S>& a, const Tensor3<S>& b) {
  return max_abs_diff(a, b);
}

template <Scalar S>
Record verify_trial(const Scenario& sc, std::size_t t, double tol) {
  Rng rng = Rng::for_trial(sc.seed, t);
  const Model<S> m = trial_model<S>(sc, rng);
  const KwReport<S> r = verify_kw(m, {tol, sc.flip_orientation});
  return {.trial = t, .residual = r.residual, .pass = r.pass};
}

template <Scalar S>
Record uniqueness_trial(const Scenario& sc, std::size_t t, double tol) {
  Rng rng = Rng::for_trial(sc.seed, t);
  Model<S> m = trial_model<S>(sc, rng);
  m = gl4_action(random_transform<S>(rng, 10.0), m);
  const double residual = verify_kw(m, {tol, sc.flip_orientation}).residual;
  const int rank = uniqueness_rank(m);
  return {.trial = t, .residual = residual, .pass = rank == kDim && residual <= tol, .rank = rank};
}

template <Scalar S>
Matrix4<S> compatible_tensor(const Structure<S>& s, Rng& rng) {
  return project_tensor(rng.symmetric_matrix<S>(), s);
}

// Trials 0-3 of a para run use the spanning set; later trials draw a random
// compatible perturbation in every direction and also check additivity.
template <Scalar S>
Record linearization_trial(const Scenario& sc, std::size_t t, double tol) {
  const Model<S> base = base_model<S>(sc);
  const KwOptions opts{tol, sc.flip_orientation};
  Record rec{.trial = t};
  if (sc.kind == StructureKind::Para && t < 4) {
    static const char* names[] = {"dx1 o dx3", "dx1 o dx4", "dx2 o dx3", "dx2 o dx4"};
    Matrix4<S> eps{};
    const Matrix4<double> e = anti_invariant_spanning_set()[t];
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) eps[i][j] = S(e[i][j]);
    rec.residual = linearization_map(base, {eps}, opts).max_entry();
    rec.label = names[t];
  } else {
    Rng rng = Rng::for_trial(sc.seed, t);
    Tensor3<S> eps{};
    for (auto& slice : eps) slice = compatible_tensor(base.structure, rng);
    const Tensor3<S> full = linearization_value(base, eps, opts);
    Tensor3<S> sum{};
    for (int i = 0; i < kDim; ++i) {
      Tensor3<S> one{};
      one[i] = eps[i];
      const Tensor3<S> part = linearization_value(base, one, opts);
      for (int a = 0; a < kDim; ++a) sum[a] = sum[a] + part[a];
    }
    rec.residual = std::max(max_abs(full), tensor_diff(full, sum));
    rec.label = "random";
  }
  rec.pass = *rec.residual <= tol;
  return rec;
}

template <Scalar S>
Record oracle_trial(const Scenario& sc, std::size_t t, double tol) {
  Rng rng = Rng::for_trial(sc.seed, t);
  const Model<S> m = trial_model<S>(sc, rng);
  const FdOracleResult<S> o = fd_oracle(m, sc.step, sc.flip_orientation);
  const LeeForm<S> lf = lee_form(m, sc.flip_orientation);
  const Connection<S> lc = levi_civita(m);
  const Connection<S> w = weyl_connection(m, lf);
  const NablaJ<S> nj = nabla_J(w, m.structure);
  double d = max_abs_diff(o.phi, lf.phi);
  d = std::max(d, tensor_diff(o.gamma, lc.gamma));
  d = std::max(d, tensor_diff(o.weyl_gamma, w.gamma));
  d = std::max(d, tensor_diff(o.nabla_j, nj.value));
  return {.trial = t, .residual = d, .pass = d <= tol};
}

template <Scalar S>
Record gauge_trial(const Scenario& sc, std::size_t t, double tol) {
  Rng rng = Rng::for_trial(sc.seed, t);
  const Model<S> m = trial_model<S>(sc, rng);
  const S f0 = rng.draw<S>();
  const Vector4<S> df = rng.vector<S>();
  const Model<S> scaled = make_model(m.structure, conformal_rescale(m, f0, df).metric);
  const LeeForm<S> a = lee_form(m, sc.flip_orientation);
  const LeeForm<S> b = lee_form(scaled, sc.flip_orientation);
  Vector4<S> expected{};
  for (int i = 0; i < kDim; ++i) expected[i] = a.phi[i] - df[i];
  double d = max_abs_diff(b.phi, expected);
  d = std::max(d, tensor_diff(weyl_connection(scaled, b).gamma, weyl_connection(m, a).gamma));
  return {.trial = t, .residual = d, .pass = d <= tol};
}

struct ExampleOutcome {
  double residual = 0.0;
  Vector4<double> phi{};
  Vector4<double> delta{};
};

ExampleOutcome example_check(const std::array<double, 4>& f, const Scenario& sc) {
  const auto [f1, f2, f3, f4] = f;
  const Model<double> m = example_model(f);
  const KwReport<double> kw = verify_kw(m, {kDefaultTolerance, sc.flip_orientation});
  const Connection<double> lc = levi_civita(m);
  const Connection<double> w = weyl_connection(m, kw.phi);
  const NablaJ<double> lcj = nabla_J(lc, m.structure);
  ExampleOutcome out;
  out.phi = kw.phi.phi;
  out.delta = codifferential_of_kahler(m, sc.flip_orientation);
  const auto dev = [&](double got, double want) { out.residual = std::max(out.residual, std::abs(got - want)); };
  out.residual = kw.residual;
  dev(out.phi[0], -f1);
  dev(out.phi[1], 0.0);
  dev(out.phi[2], -f3);
  dev(out.phi[3], 0.0);
  dev(kw.phi.phi_sharp[0], -f3);
  dev(kw.phi.phi_sharp[1], 0.0);
  dev(kw.phi.phi_sharp[2], -f1);
  dev(kw.phi.phi_sharp[3], 0.0);
  dev(out.delta[0], -2.0 * f1);
  dev(out.delta[1], 0.0);
  dev(out.delta[2], 2.0 * f3);
  dev(out.delta[3], 0.0);
  const Vector4<double> d24{-f3, 0.0, -f1, 0.0};
  const Vector4<double> d44{0.0, 0.0, 0.0, 2.0 * f4};
  for (int k = 0; k < kDim; ++k) {
    dev(lc.gamma[1][3][k], d24[k]);
    dev(lc.gamma[3][1][k], d24[k]);
    dev(lc.gamma[3][3][k], d44[k]);
    dev(w.gamma[1][3][k] - lc.gamma[1][3][k], -d24[k]);
  }
  dev(lcj.value[1][2][1], -2.0 * f3);
  (void)f2;
  return out;
}

template <Scalar S>
using TrialFn = Record (*)(const Scenario&, std::size_t, double);

template <Scalar S>
TrialFn<S> trial_function(Mode m) {
  switch (m) {
    case Mode::Verify: return &verify_trial<S>;
    case Mode::Uniqueness: return &uniqueness_trial<S>;
    case Mode::Linearization: return &linearization_trial<S>;
    case Mode::OracleCompare: return &oracle_trial<S>;
    case Mode::Gauge: return &gauge_trial<S>;
    default: return nullptr;
  }
}

Record guarded(std::size_t t, const std::function<Record()>& body) {
  try {
    return body();
  } catch (const Error& e) {
    return {.trial = t, .pass = false, .error = e.what()};
  }
}

void run_sweep(const Scenario& sc, unsigned jobs, RunResult& out) {
  std::vector<Record> recs(sc.trials);
  if (sc.scalars == ScalarField::Complex) {
    const TrialFn<Complex> fn = trial_function<Complex>(sc.mode);
    parallel_for(sc.trials, jobs, [&](std::size_t t) { recs[t] = guarded(t, [&] { return fn(sc, t, out.tolerance); }); });
  } else {
    const TrialFn<double> fn = trial_function<double>(sc.mode);
    parallel_for(sc.trials, jobs, [&](std::size_t t) { recs[t] = guarded(t, [&] { return fn(sc, t, out.tolerance); }); });
  }
  out.records = std::move(recs);
}

void run_continuation(const Scenario& sc, const std::optional<double>& tol, unsigned jobs, RunResult& out) {
  ContinuationOptions opts;
  if (tol) opts.tolerance_real_data = opts.tolerance_complex_data = opts.tolerance_complex_structure = *tol;
  const Battery batteries[] = {Battery::RealData, Battery::ComplexData, Battery::ComplexStructure};
  std::vector<Record> recs(3 * sc.trials);
  parallel_for(recs.size(), jobs, [&](std::size_t i) {
    const Battery b = batteries[i / sc.trials];
    const std::size_t t = i % sc.trials;
    recs[i] = guarded(t, [&] {
      const ContinuationRecord c = continuation_trial(b, sc.seed, sc.trials, t, opts);
      return Record{.trial = t, .residual = c.residual, .pass = c.pass};
    });
    recs[i].battery = std::string(to_string(b));
  });
  out.records = std::move(recs);
}

void run_star_table(RunResult& out) {
  const Model<double> m = standard_model(StructureKind::Para, Signature::Neutral);
  const VolumeElement<double> mu = kahler_volume(m);
  struct Entry {
    std::vector<int> in;
    std::vector<int> out;
    double sign;
  };
  const std::vector<Entry> table = {{{0, 2}, {1, 3}, -1.0},    {{1, 3}, {0, 2}, -1.0}, {{0, 1, 2}, {1}, -1.0},
                                    {{0, 1, 3}, {0}, 1.0},     {{0, 2, 3}, {3}, -1.0}, {{1, 2, 3}, {2}, 1.0}};
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Entry& e = table[i];
    const PForm<double> a = PForm<double>::basis(e.in, JetOrder::Value);
    const PForm<double> got = hodge_star(a, m.metric, mu);
    const PForm<double> want = e.sign * PForm<double>::basis(e.out, JetOrder::Value);
    const double d = max_abs_diff(got, want);
    Record rec{.trial = i, .residual = d, .pass = d <= out.tolerance};
    rec.label = "*" + form_text(a) + " = " + form_text(got);
    out.text.push_back(*rec.label);
    out.records.push_back(rec);
  }
}

void run_example(const Scenario& sc, RunResult& out) {
  for (std::size_t t = 0; t < sc.trials; ++t) {
    std::array<double, 4> f{};
    if (sc.f) {
      f = *sc.f;
    } else {
      Rng rng = Rng::for_trial(sc.seed, t);
      for (double& x : f) x = rng.uniform(-1.0, 1.0);
    }
    const ExampleOutcome o = example_check(f, sc);
    Record rec{.trial = t, .residual = o.residual, .pass = o.residual <= out.tolerance};
    rec.label = "f = " + covector_text({f[0], f[1], f[2], f[3]});
    out.records.push_back(rec);
    if (sc.f || sc.trials == 1) {
      out.text.push_back(*rec.label);
      out.text.push_back("phi(0) = " + covector_text(o.phi));
      out.text.push_back("delta Omega(0) = " + covector_text(o.delta));
      out.text.push_back("residual = " + sci(o.residual));
    }
    if (sc.f) break;
  }
}

}  // namespace

Model<double> example_model(const std::array<double, 4>& f) {
  Model<double> m = standard_model(StructureKind::Para, Signature::Neutral);
  for (int i = 0; i < kDim; ++i) m.metric.g1[i][1][3] = m.metric.g1[i][3][1] = 2.0 * f[static_cast<std::size_t>(i)];
  return make_model(m.structure, m.metric);
}

RunResult run_scenario(const Scenario& sc, const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  RunResult out;
  out.scenario = sc;
  const std::optional<double> explicit_tol = opts.tolerance ? opts.tolerance : sc.tolerance;
  out.tolerance = explicit_tol.value_or(default_tolerance(sc.mode));
  const unsigned jobs = std::max(1u, opts.jobs);

  switch (sc.mode) {
    case Mode::StarTable: run_star_table(out); break;
    case Mode::Example32: run_example(sc, out); break;
    case Mode::Continuation: run_continuation(sc, explicit_tol, jobs, out); break;
    default: run_sweep(sc, jobs, out); break;
  }

  if (sc.mode != Mode::StarTable && !(sc.mode == Mode::Example32 && (sc.f || sc.trials == 1))) {
    std::size_t shown = 0;
    for (const Record& r : out.records) {
      if (r.pass || shown >= 10) continue;
      ++shown;
      std::string line = "trial " + std::to_string(r.trial);
      if (r.battery) line += " [" + *r.battery + "]";
      line += r.error ? ": error: " + *r.error : ": residual " + sci(*r.residual);
      if (r.rank) line += ", rank " + std::to_string(*r.rank);
      out.text.push_back(line + " FAIL");
    }
    out.text.push_back(std::string(to_string(sc.mode)) + ": " + std::to_string(out.pass_count()) + "/" +
                       std::to_string(out.records.size()) + " pass, max residual " + sci(out.max_residual()));
  }
  out.text.push_back(out.all_pass() ? "PASS" : "FAIL");
  out.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace kw4
