#pragma once

// Executes scenarios: one record per trial, collected in trial order.

#include <algorithm>
#include <array>
#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "kw4/scenario.hpp"

namespace kw4 {

struct Record {
  std::size_t trial = 0;
  std::optional<double> residual{};  // empty when the trial raised
  bool pass = false;
  std::optional<int> rank{};
  std::optional<std::string> battery{};
  std::optional<std::string> label{};
  std::optional<std::string> error{};
};

struct RunOptions {
  unsigned jobs = 1;
  std::optional<double> tolerance{};  // overrides the scenario
};

struct RunResult {
  Scenario scenario;
  double tolerance = 0.0;
  std::vector<Record> records;
  std::vector<std::string> text;  // human-readable lines
  double wall_time_s = 0.0;

  bool all_pass() const;
  std::size_t pass_count() const;
  double max_residual() const;
};

// Used when neither the scenario nor the command line sets one. Continuation
// applies per-battery values unless a tolerance is given explicitly.
double default_tolerance(Mode m);

RunResult run_scenario(const Scenario& sc, const RunOptions& opts = {});

// Flat para model with g(e2, e4) replaced by e^{2 f}, f(0) = 0 and
// df(0) = (f1, f2, f3, f4), truncated to first order.
Model<double> example_model(const std::array<double, 4>& f);

// Runs fn(i) for i in [0, count) on up to jobs threads.
template <class F>
void parallel_for(std::size_t count, unsigned jobs, F&& fn) {
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (n == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (unsigned w = 0; w < n; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

}  // namespace kw4
