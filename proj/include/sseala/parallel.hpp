#pragma once

#include <cstddef>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include <omp.h>

namespace sseala {

// SSEALA_WORKERS when set, otherwise the OpenMP default.  Returns the thread count in use.
int configure_workers_from_env();
void set_workers(int n);
int worker_count();

struct SampleOutcome {
  std::size_t total = 0;
  std::size_t failures = 0;
  std::optional<std::size_t> first_index;
  std::string first_counterexample;
  bool ok() const { return failures == 0; }
};

// Evaluates f(i) for i in [0, n) with a static schedule.  f returns a counterexample
// rendering on failure.  Outcomes are merged in index order, so the result is the same
// for any thread count.
template <class F>
SampleOutcome run_samples(std::size_t n, F&& f, bool parallel = true) {
  std::vector<std::optional<std::string>> out(n);
  auto body = [&](std::size_t i) {
    try {
      out[i] = f(i);
    } catch (const std::exception& e) {
      out[i] = std::string("exception: ") + e.what();
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(static)
    for (std::size_t i = 0; i < n; ++i) body(i);
  } else {
    for (std::size_t i = 0; i < n; ++i) body(i);
  }
  SampleOutcome s;
  s.total = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (!out[i]) continue;
    if (s.failures++ == 0) {
      s.first_index = i;
      s.first_counterexample = *out[i];
    }
  }
  return s;
}

}  // namespace sseala
