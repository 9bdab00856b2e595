// OpenMP kernels against the serial paths and the reference implementations.
// Usage: sseala_bench [radius] [repeats]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#include "sseala/ealgebras.hpp"
#include "sseala/parallel.hpp"
#include "sseala/t_filtration.hpp"

using namespace sseala;

namespace {

double time_ms(const std::function<void()>& f, int repeats) {
  double best = 1e300;
  for (int i = 0; i < repeats; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const std::string& name, const std::string& variant, double ms, const std::string& note) {
  std::printf("%-28s %-10s %10.1f ms  %s\n", name.c_str(), variant.c_str(), ms, note.c_str());
}

void bench_jacobi(const std::shared_ptr<const AlgebraSpec>& alg, std::int64_t radius, int repeats) {
  JacobiScan par, ser, ref;
  const double tp = time_ms([&] { par = jacobi_exhaustive(*alg, radius, true); }, repeats);
  const double ts = time_ms([&] { ser = jacobi_exhaustive(*alg, radius, false); }, repeats);
  const double tr = time_ms([&] { ref = jacobi_exhaustive_reference(*alg, radius); }, repeats);
  const std::string tag = alg->name() + " R" + std::to_string(radius);
  const std::string agree = par.triples == ref.triples && ser.triples == ref.triples && par.failures == ref.failures
                                ? "agree"
                                : "MISMATCH";
  row(tag, "parallel", tp, std::to_string(par.triples) + " triples");
  row(tag, "serial", ts, "");
  row(tag, "reference", tr, agree);
}

void bench_kernel(std::size_t m, std::int64_t radius, int repeats) {
  SkewFormContext ctx(standard_J(m));
  VerificationReport fast, ref;
  const double tf = time_ms([&] { fast = kernel_central_check(ctx, radius); }, repeats);
  const double tr = time_ms([&] { ref = kernel_central_check_reference(ctx, radius, 0); }, repeats);
  const std::string tag = "kernel_central m=" + std::to_string(m) + " R" + std::to_string(radius);
  row(tag, "parallel", tf, fast.ok() ? "ok" : "FAIL");
  row(tag, "reference", tr, ref.ok() == fast.ok() ? "agree" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  configure_workers_from_env();
  const std::int64_t radius = argc > 1 ? std::atoi(argv[1]) : 1;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;
  std::printf("workers %d\n", worker_count());
  bench_jacobi(AlgebraSpec::toroidal(2), radius + 1, repeats);
  bench_jacobi(AlgebraSpec::tau_b(SkewFormContext(standard_J(1)), "tauJ[m=1]"), radius + 1, repeats);
  bench_jacobi(AlgebraSpec::tau_b(SkewFormContext(standard_J1(1)), "keala[m=1]"), radius, repeats);
  bench_kernel(1, radius + 1, repeats);
  bench_kernel(2, radius, repeats);
  return 0;
}
