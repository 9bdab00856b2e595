#include "sseala/parallel.hpp"

#include <cstdlib>
#include <string>

#include "sseala/errors.hpp"

namespace sseala {

int configure_workers_from_env() {
  if (const char* env = std::getenv("SSEALA_WORKERS"); env && *env) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (*end != '\0' || n < 1 || n > 4096) throw ArgumentError(std::string("SSEALA_WORKERS must be a positive integer, got '") + env + "'");
    set_workers(static_cast<int>(n));
  }
  return worker_count();
}

void set_workers(int n) {
  if (n < 1) throw ArgumentError("worker count must be positive");
  omp_set_num_threads(n);
}

int worker_count() { return omp_get_max_threads(); }

}  // namespace sseala
