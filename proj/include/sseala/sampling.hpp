#pragma once

#include <cstdint>
#include <string_view>

#include "sseala/lattice.hpp"
#include "sseala/rational.hpp"

namespace sseala {

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(std::string_view s);

// Generator for one sample.  Seeded from (seed, stream name, sample index), so the
// i-th sample of a stream does not depend on how samples are distributed to threads.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t state) : state_(state) {}
  std::uint64_t next();
  // Uniform in [lo, hi], unbiased.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);
  LatticeVector lattice(std::size_t n, std::int64_t radius);
  LatticeVector nonzero_lattice(std::size_t n, std::int64_t radius);
  // p/q with |p| <= num_bound, 1 <= q <= den_bound.
  Rational rational(std::int64_t num_bound, std::int64_t den_bound);

 private:
  std::uint64_t state_;
};

class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::string_view name);
  SampleRng at(std::uint64_t index) const;

 private:
  std::uint64_t key_;
};

}  // namespace sseala
