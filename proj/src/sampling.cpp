#include "sseala/sampling.hpp"

#include "sseala/errors.hpp"

namespace sseala {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t SampleRng::next() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t SampleRng::uniform(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw ArgumentError("uniform: empty range");
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do x = next();
  while (x >= limit);
  return lo + static_cast<std::int64_t>(x % span);
}

LatticeVector SampleRng::lattice(std::size_t n, std::int64_t radius) {
  LatticeVector v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = uniform(-radius, radius);
  return v;
}

LatticeVector SampleRng::nonzero_lattice(std::size_t n, std::int64_t radius) {
  if (radius <= 0) throw ArgumentError("nonzero_lattice: radius must be positive");
  while (true) {
    LatticeVector v = lattice(n, radius);
    if (!v.is_zero()) return v;
  }
}

Rational SampleRng::rational(std::int64_t num_bound, std::int64_t den_bound) {
  std::int64_t p = uniform(-num_bound, num_bound);
  std::int64_t q = uniform(1, den_bound);
  return rat(p, q);
}

SampleStream::SampleStream(std::uint64_t seed, std::string_view name)
    : key_(splitmix64(seed ^ splitmix64(fnv1a(name)))) {}

SampleRng SampleStream::at(std::uint64_t index) const { return SampleRng(splitmix64(key_ + splitmix64(index))); }

}  // namespace sseala
