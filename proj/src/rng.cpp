#include "gb3reg/rng.hpp"

#include "gb3reg/specfun.hpp"

namespace gb3reg {

namespace {

// splitmix64 finalizer; full-avalanche mixing for seed derivation.
std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform() {
  // Top 52 bits, centered on the cell midpoint: values lie in
  // (0, 1) exclusive with spacing 2^-52.
  return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
}

double Rng::normal() { return normal_quantile(uniform()); }

Rng Rng::split(std::uint64_t stream) const {
  return Rng(mix64(seed_ ^ mix64(stream + 0x9E3779B97F4A7C15ULL)));
}

}  // namespace gb3reg
