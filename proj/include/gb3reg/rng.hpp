#pragma once

#include <cstdint>
#include <random>

namespace gb3reg {

// Seeded pseudo-random stream.  Wraps std::mt19937_64 but keeps the
// seed around so that independent child streams can be derived
// deterministically: split(k) mixes the parent seed with the stream
// index through the splitmix64 finalizer, which is how per-replication
// streams stay identical no matter how work is scheduled.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform draw on the open interval (0, 1); never returns 0 or 1.
  double uniform();

  // Standard normal draw via the inverse CDF, so one draw consumes
  // exactly one engine step.
  double normal();

  // Deterministic child stream for substream `stream` of this seed.
  Rng split(std::uint64_t stream) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace gb3reg
