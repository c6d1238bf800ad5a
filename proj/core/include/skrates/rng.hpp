#pragma once

#include <array>
#include <cstdint>

namespace skr {

// Philox4x32-10 counter-based generator. A draw is a pure function of
// (key, counter), so any draw can be produced at any time on any worker;
// reproducibility does not depend on call order or thread scheduling.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key);

// Standard normal quantile. Full double precision (relative error ~1e-15),
// defined on the open interval (0,1).
double inverse_normal_cdf(double p);

// Purpose tags keep independent uses of the same seed from colliding.
enum class StreamPurpose : std::uint32_t {
  path = 0,       // Brownian increments during time stepping
  bootstrap = 1,  // resampling indices for confidence intervals
  scratch = 2,    // property tests and ad-hoc sampling
};

// Indexed random stream: stream `id` under a seed/purpose, addressed by a
// 64-bit draw index. The (seed, id) pair fully determines the stream; the
// index is the position within it. Identical (seed, id, index) triples give
// identical draws on every worker layout, which is what makes common random
// numbers across the epsilon sweep work: the stream id is the replica index
// and deliberately does not involve epsilon.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t id, StreamPurpose purpose);

  // Uniform on the open interval (0,1); 53-bit resolution.
  double uniform(std::uint64_t index) const;
  // Standard normal via the quantile transform: exactly one uniform
  // draw per normal (positional reproducibility contract).
  double gaussian(std::uint64_t index) const;

 private:
  std::array<std::uint32_t, 2> key_;
  std::array<std::uint32_t, 2> id_words_;
};

}  // namespace skr
