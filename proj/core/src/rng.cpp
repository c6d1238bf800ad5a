#include "skrates/rng.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <cmath>
#include <stdexcept>

namespace skr {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;  // golden ratio
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;  // sqrt(3) - 1

inline void round_once(std::array<std::uint32_t, 4>& c,
                       const std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = std::uint64_t(kMul0) * c[0];
  const std::uint64_t p1 = std::uint64_t(kMul1) * c[2];
  const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
  const std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int r = 0; r < 10; ++r) {
    round_once(ctr, key);
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("inverse_normal_cdf: p must lie in (0,1)");
  // Reduce through the complementary error function on the smaller tail;
  // 1-p is exact for p >= 0.5, so both tails keep full precision.
  constexpr double sqrt2 = 1.4142135623730951;
  return p <= 0.5 ? -sqrt2 * boost::math::erfc_inv(2.0 * p)
                  : sqrt2 * boost::math::erfc_inv(2.0 * (1.0 - p));
}

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t id,
                       StreamPurpose purpose)
    : key_{std::uint32_t(seed),
           std::uint32_t(seed >> 32) ^ static_cast<std::uint32_t>(purpose)},
      id_words_{std::uint32_t(id), std::uint32_t(id >> 32)} {}

double CounterRng::uniform(std::uint64_t index) const {
  const std::array<std::uint32_t, 4> ctr = {std::uint32_t(index),
                                            std::uint32_t(index >> 32),
                                            id_words_[0], id_words_[1]};
  const auto out = philox4x32(ctr, key_);
  const std::uint64_t bits = (std::uint64_t(out[1]) << 32) | out[0];
  // Top 53 bits, centered on the cell: strictly inside (0,1).
  return (double(bits >> 11) + 0.5) * 0x1.0p-53;
}

double CounterRng::gaussian(std::uint64_t index) const {
  return inverse_normal_cdf(uniform(index));
}

}  // namespace skr
