#include "wavekin/rng.hpp"

#include <cmath>

namespace wavekin {

static inline double u01(std::uint32_t a, std::uint32_t b) {
  // 53-bit uniform in (0,1]; never exactly 0 so log() is safe
  std::uint64_t x = ((std::uint64_t)a << 21) ^ b;
  return ((x & ((1ull << 53) - 1)) + 1.0) * 0x1p-53;
}

std::pair<double, double> NoiseStream::gauss_pair(std::uint64_t step) const {
  std::uint32_t out[4];
  Philox4x32::block(step, hi_, key_, out);
  double u1 = u01(out[0], out[1]);
  double u2 = u01(out[2], out[3]);
  double r = std::sqrt(-2.0 * std::log(u1));
  double th = 2.0 * M_PI * u2;
  return {r * std::cos(th), r * std::sin(th)};
}

double NoiseStream::uniform(std::uint64_t step, int lane) const {
  std::uint32_t out[4];
  Philox4x32::block(step, hi_, key_, out);
  return u01(out[lane & 3], out[(lane + 1) & 3]);
}

}  // namespace wavekin
