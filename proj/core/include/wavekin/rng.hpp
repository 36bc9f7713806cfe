#pragma once

#include <cstdint>
#include <utility>

namespace wavekin {

// Philox4x32-10 (Salmon et al. 2011). Counter-based: the value at any
// (key, counter) is a pure function, so streams keyed by
// (master seed, mode, sample, tag) are reproducible under any schedule.
struct Philox4x32 {
  static constexpr std::uint32_t W32A = 0x9E3779B9u, W32B = 0xBB67AE85u;
  static constexpr std::uint32_t M4x32A = 0xD2511F53u, M4x32B = 0xCD9E8D57u;

  static inline void round(std::uint32_t* ctr, const std::uint32_t* key) {
    std::uint64_t p0 = (std::uint64_t)M4x32A * ctr[0];
    std::uint64_t p1 = (std::uint64_t)M4x32B * ctr[2];
    std::uint32_t hi0 = (std::uint32_t)(p0 >> 32), lo0 = (std::uint32_t)p0;
    std::uint32_t hi1 = (std::uint32_t)(p1 >> 32), lo1 = (std::uint32_t)p1;
    std::uint32_t n0 = hi1 ^ ctr[1] ^ key[0];
    std::uint32_t n1 = lo1;
    std::uint32_t n2 = hi0 ^ ctr[3] ^ key[1];
    std::uint32_t n3 = lo0;
    ctr[0] = n0; ctr[1] = n1; ctr[2] = n2; ctr[3] = n3;
  }

  // 128-bit counter, 64-bit key -> 4 x 32-bit words
  static inline void block(std::uint64_t c01, std::uint64_t c23, std::uint64_t key64,
                           std::uint32_t out[4]) {
    std::uint32_t ctr[4] = {(std::uint32_t)c01, (std::uint32_t)(c01 >> 32), (std::uint32_t)c23,
                            (std::uint32_t)(c23 >> 32)};
    std::uint32_t key[2] = {(std::uint32_t)key64, (std::uint32_t)(key64 >> 32)};
    for (int r = 0; r < 10; ++r) {
      round(ctr, key);
      key[0] += W32A;
      key[1] += W32B;
    }
    out[0] = ctr[0]; out[1] = ctr[1]; out[2] = ctr[2]; out[3] = ctr[3];
  }
};

// Stream addressed by (master seed; mode index, sample id, conjugacy/part tag).
// draw_gauss_pair(step) yields the two standard normals for time-step `step`,
// identical for a given address no matter the execution order.
class NoiseStream {
 public:
  NoiseStream(std::uint64_t master_seed, std::uint32_t mode_index, std::uint32_t sample_id,
              std::uint32_t tag = 0)
      : key_(master_seed ^ (0x9E3779B97F4A7C15ull * (std::uint64_t)tag)),
        hi_((std::uint64_t)mode_index << 32 | sample_id) {}

  // two independent N(0,1) draws for the given step counter
  std::pair<double, double> gauss_pair(std::uint64_t step) const;
  double uniform(std::uint64_t step, int lane) const;  // lane 0..3, (0,1)

 private:
  std::uint64_t key_, hi_;
};

}  // namespace wavekin
