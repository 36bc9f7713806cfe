#include "wavekin/lattice.hpp"

#include <cmath>

namespace wavekin {

ModeSet::ModeSet(const LatticeSpec& spec) : spec_(spec) {
  K_ = spec.index_radius();
  const int zlo = spec.d == 3 ? -K_ : 0;
  const int zhi = spec.d == 3 ? K_ : 0;
  std::size_t lutn = 1;
  for (int k = 0; k < spec.d; ++k) lutn *= (std::size_t)(2 * K_ + 1);
  lut_.assign(lutn, -1);
  for (int x = -K_; x <= K_; ++x)
    for (int y = -K_; y <= K_; ++y)
      for (int z = zlo; z <= zhi; ++z) {
        IVec n{x, y, z};
        if (!spec.retained(n)) continue;
        lut_[lut_index(n)] = (int)modes_.size();
        modes_.push_back(Mode{n, spec.freq(n)});
      }
}

std::size_t ModeSet::lut_index(const IVec& n) const {
  std::size_t w = (std::size_t)(2 * K_ + 1);
  std::size_t ix = (std::size_t)(n[0] + K_);
  std::size_t iy = (std::size_t)(n[1] + K_);
  if (spec_.d == 2) return ix * w + iy;
  std::size_t iz = (std::size_t)(n[2] + K_);
  return (ix * w + iy) * w + iz;
}

int ModeSet::find(const IVec& n) const {
  for (int k = 0; k < 3; ++k)
    if (k < spec_.d ? (n[k] < -K_ || n[k] > K_) : (n[k] != 0)) return -1;
  return lut_[lut_index(n)];
}

double mod_sum(const ModeSet& ms, const std::function<double(const Mode&)>& f) {
  Kahan acc;
  for (const Mode& m : ms.modes()) {
    acc.add(f(m));
    if (!std::isfinite(acc.value()))
      throw std::runtime_error("mod_sum: non-finite partial sum (profile blow-up?)");
  }
  double scale = std::pow(ms.spec().L, -ms.spec().d);
  return scale * acc.value();
}

}  // namespace wavekin
