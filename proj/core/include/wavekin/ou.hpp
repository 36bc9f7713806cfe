#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "wavekin/density.hpp"
#include "wavekin/lattice.hpp"
#include "wavekin/profiles.hpp"
#include "wavekin/rng.hpp"

namespace wavekin {

// Per-mode complex paths sampled on a shared time grid. Orders 1 and 2 are
// filled by the chaos-expansion engine; order 0 by sample_a0.
struct ChaosSample {
  std::uint32_t sample_id = 0;
  std::vector<double> times;
  // paths[order][time_index * n_modes + mode_index]
  std::vector<std::complex<double>> a0, a1, a2;

  std::size_t n_modes = 0;
  std::complex<double> at(int order, std::size_t time_idx, std::size_t mode) const {
    const auto& p = order == 0 ? a0 : (order == 1 ? a1 : a2);
    return p[time_idx * n_modes + mode];
  }
};

// Exact distributional sampling of the per-mode complex OU process
//   da = -gamma_s a dtau + b(s) dbeta,   E|a_s(tau)|^2 -> B(s),
// with a(-T) = 0 for finite T and the stationary law at times.front() for
// T = infinity. Steps use the exact transition law, so there is no
// time-discretization bias. Throws if times are not strictly increasing or
// reach below -T.
ChaosSample sample_a0(const ModeSet& ms, const Profiles& prof, const PhysicalParams& par,
                      std::uint64_t master_seed, std::uint32_t sample_id,
                      const std::vector<double>& times);

// E a_s(tau1) conj(a_{s'}(tau2)); zero unless s == s'. The non-conjugated
// pairing E a a is identically zero (corr_a0_nonconj below).
double corr_a0(const Vec& s, const Vec& s_prime, double tau1, double tau2, const Profiles& prof,
               const PhysicalParams& par);
inline double corr_a0_nonconj(const Vec&, const Vec&, double, double, const Profiles&,
                              const PhysicalParams&) {
  return 0.0;
}

// Order-zero spectrum n^(0)(tau, s) = B(s) (1 - e^{-2 gamma_s (T + tau)}),
// extended to all s in R^d.
double n0_spectrum(const Vec& s, double tau, const Profiles& prof, const PhysicalParams& par);

}  // namespace wavekin
