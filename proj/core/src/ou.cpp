#include "wavekin/ou.hpp"

#include <cmath>
#include <stdexcept>

namespace wavekin {

ChaosSample sample_a0(const ModeSet& ms, const Profiles& prof, const PhysicalParams& par,
                      std::uint64_t master_seed, std::uint32_t sample_id,
                      const std::vector<double>& times) {
  if (times.empty()) throw std::invalid_argument("sample_a0: empty time grid");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1])) throw std::invalid_argument("sample_a0: times must increase");
  if (par.finite_T() && times.front() < -par.T - 1e-12)
    throw std::invalid_argument("sample_a0: times reach below -T");

  ChaosSample cs;
  cs.sample_id = sample_id;
  cs.times = times;
  cs.n_modes = ms.size();
  cs.a0.assign(times.size() * ms.size(), {0.0, 0.0});

  for (std::size_t m = 0; m < ms.size(); ++m) {
    const Mode& mode = ms[m];
    double g = prof.gamma(mode.s);
    double B = prof.B(mode.s);
    NoiseStream ns(master_seed, (std::uint32_t)m, sample_id, 0);
    std::complex<double> a;
    std::uint64_t step = 0;
    if (par.finite_T()) {
      // a(-T) = 0; evolve exactly to times[0]
      double dt = times.front() + par.T;
      double var = B * (1.0 - std::exp(-2.0 * g * dt));  // total E|a|^2
      auto [z1, z2] = ns.gauss_pair(step++);
      a = std::sqrt(0.5 * var) * std::complex<double>(z1, z2);
    } else {
      auto [z1, z2] = ns.gauss_pair(step++);
      a = std::sqrt(0.5 * B) * std::complex<double>(z1, z2);
    }
    cs.a0[0 * ms.size() + m] = a;
    for (std::size_t k = 1; k < times.size(); ++k) {
      double h = times[k] - times[k - 1];
      double decay = std::exp(-g * h);
      double var = B * (1.0 - decay * decay);
      auto [z1, z2] = ns.gauss_pair(step++);
      a = decay * a + std::sqrt(0.5 * var) * std::complex<double>(z1, z2);
      cs.a0[k * ms.size() + m] = a;
    }
  }
  return cs;
}

double corr_a0(const Vec& s, const Vec& s_prime, double tau1, double tau2, const Profiles& prof,
               const PhysicalParams& par) {
  if (norm(s - s_prime) > 1e-12 * (1.0 + norm(s) + norm(s_prime))) return 0.0;
  double g = prof.gamma(s);
  double B = prof.B(s);
  double stat = B * std::exp(-g * std::abs(tau1 - tau2));
  if (!par.finite_T()) return stat;
  return stat - B * std::exp(-g * (2.0 * par.T + tau1 + tau2));
}

double n0_spectrum(const Vec& s, double tau, const Profiles& prof, const PhysicalParams& par) {
  double B = prof.B(s);
  if (!par.finite_T()) return B;
  double g = prof.gamma(s);
  return B * (1.0 - std::exp(-2.0 * g * (par.T + tau)));
}

}  // namespace wavekin
