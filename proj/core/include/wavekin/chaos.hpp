#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "wavekin/density.hpp"
#include "wavekin/gridfft.hpp"
#include "wavekin/lattice.hpp"
#include "wavekin/ou.hpp"
#include "wavekin/profiles.hpp"

namespace wavekin {

// Discretization of the Duhamel iteration. The stored order-zero grid has
// spacing h_osc/2 (substep endpoints and midpoints); within a substep the
// envelope is held at the midpoint and the oscillatory factor is integrated
// on gl_nodes Gauss points, which resolves phases up to |omega| <= 2 Rc^2
// at h_osc <= nu/4.
struct DuhamelConfig {
  double h_osc = 0.0;  // 0 -> nu/4
  int gl_nodes = 5;
  enum class Path { direct, fft, automatic } conv_path = Path::automatic;
  double T_eff_factor = 12.0;  // T = infinity: lower limit -T_eff = -factor/min gamma
  bool with_order2 = true;

  double substep(double nu) const;
  void check(double nu) const;  // h_osc <= nu/4
};

class ChaosSimulator {
 public:
  ChaosSimulator(std::shared_ptr<const ModeSet> ms, Profiles prof, PhysicalParams par,
                 DuhamelConfig cfg);

  const ModeSet& modes() const { return *ms_; }
  const PhysicalParams& params() const { return par_; }
  const DuhamelConfig& config() const { return cfg_; }
  double t_start(double first_out) const;

  // One sample: exact OU paths plus the Duhamel orders at the output times.
  // duhamel_from: lower integration limit override (used by the restarted-
  // increment self-consistency check); NaN means the standard start.
  ChaosSample simulate(std::uint64_t master_seed, std::uint32_t sample_id,
                       const std::vector<double>& out_times,
                       double duhamel_from = std::numeric_limits<double>::quiet_NaN()) const;

 private:
  std::shared_ptr<const ModeSet> ms_;
  Profiles prof_;
  PhysicalParams par_;
  DuhamelConfig cfg_;
  std::vector<double> gam_, B_, k2_;
  std::unique_ptr<ConvGrid> grid_;
  bool use_fft_;

  void conv_nodes(const std::vector<cplx>& env0, const std::vector<cplx>& a1_start, double t0,
                  double l, std::vector<cplx>& x1, std::vector<cplx>& x2, ConvWork& w) const;
};

// Delta a^{(i)}(tau) = a^{(i)}(tau) - e^{-gamma_s (tau - tau_ref)} a^{(i)}(tau_ref)
// for every output time >= tau_ref. Throws if tau_ref is not an output time.
struct IncrementSample {
  std::vector<double> times;  // output times >= tau_ref
  std::vector<cplx> d0, d1, d2;  // [time * n_modes + mode]
  std::size_t n_modes = 0;
};
IncrementSample increments_delta(const ChaosSample& s, double tau_ref, const ModeSet& ms,
                                 const Profiles& prof);

// Monte Carlo spectrum of the quasisolution A = a0 + rho a1 + rho^2 a2 at one
// output time: per-mode mean of |A|^2 with jackknife standard errors, plus the
// order-resolved coefficients n_hat^(0..4).
struct McSpectrum {
  std::vector<double> mean, stderr_;           // |A|^2
  std::vector<std::array<double, 5>> order;    // coefficient estimates
  std::vector<std::array<double, 5>> order_se;
  std::size_t n_samples = 0;
};
McSpectrum mc_spectrum(const ChaosSimulator& sim, std::uint64_t master_seed,
                       std::uint32_t n_samples, double tau);

// E|Delta^1_s(tau)|^2 Monte Carlo estimate of the diagonal correction
// Delta^1 = -i L^{-d} int e^{-gamma_s(tau-l)} |a0_s|^2 a0_s dl (T = infinity,
// stationary start), with standard errors. No mode coupling, so the grid can
// be coarser than h_osc.
struct Delta1Moment {
  std::vector<double> second_moment, stderr_;
};
Delta1Moment mc_delta1_second_moment(const ModeSet& ms, const Profiles& prof,
                                     const PhysicalParams& par, std::uint64_t master_seed,
                                     std::uint32_t n_samples, double tau, double span = 8.0,
                                     double h = 0.05);

// Closed form E|Delta^1_s|^2 = L^{-2d} B(s)^3 (5 / (2 gamma_s^2)) at T = infinity.
double delta1_second_moment_exact(const Vec& s, const Profiles& prof, const LatticeSpec& lat);

}  // namespace wavekin
