#pragma once

#include <functional>
#include <vector>

#include "wavekin/density.hpp"
#include "wavekin/kinetic.hpp"
#include "wavekin/profiles.hpp"

namespace wavekin {

// Damped/driven wave kinetic equation
//   dm/dtau = -2 gamma_s m + eps K(m) + 2 b(s)^2,   m(-T) = 0,
// solved on a radial grid with an exponential-Euler integrator: the linear
// part is exact, K is frozen at the step start.
struct WkeParams {
  Profiles prof;
  double eps = 0.0;
  double T = 0.5;           // m(-T) = 0 unless an initial state is supplied
  int d = 2;
  double r_norm = 4.0;      // norm index used for monitoring (must be > d)
  double h = 0.02;          // default step
  double eps_max = 0.25;    // contraction monitoring threshold
  KineticConfig kin = KineticConfig::fast(2);
  std::vector<double> radii;  // radial grid; empty -> default_radii()

  static std::vector<double> default_radii(double s_max = 8.0, int n = 48);
};

struct WkeState {
  RadialDensity m;
  double tau = 0.0;
  double min_value = 0.0;  // most negative excursion seen so far (monitored, not asserted)
};

WkeState wke_initial(const WkeParams& par);  // zero state at tau = -T

// One exponential-Euler step; throws on norm blow-up (|m|_r doubling).
WkeState wke_step(const WkeState& state, double h, const WkeParams& par);

struct WkeTrajectory {
  std::vector<double> taus;
  std::vector<RadialDensity> states;
  double sup_norm_r = 0.0;   // max |m(tau)|_r along the trajectory
  double min_value = 0.0;
};
WkeTrajectory wke_solve(const WkeState& initial, double tau_end, const WkeParams& par);

// Steady state by Picard iteration on u = L^{-1}(eps K(u) + 2 b^2), from
// u0 = L^{-1} 2 b^2. Throws if the iteration is not contracting.
struct SteadyState {
  RadialDensity m;
  double residual_norm = 0.0;  // |-L u + eps K(u) + 2 b^2|_r at the solution
  int iterations = 0;
};
SteadyState wke_steady_state(double eps, const WkeParams& par, double tol = 1e-8);

// Evolves m^eps + dm and fits log |m(tau) - m^eps|_r against tau.
double wke_stability_rate(double eps, const RadialDensity& perturbation, const WkeParams& par,
                          double fit_t0 = 0.5, double fit_t1 = 3.0);

// eps-expansion m = u0 + eps u1 + O(eps^2): u0(tau) is the closed-form linear
// spectrum; u1(tau) = int_{-T}^tau e^{-(tau-l) L} K(u0(l)) dl by quadrature.
RadialDensity wke_eps_u0(double tau, const WkeParams& par);
RadialDensity wke_eps_u1(double tau, const WkeParams& par, int panels = 24);

// |m|_r on the state's radial grid probes.
double wke_norm(const RadialDensity& m, double r);

}  // namespace wavekin
