#pragma once

#include <array>
#include <functional>

#include "wavekin/density.hpp"
#include "wavekin/profiles.hpp"
#include "wavekin/quadric.hpp"

namespace wavekin {

// Wave kinetic integral K = K1+K2+K3+K4 over the resonance quadric, with the
// sign table sigma = (-1,-1,+1,+1). All evaluations route through
// quadric_integrate after centering coordinates at the output point.
class KineticConfig {
 public:
  QuadricMeasure qm;
  double norm_index_r = 3.0;  // declared |v|_r index; must satisfy r > d
  static constexpr std::array<double, 4> sigma{-1.0, -1.0, 1.0, 1.0};

  static KineticConfig reference(int d);  // accurate (oracle-grade) settings
  static KineticConfig fast(int d);       // check-grade settings
  static KineticConfig solver(int d);     // trajectory-grade settings (~1e-4 rel)
};

using DensityFn = std::function<double(const Vec&)>;

// (K v)(s) = 2 pi * integral d mu^Sigma [v1 v2 v3 + v1 v2 v4 - v1 v3 v4 - v2 v3 v4],
// v1 = v(x+s), v2 = v(y+s), v3 = v(x+y+s), v4 = v(s). Throws if r <= d.
double kinetic_apply(const DensityFn& v, const Vec& s, int d, const KineticConfig& cfg);

struct KineticParts {
  double K1 = 0, K2 = 0, K3 = 0, K4 = 0;
  double sum() const { return K1 + K2 + K3 + K4; }
};
KineticParts kinetic_parts(const DensityFn& v, const Vec& s, int d, const KineticConfig& cfg);

// Poly-linear piece J_l: the integral defining K_l without the 2 pi sigma_l
// factor, with independent densities in the four slots (slot l unused).
double polylinear_J(const DensityFn& u1, const DensityFn& u2, const DensityFn& u3,
                    const DensityFn& u4, int l, const Vec& s, int d, const KineticConfig& cfg);

// Duhamel-smoothed prefactor of K^tau: (1 - e^{-2 gamma_s tau}) / (2 gamma_s).
double kinetic_tau_factor(double gamma_s, double tau);

// K^tau(u) on a radial output grid: s -> tau-factor * K(u)(s).
RadialDensity kinetic_tau_apply(const DensityFn& u, double tau, const Profiles& prof,
                                const std::vector<double>& out_radii, int d,
                                const KineticConfig& cfg);

// K(u) materialized on a radial grid (radial profiles).
RadialDensity kinetic_apply_radial(const DensityFn& u, const std::vector<double>& out_radii, int d,
                                   const KineticConfig& cfg);

}  // namespace wavekin
