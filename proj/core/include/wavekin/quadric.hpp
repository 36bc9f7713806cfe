#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "wavekin/lattice.hpp"
#include "wavekin/profiles.hpp"

namespace wavekin {

// Quadrature description for the singular measure mu^Sigma = |z|^{-1} dS on
// the quadric {x.y = 0} in R^{2d}, via the disintegration
// mu^Sigma = |x|^{-1} dx d_{x-perp} y.
struct QuadricMeasure {
  int d = 2;
  Vec base_point{0, 0, 0};  // s, so that x = s1 - s, y = s2 - s
  double R_max = 12.0;      // radial cutoff for the x integration
  int radial_nodes = 48;    // Gauss-Legendre in log r
  int angular_nodes = 64;   // d=2: circle nodes; d=3: azimuth nodes
  int polar_nodes = 20;     // d=3 only: Gauss-Legendre in cos(theta)
  int fiber_angle_nodes = 16;  // d=3 fiber azimuth
  double fiber_tol = 1e-9;  // adaptive fiber tolerance (relative to running total)
  double r_min_factor = 1e-8;
  // evaluate (f(x,y) + f(y,x))/2: the measure is swap-invariant, and the
  // symmetrized node set makes swap identities exact in floating point
  bool symmetrize = false;

  QuadricMeasure() = default;
  QuadricMeasure(int d_, double Rmax) : d(d_), R_max(Rmax) {}
};

// integral of f(x, y) against mu^Sigma. `declared_decay` is the caller's
// decay exponent r with |f(z)| <= C <z>^{-r}; r must exceed 2d-2 or the
// integral may diverge (throws).
double quadric_integrate(const std::function<double(const Vec&, const Vec&)>& f,
                         const QuadricMeasure& qm, double declared_decay);

// Several integrands in one pass over a shared node set (the adaptive fiber
// is refined on the combined magnitude). This is what makes decompositions
// like K = sum_l K_l exact to rounding.
using MultiIntegrand = std::function<void(const Vec&, const Vec&, double*)>;
void quadric_integrate_multi(const MultiIntegrand& f, int n_comp, const QuadricMeasure& qm,
                             double declared_decay, double* out);

// Same integral via the y-projection disintegration dy |y|^{-1} d_{y-perp} x.
double quadric_integrate_y_disintegration(const std::function<double(const Vec&, const Vec&)>& f,
                                          const QuadricMeasure& qm, double declared_decay);

// (pi / gamma_s) * integral over Sigma_s of B(s1,s2,s1+s2-s) d mu^Sigma in the
// centered coordinates; the nu -> 0 limit of E|a1_s|^2 / nu.
double theoremA_integral(const Vec& s, const Profiles& prof, const QuadricMeasure& qm);

// Stationary-phase bound (nu/2pi)^{n/2} |det Q|^{-1/2} |phi_hat|_L1 for the
// oscillatory integral I(nu) = int e^{i x.Qx/(2nu)} conj(phi) dx. Throws on
// singular Q.
double fresnel_bound(const std::vector<double>& Q, int n, double phi_hat_l1, double nu);

// Closed form of I(nu) for the built-in Gaussian envelope
// phi(x) = beta exp(-|x|^2 / sigma2), plus |phi_hat|_L1 for the bound.
struct GaussianEnvelope {
  double beta = 1.0;
  double sigma2 = 1.0;
};
std::complex<double> gaussian_phase_integral(const std::vector<double>& Q, int n,
                                             const GaussianEnvelope& phi, double nu);
double gaussian_envelope_fourier_l1(int n, const GaussianEnvelope& phi);

// eigenvalues of a small symmetric matrix (cyclic Jacobi), ascending
std::vector<double> symmetric_eigenvalues(const std::vector<double>& A, int n);

}  // namespace wavekin
