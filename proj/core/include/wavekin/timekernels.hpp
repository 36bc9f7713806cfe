#pragma once

#include <complex>

#include "wavekin/numerics.hpp"

namespace wavekin {

// Duhamel increment kernels for a step of length tau from a state at time 0:
//   Z4 = |e^{i c tau} - e^{-gs tau}|^2 / (gs^2 + c^2),      c = omega / nu,
//   Zj = 2 (1 - e^{-gs tau})/gs * gj / (gj^2 + c^2).
struct IncrementKernels {
  double Z4, Z1, Z2, Z3;
};
IncrementKernels increment_kernels(double omega, double g1, double g2, double g3, double gs,
                                   double tau, double nu);

namespace detail {

// W1 = double integral over [-T,tau]^2 of
//   e^{-gs(2tau-l-l')} e^{ic(l-l')} prod_j (e^{-gj|l-l'|} - e^{-gj(2T+l+l')}),
// i.e. the per-pair time kernel of E|a1(tau)|^2 without the B-factors.
// T = +infinity selects the stationary branch.
double w1_time_kernel(double c, double g1, double g2, double g3, double gs, double tau, double T);

// P = integral over -T <= l' <= l <= tau of
//   e^{-gs(tau-l)} e^{-ga(l-l')} e^{ic(l-l')} Cx(l,l') Cy(l,l') Cs(l',tau)
// with C the OU covariance of the indicated rate carrying its B-factor
// stripped (the caller multiplies Bx*By*Bs).
cplx p_time_kernel(double c, double ga, double gx, double gy, double gs, double tau, double T);

// Per-pair contribution to n^(2)_s(tau) (spectrum order rho^2), including all
// B-factors:  2 B123 W1 + 2 Re[ 2 P(g3;C1C2) - 2 P(g1;C2C3) - 2 P(g2;C1C3) ].
double n2_pair_kernel(double omega, double nu, double g1, double g2, double g3, double gs,
                      double B1, double B2, double B3, double Bs, double tau, double T);

}  // namespace detail
}  // namespace wavekin
