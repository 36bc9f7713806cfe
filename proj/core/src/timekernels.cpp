#include "wavekin/timekernels.hpp"

#include <cmath>

namespace wavekin {

IncrementKernels increment_kernels(double omega, double g1, double g2, double g3, double gs,
                                   double tau, double nu) {
  double c = omega / nu;
  IncrementKernels k;
  double re = std::cos(c * tau) - std::exp(-gs * tau);
  double im = std::sin(c * tau);
  k.Z4 = (re * re + im * im) / (gs * gs + c * c);
  double front = 2.0 * (1.0 - std::exp(-gs * tau)) / gs;
  k.Z1 = front * g1 / (g1 * g1 + c * c);
  k.Z2 = front * g2 / (g2 * g2 + c * c);
  k.Z3 = front * g3 / (g3 * g3 + c * c);
  return k;
}

namespace detail {

double w1_time_kernel(double c, double g1, double g2, double g3, double gs, double tau, double T) {
  const double g[3] = {g1, g2, g3};
  if (!std::isfinite(T)) {
    double Gamma = g1 + g2 + g3 + gs;
    return Gamma / (gs * (Gamma * Gamma + c * c));
  }
  double total = 0.0;
  for (int S = 0; S < 8; ++S) {
    double A = 0.0, G = 0.0;
    int bits = 0;
    for (int j = 0; j < 3; ++j) {
      if (S & (1 << j)) {
        G += g[j];
        ++bits;
      } else {
        A += g[j];
      }
    }
    double beta = gs - G;
    cplx q(A, -c);
    cplx jplus = nested_exp_integral(cplx(beta, 0) - q, cplx(beta, 0) + q, -T, tau);
    double sign = (bits % 2) ? -1.0 : 1.0;
    total += sign * std::exp(-2.0 * gs * tau - 2.0 * T * G) * 2.0 * jplus.real();
  }
  return total;
}

cplx p_time_kernel(double c, double ga, double gx, double gy, double gs, double tau, double T) {
  if (!std::isfinite(T)) {
    double Gamma = ga + gx + gy + gs;
    return 1.0 / (2.0 * gs * cplx(Gamma, -c));
  }
  cplx total{};
  const double p_re = gs - ga - gx - gy;
  for (int eps = 0; eps < 8; ++eps) {
    bool ex = eps & 1, ey = eps & 2, es = eps & 4;
    double r_re = ga + (ex ? -gx : gx) + (ey ? -gy : gy) + (es ? -gs : gs);
    double cst = -2.0 * gs * tau;
    if (ex) cst -= 2.0 * T * gx;
    if (ey) cst -= 2.0 * T * gy;
    if (es) cst -= 2.0 * T * gs;
    double sign = ((int)ex + (int)ey + (int)es) % 2 ? -1.0 : 1.0;
    total += sign * std::exp(cst) * nested_exp_integral(cplx(p_re, c), cplx(r_re, -c), -T, tau);
  }
  return total;
}

double n2_pair_kernel(double omega, double nu, double g1, double g2, double g3, double gs,
                      double B1, double B2, double B3, double Bs, double tau, double T) {
  double c = omega / nu;
  double w1 = w1_time_kernel(c, g1, g2, g3, gs, tau, T);
  cplx p3 = p_time_kernel(c, g3, g1, g2, gs, tau, T);
  cplx p1 = p_time_kernel(c, g1, g2, g3, gs, tau, T);
  cplx p2 = p_time_kernel(c, g2, g1, g3, gs, tau, T);
  cplx ea2a0 = 2.0 * (B1 * B2 * Bs) * p3 - 2.0 * (B2 * B3 * Bs) * p1 - 2.0 * (B1 * B3 * Bs) * p2;
  return 2.0 * B1 * B2 * B3 * w1 + 2.0 * ea2a0.real();
}

}  // namespace detail
}  // namespace wavekin
