#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace wavekin {

using cplx = std::complex<double>;

struct QuadRule {
  std::vector<double> x, w;
};

// Gauss-Legendre on [-1,1]; cached per n.
const QuadRule& gauss_legendre(int n);

// Nodes/weights mapped to [a,b].
QuadRule gl_on(int n, double a, double b);

// Composite GL panels over [a,b]; panel widths sized so that an oscillation
// of |rate| rad per unit x advances at most max_phase_per_panel per panel.
QuadRule oscillatory_panels(double a, double b, double rate, int nodes_per_panel = 24,
                            double max_phase_per_panel = 24.0);

// Deterministic adaptive 1-D quadrature (GL7 vs GL15 error estimate,
// bisection). Handles kinks and indicator edges; pure function of inputs.
double adaptive_1d(const std::function<double(double)>& f, double a, double b, double abs_tol,
                   double rel_tol = 1e-10, int max_depth = 48);

// (e^x - 1)/x, stable near 0.
inline double expm1x(double x) { return std::abs(x) < 1e-8 ? 1.0 + 0.5 * x : std::expm1(x) / x; }

// E(x; a, b) = integral_a^b e^{x t} dt, complex x, stable for small |x|.
cplx exp_integral(cplx x, double a, double b);

// F2(p, r; a, b) = integral_a^b e^{p l} * ( integral_a^l e^{r l'} dl' ) dl,
// complex p, r; the basic nested-exponential primitive behind every
// closed-form second moment. Stable for small |r|, |p|, |p + r|.
cplx nested_exp_integral(cplx p, cplx r, double a, double b);

// integral_a^b g(x) e^{i kappa x} dx for smooth g and arbitrary kappa:
// Legendre expansion of g on the panel times the exact oscillatory moments
// int P_n(t) e^{i sigma t} dt = 2 i^n j_n(sigma).
cplx filon_exp_panel(const std::function<double(double)>& g, double a, double b, double kappa,
                     int n_pts = 12);

// Least-squares fit of log(y) = c + q*log(x); returns {q, c, residual} where
// residual is the rms of log-residuals divided by |q| (relative-to-slope).
struct LogFit {
  double slope = 0.0, intercept = 0.0, rel_residual = 0.0;
};
LogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace wavekin
