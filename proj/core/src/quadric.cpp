#include "wavekin/quadric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "wavekin/numerics.hpp"

namespace wavekin {

namespace {

// orthonormal basis of x-perp, Gram-Schmidt from the standard basis with the
// largest-|component| pivot (deterministic)
void perp_basis(const Vec& x, int d, Vec* e /* d-1 vectors */) {
  Vec u = (1.0 / norm(x)) * x;
  int pivot = 0;
  for (int k = 1; k < d; ++k)
    if (std::abs(u[k]) > std::abs(u[pivot])) pivot = k;
  int out = 0;
  for (int k = 0; k < d && out < d - 1; ++k) {
    if (k == pivot) continue;
    Vec v{0, 0, 0};
    v[k] = 1.0;
    v = v - dot(v, u) * u;
    for (int j = 0; j < out; ++j) v = v - dot(v, e[j]) * e[j];
    double nv = norm(v);
    e[out] = (1.0 / nv) * v;
    ++out;
  }
}

using VecFn = std::function<void(double, double*)>;

// vector-valued GL7/GL15 pair on [a,b]
void gl_pair_multi(const VecFn& f, int n, double a, double b, double* fine, double* coarse,
                   std::vector<double>& tmp) {
  const QuadRule& g7 = gauss_legendre(7);
  const QuadRule& g15 = gauss_legendre(15);
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  std::fill(fine, fine + n, 0.0);
  std::fill(coarse, coarse + n, 0.0);
  tmp.assign(n, 0.0);
  for (int i = 0; i < 7; ++i) {
    f(c + h * g7.x[i], tmp.data());
    for (int k = 0; k < n; ++k) coarse[k] += g7.w[i] * tmp[k];
  }
  for (int i = 0; i < 15; ++i) {
    f(c + h * g15.x[i], tmp.data());
    for (int k = 0; k < n; ++k) fine[k] += g15.w[i] * tmp[k];
  }
  for (int k = 0; k < n; ++k) {
    fine[k] *= h;
    coarse[k] *= h;
  }
}

void adapt_multi_rec(const VecFn& f, int n, double a, double b, double tol, double rel_tol,
                     int depth, int max_depth, double* acc) {
  std::vector<double> fine(n), coarse(n), tmp;
  gl_pair_multi(f, n, a, b, fine.data(), coarse.data(), tmp);
  double err = 0.0, mag = 0.0;
  for (int k = 0; k < n; ++k) {
    err += std::abs(fine[k] - coarse[k]);
    mag += std::abs(fine[k]);
  }
  if (depth >= max_depth || err <= std::max(tol, rel_tol * mag)) {
    for (int k = 0; k < n; ++k) acc[k] += fine[k];
    return;
  }
  double m = 0.5 * (a + b);
  adapt_multi_rec(f, n, a, m, 0.5 * tol, rel_tol, depth + 1, max_depth, acc);
  adapt_multi_rec(f, n, m, b, 0.5 * tol, rel_tol, depth + 1, max_depth, acc);
}

// integral over [0, infinity): adaptive doubling panels across the scale of
// the integrand's core, then one compactified rule t = a + a u/(1-u) for the
// algebraic tail.
void ray_integral_multi(const VecFn& f, int n, double first_width, double tol, double core_span,
                        double* out) {
  std::fill(out, out + n, 0.0);
  double a = 0.0, w = first_width;
  for (int panel = 0; panel < 40; ++panel) {
    std::vector<double> acc(n, 0.0);
    double scale = 0.0;
    for (int k = 0; k < n; ++k) scale += std::abs(out[k]);
    adapt_multi_rec(f, n, a, a + w, 0.25 * tol * scale, 0.25 * tol, 0, 20, acc.data());
    for (int k = 0; k < n; ++k) out[k] += acc[k];
    a += w;
    if (panel >= 1) w *= 2.0;
    if (a >= core_span) break;
  }
  // tail: u in [0, 1), t = a (1 + u/(1-u)); weight a/(1-u)^2
  const QuadRule& g = gauss_legendre(24);
  std::vector<double> tmp(n);
  const double umax = 1.0 - 1e-3;
  for (int i = 0; i < 24; ++i) {
    double u = 0.5 * umax * (g.x[i] + 1.0);
    double wu = 0.5 * umax * g.w[i];
    double t = a * (1.0 + u / (1.0 - u));
    f(t, tmp.data());
    double jac = a / ((1.0 - u) * (1.0 - u));
    for (int k = 0; k < n; ++k) out[k] += wu * jac * tmp[k];
  }
}

}  // namespace

void quadric_integrate_multi(const MultiIntegrand& f, int n_comp, const QuadricMeasure& qm,
                             double declared_decay, double* out) {
  if (qm.d != 2 && qm.d != 3) throw std::invalid_argument("quadric_integrate: d must be 2 or 3");
  if (!(declared_decay > 2.0 * qm.d - 2.0))
    throw std::invalid_argument("quadric_integrate: declared decay must exceed 2d-2");
  if (qm.radial_nodes < 2 || qm.angular_nodes < 2)
    throw std::invalid_argument("quadric_integrate: node counts >= 2 required");

  const int d = qm.d;
  const double rmin = qm.r_min_factor * qm.R_max;
  // composite Gauss-Legendre in log r: dyadic panels from the top, so the
  // mass-carrying decades keep full resolution however small rmin is
  QuadRule logr;
  {
    double lo = std::log(rmin), hi = std::log(qm.R_max);
    int per_panel = std::max(8, qm.radial_nodes / 4);
    double width = 1.5, top = hi;
    while (top > lo) {
      double bot = std::max(lo, top - width);
      QuadRule g = gl_on(per_panel, bot, top);
      logr.x.insert(logr.x.end(), g.x.begin(), g.x.end());
      logr.w.insert(logr.w.end(), g.w.begin(), g.w.end());
      top = bot;
      width *= 2.0;
    }
  }

  std::vector<Vec> dirs;
  std::vector<double> dirw;
  if (d == 2) {
    for (int i = 0; i < qm.angular_nodes; ++i) {
      double th = 2.0 * M_PI * i / qm.angular_nodes;
      dirs.push_back({std::cos(th), std::sin(th), 0.0});
      dirw.push_back(2.0 * M_PI / qm.angular_nodes);
    }
  } else {
    QuadRule mu = gl_on(qm.polar_nodes, -1.0, 1.0);
    for (int i = 0; i < qm.polar_nodes; ++i) {
      double st = std::sqrt(1.0 - mu.x[i] * mu.x[i]);
      for (int j = 0; j < qm.angular_nodes; ++j) {
        double ph = 2.0 * M_PI * j / qm.angular_nodes;
        dirs.push_back({st * std::cos(ph), st * std::sin(ph), mu.x[i]});
        dirw.push_back(mu.w[i] * 2.0 * M_PI / qm.angular_nodes);
      }
    }
  }

  auto eval = [&](const Vec& x, const Vec& y, double* v) {
    f(x, y, v);
    if (qm.symmetrize) {
      std::vector<double> sw(n_comp, 0.0);
      f(y, x, sw.data());
      for (int k = 0; k < n_comp; ++k) v[k] = 0.5 * (v[k] + sw[k]);
    }
  };

  std::vector<Kahan> total(n_comp);
  std::vector<double> fiber(n_comp);
  for (std::size_t di = 0; di < dirs.size(); ++di) {
    const Vec& u = dirs[di];
    Vec e[2];
    perp_basis(u, d, e);
    for (std::size_t ri = 0; ri < logr.x.size(); ++ri) {
      double r = std::exp(logr.x[ri]);
      double wt = dirw[di] * logr.w[ri] * std::pow(r, d - 1);
      Vec x = r * u;
      if (d == 2) {
        VecFn g = [&](double t, double* v) {
          eval(x, t * e[0], v);
          std::vector<double> neg(n_comp);
          eval(x, (-t) * e[0], neg.data());
          for (int k = 0; k < n_comp; ++k) v[k] += neg[k];
        };
        ray_integral_multi(g, n_comp, std::max(0.25, 0.1 * qm.R_max), qm.fiber_tol, qm.R_max,
                           fiber.data());
      } else {
        std::fill(fiber.begin(), fiber.end(), 0.0);
        std::vector<double> ray(n_comp);
        for (int ai = 0; ai < qm.fiber_angle_nodes; ++ai) {
          double ph = 2.0 * M_PI * ai / qm.fiber_angle_nodes;
          Vec w2 = std::cos(ph) * e[0] + std::sin(ph) * e[1];
          VecFn g = [&](double t, double* v) {
            eval(x, t * w2, v);
            for (int k = 0; k < n_comp; ++k) v[k] *= t;
          };
          ray_integral_multi(g, n_comp, std::max(0.25, 0.1 * qm.R_max), qm.fiber_tol, qm.R_max,
                             ray.data());
          for (int k = 0; k < n_comp; ++k) fiber[k] += ray[k];
        }
        for (int k = 0; k < n_comp; ++k) fiber[k] *= 2.0 * M_PI / qm.fiber_angle_nodes;
      }
      for (int k = 0; k < n_comp; ++k) total[k].add(wt * fiber[k]);
    }
  }
  for (int k = 0; k < n_comp; ++k) out[k] = total[k].value();
}

double quadric_integrate(const std::function<double(const Vec&, const Vec&)>& f,
                         const QuadricMeasure& qm, double declared_decay) {
  double out = 0.0;
  quadric_integrate_multi([&f](const Vec& x, const Vec& y, double* v) { v[0] = f(x, y); }, 1, qm,
                          declared_decay, &out);
  return out;
}

double quadric_integrate_y_disintegration(const std::function<double(const Vec&, const Vec&)>& f,
                                          const QuadricMeasure& qm, double declared_decay) {
  // mu^Sigma is invariant under (x,y) -> (y,x); the y-projection formula is
  // the x-projection applied to the swapped integrand.
  return quadric_integrate([&f](const Vec& x, const Vec& y) { return f(y, x); }, qm,
                           declared_decay);
}

double theoremA_integral(const Vec& s, const Profiles& prof, const QuadricMeasure& qm) {
  double gs = prof.gamma(s);
  auto f = [&](const Vec& x, const Vec& y) {
    return prof.B(x + s) * prof.B(y + s) * prof.B(x + y + s);
  };
  return M_PI / gs * quadric_integrate(f, qm, 20.0);
}

std::vector<double> symmetric_eigenvalues(const std::vector<double>& A, int n) {
  if ((int)A.size() != n * n) throw std::invalid_argument("symmetric_eigenvalues: size mismatch");
  std::vector<double> M = A;
  auto at = [&](int i, int j) -> double& { return M[(std::size_t)i * n + j]; };
  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += at(i, j) * at(i, j);
    if (off < 1e-28) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(at(p, q)) < 1e-300) continue;
        double theta = 0.5 * std::atan2(2.0 * at(p, q), at(q, q) - at(p, p));
        double c = std::cos(theta), sn = std::sin(theta);
        for (int k = 0; k < n; ++k) {
          double akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp - sn * akq;
          at(k, q) = sn * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk - sn * aqk;
          at(q, k) = sn * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

double fresnel_bound(const std::vector<double>& Q, int n, double phi_hat_l1, double nu) {
  auto ev = symmetric_eigenvalues(Q, n);
  double det = 1.0;
  for (double e : ev) det *= e;
  if (std::abs(det) < 1e-14) throw std::invalid_argument("fresnel_bound: singular Q");
  return std::pow(nu / (2.0 * M_PI), 0.5 * n) / std::sqrt(std::abs(det)) * phi_hat_l1;
}

std::complex<double> gaussian_phase_integral(const std::vector<double>& Q, int n,
                                             const GaussianEnvelope& phi, double nu) {
  auto ev = symmetric_eigenvalues(Q, n);
  double det = 1.0;
  for (double e : ev) det *= e;
  if (std::abs(det) < 1e-14) throw std::invalid_argument("gaussian_phase_integral: singular Q");
  // int exp(-x.(M - i Q/nu).x / 2) dx with M = (2/sigma2) I
  std::complex<double> val = phi.beta * std::pow(2.0 * M_PI, 0.5 * n);
  double m = 2.0 / phi.sigma2;
  for (double q : ev) val /= std::sqrt(std::complex<double>(m, -q / nu));
  return val;
}

double gaussian_envelope_fourier_l1(int n, const GaussianEnvelope& phi) {
  // phi_hat(xi) = beta (pi sigma2)^{n/2} exp(-sigma2 |xi|^2 / 4)
  return phi.beta * std::pow(2.0 * M_PI, n);
}

}  // namespace wavekin
