#include "wavekin/kinetic.hpp"

#include <stdexcept>

#include "wavekin/numerics.hpp"
#include "wavekin/parallel.hpp"

namespace wavekin {

KineticConfig KineticConfig::reference(int d) {
  KineticConfig c;
  c.qm = QuadricMeasure(d, 12.0);
  c.qm.radial_nodes = 96;
  c.qm.angular_nodes = d == 2 ? 64 : 32;
  c.qm.polar_nodes = 24;
  c.qm.fiber_tol = 1e-10;
  c.qm.symmetrize = true;
  return c;
}

KineticConfig KineticConfig::fast(int d) {
  KineticConfig c;
  c.qm = QuadricMeasure(d, 10.0);
  c.qm.radial_nodes = 48;
  c.qm.angular_nodes = d == 2 ? 32 : 16;
  c.qm.polar_nodes = 12;
  c.qm.fiber_tol = 1e-7;
  c.qm.symmetrize = true;
  return c;
}

KineticConfig KineticConfig::solver(int d) {
  KineticConfig c;
  c.qm = QuadricMeasure(d, 8.0);
  c.qm.radial_nodes = 24;
  c.qm.angular_nodes = d == 2 ? 12 : 8;
  c.qm.polar_nodes = 8;
  c.qm.fiber_tol = 1e-4;
  c.qm.r_min_factor = 1e-7;
  c.qm.symmetrize = true;
  return c;
}

namespace {
void require_smoothing_index(int d, const KineticConfig& cfg) {
  if (!(cfg.norm_index_r > (double)d))
    throw std::invalid_argument("kinetic: norm index r must exceed d");
}

// the four products v1v2v3, v1v2v4, v1v3v4, v2v3v4 in one pass
void four_products(const DensityFn& v, const Vec& s, double v4, const Vec& x, const Vec& y,
                   double* out) {
  double v1 = v(x + s), v2 = v(y + s), v3 = v(x + y + s);
  out[0] = v2 * v3 * v4;  // J_1 integrand (no v1)
  out[1] = v1 * v3 * v4;  // J_2
  out[2] = v1 * v2 * v4;  // J_3
  out[3] = v1 * v2 * v3;  // J_4
}
}  // namespace

KineticParts kinetic_parts(const DensityFn& v, const Vec& s, int d, const KineticConfig& cfg) {
  require_smoothing_index(d, cfg);
  QuadricMeasure qm = cfg.qm;
  qm.d = d;
  qm.base_point = s;
  const double v4 = v(s);
  double J[4];
  quadric_integrate_multi(
      [&](const Vec& x, const Vec& y, double* out) { four_products(v, s, v4, x, y, out); }, 4, qm,
      3.0 * cfg.norm_index_r, J);
  KineticParts p;
  p.K1 = 2.0 * M_PI * KineticConfig::sigma[0] * J[0];
  p.K2 = 2.0 * M_PI * KineticConfig::sigma[1] * J[1];
  p.K3 = 2.0 * M_PI * KineticConfig::sigma[2] * J[2];
  p.K4 = 2.0 * M_PI * KineticConfig::sigma[3] * J[3];
  return p;
}

double kinetic_apply(const DensityFn& v, const Vec& s, int d, const KineticConfig& cfg) {
  return kinetic_parts(v, s, d, cfg).sum();
}

double polylinear_J(const DensityFn& u1, const DensityFn& u2, const DensityFn& u3,
                    const DensityFn& u4, int l, const Vec& s, int d, const KineticConfig& cfg) {
  require_smoothing_index(d, cfg);
  if (l < 1 || l > 4) throw std::invalid_argument("polylinear_J: l in 1..4");
  QuadricMeasure qm = cfg.qm;
  qm.d = d;
  qm.base_point = s;
  qm.symmetrize = false;  // slots are distinct densities; keep the plain rule
  const double c4 = l == 4 ? 1.0 : u4(s);
  double out = 0.0;
  quadric_integrate_multi(
      [&](const Vec& x, const Vec& y, double* v) {
        double prod = c4;
        if (l != 1) prod *= u1(x + s);
        if (l != 2) prod *= u2(y + s);
        if (l != 3) prod *= u3(x + y + s);
        v[0] = prod;
      },
      1, qm, 3.0 * cfg.norm_index_r, &out);
  return out;
}

double kinetic_tau_factor(double gamma_s, double tau) {
  double x = 2.0 * gamma_s * tau;
  if (std::abs(x) < 1e-8) return tau * (1.0 - 0.5 * x);
  return -std::expm1(-x) / (2.0 * gamma_s);
}

RadialDensity kinetic_apply_radial(const DensityFn& u, const std::vector<double>& out_radii, int d,
                                   const KineticConfig& cfg) {
  std::vector<double> vals(out_radii.size(), 0.0);
  parallel_for(out_radii.size(), [&](std::size_t i, int) {
    Vec s{out_radii[i], 0, 0};
    vals[i] = kinetic_apply(u, s, d, cfg);
  });
  return RadialDensity(out_radii, vals);
}

RadialDensity kinetic_tau_apply(const DensityFn& u, double tau, const Profiles& prof,
                                const std::vector<double>& out_radii, int d,
                                const KineticConfig& cfg) {
  RadialDensity K = kinetic_apply_radial(u, out_radii, d, cfg);
  std::vector<double> vals = K.values();
  for (std::size_t i = 0; i < out_radii.size(); ++i) {
    Vec s{out_radii[i], 0, 0};
    vals[i] *= kinetic_tau_factor(prof.gamma(s), tau);
  }
  return RadialDensity(out_radii, vals);
}

}  // namespace wavekin
