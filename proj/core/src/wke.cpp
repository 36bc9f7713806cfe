#include "wavekin/wke.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wavekin/numerics.hpp"
#include "wavekin/ou.hpp"

namespace wavekin {

std::vector<double> WkeParams::default_radii(double s_max, int n) {
  std::vector<double> r;
  r.reserve(n);
  for (int i = 0; i < n; ++i) {
    double t = (double)i / (n - 1);
    r.push_back(s_max * (std::expm1(2.0 * t)) / std::expm1(2.0));
  }
  return r;
}

namespace {
std::vector<double> grid_of(const WkeParams& par) {
  return par.radii.empty() ? WkeParams::default_radii() : par.radii;
}
}  // namespace

double wke_norm(const RadialDensity& m, double r) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.radii().size(); ++i) {
    double x = m.radii()[i];
    best = std::max(best, std::abs(m.values()[i]) * std::pow(1.0 + x * x, r / 2));
  }
  return best;
}

WkeState wke_initial(const WkeParams& par) {
  auto radii = grid_of(par);
  WkeState st;
  st.m = RadialDensity(radii, std::vector<double>(radii.size(), 0.0));
  st.tau = -par.T;
  return st;
}

WkeState wke_step(const WkeState& state, double h, const WkeParams& par) {
  if (!(h > 0.0)) throw std::invalid_argument("wke_step: h > 0");
  if (par.eps > par.eps_max) throw std::invalid_argument("wke_step: eps above eps_max");
  const auto& radii = state.m.radii();
  std::vector<double> next(radii.size());
  const RadialDensity& m = state.m;
  auto mfn = [&m](const Vec& v) { return m(v); };
  std::vector<double> K(radii.size(), 0.0);
  if (par.eps != 0.0) {
    RadialDensity Km = kinetic_apply_radial(mfn, radii, par.d, par.kin);
    K = Km.values();
  }
  double before = wke_norm(state.m, par.r_norm);
  double minv = state.min_value;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    Vec s{radii[i], 0, 0};
    double g = par.prof.gamma(s);
    double relax = std::exp(-2.0 * g * h);
    double drive = (1.0 - relax) / (2.0 * g);
    next[i] = relax * m.values()[i] + drive * (2.0 * par.prof.b.b2(s) + par.eps * K[i]);
    minv = std::min(minv, next[i]);
  }
  WkeState out;
  out.m = RadialDensity(radii, std::move(next));
  out.tau = state.tau + h;
  out.min_value = minv;
  double after = wke_norm(out.m, par.r_norm);
  if (after > 2.0 * std::max(before, 1e-6) && after > 1e3)
    throw std::runtime_error("wke_step: norm blow-up");
  return out;
}

WkeTrajectory wke_solve(const WkeState& initial, double tau_end, const WkeParams& par) {
  WkeTrajectory tr;
  WkeState st = initial;
  tr.taus.push_back(st.tau);
  tr.states.push_back(st.m);
  tr.sup_norm_r = wke_norm(st.m, par.r_norm);
  int steps = (int)std::ceil((tau_end - st.tau) / par.h - 1e-12);
  for (int k = 0; k < steps; ++k) {
    double h = std::min(par.h, tau_end - st.tau);
    st = wke_step(st, h, par);
    tr.taus.push_back(st.tau);
    tr.states.push_back(st.m);
    tr.sup_norm_r = std::max(tr.sup_norm_r, wke_norm(st.m, par.r_norm));
  }
  tr.min_value = st.min_value;
  return tr;
}

SteadyState wke_steady_state(double eps, const WkeParams& par, double tol) {
  auto radii = grid_of(par);
  const std::size_t n = radii.size();
  std::vector<double> u(n), f2(n), gam(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec s{radii[i], 0, 0};
    gam[i] = par.prof.gamma(s);
    f2[i] = 2.0 * par.prof.b.b2(s);
    u[i] = f2[i] / (2.0 * gam[i]);  // L^{-1} f
  }
  SteadyState out;
  double prev_gap = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 200; ++it) {
    RadialDensity cur(radii, u);
    auto ufn = [&cur](const Vec& v) { return cur(v); };
    std::vector<double> K(n, 0.0);
    if (eps != 0.0) K = kinetic_apply_radial(ufn, radii, par.d, par.kin).values();
    std::vector<double> nxt(n);
    double gap = 0.0, resid = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      nxt[i] = (eps * K[i] + f2[i]) / (2.0 * gam[i]);
      double w = std::pow(1.0 + radii[i] * radii[i], par.r_norm / 2);
      gap = std::max(gap, std::abs(nxt[i] - u[i]) * w);
      resid = std::max(resid, std::abs(-2.0 * gam[i] * nxt[i] + eps * K[i] + f2[i]) * w);
    }
    u = std::move(nxt);
    out.iterations = it + 1;
    out.residual_norm = resid;
    if (gap <= tol) break;
    if (it > 3 && gap > prev_gap * 1.05)
      throw std::runtime_error("wke_steady_state: iteration not contracting; reduce eps");
    prev_gap = gap;
  }
  // one more residual evaluation at the final iterate
  RadialDensity fin(radii, u);
  auto ufn = [&fin](const Vec& v) { return fin(v); };
  std::vector<double> K(n, 0.0);
  if (eps != 0.0) K = kinetic_apply_radial(ufn, radii, par.d, par.kin).values();
  double resid = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double w = std::pow(1.0 + radii[i] * radii[i], par.r_norm / 2);
    resid = std::max(resid, std::abs(-2.0 * gam[i] * u[i] + eps * K[i] + f2[i]) * w);
  }
  out.residual_norm = resid;
  out.m = std::move(fin);
  return out;
}

double wke_stability_rate(double eps, const RadialDensity& perturbation, const WkeParams& par,
                          double fit_t0, double fit_t1) {
  SteadyState ss = wke_steady_state(eps, par);
  auto radii = ss.m.radii();
  std::vector<double> v = ss.m.values();
  if (perturbation.radii().size() != radii.size())
    throw std::invalid_argument("wke_stability_rate: perturbation grid mismatch");
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += perturbation.values()[i];
  WkeState st;
  st.m = RadialDensity(radii, v);
  st.tau = 0.0;
  std::vector<double> ts, lg;
  while (st.tau < fit_t1 + 1e-12) {
    if (st.tau >= fit_t0 - 1e-12) {
      double gap = 0.0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        double w = std::pow(1.0 + radii[i] * radii[i], par.r_norm / 2);
        gap = std::max(gap, std::abs(st.m.values()[i] - ss.m.values()[i]) * w);
      }
      if (gap > 1e-14) {
        ts.push_back(st.tau);
        lg.push_back(std::log(gap));
      }
    }
    st = wke_step(st, par.h, par);
  }
  if (ts.size() < 3) throw std::runtime_error("wke_stability_rate: too few fit points");
  // linear fit of log gap vs tau; rate = -slope
  double n = (double)ts.size(), sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    sx += ts[i];
    sy += lg[i];
    sxx += ts[i] * ts[i];
    sxy += ts[i] * lg[i];
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return -slope;
}

RadialDensity wke_eps_u0(double tau, const WkeParams& par) {
  auto radii = grid_of(par);
  std::vector<double> v(radii.size());
  PhysicalParams pp(0.1, 0.0, par.T);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    Vec s{radii[i], 0, 0};
    v[i] = n0_spectrum(s, tau, par.prof, pp);
  }
  return RadialDensity(radii, v);
}

RadialDensity wke_eps_u1(double tau, const WkeParams& par, int panels) {
  auto radii = grid_of(par);
  std::vector<double> acc(radii.size(), 0.0);
  if (tau <= -par.T + 1e-14) return RadialDensity(radii, acc);
  QuadRule q = gl_on(panels, -par.T, tau);
  for (int j = 0; j < panels; ++j) {
    double l = q.x[j];
    RadialDensity u0 = wke_eps_u0(l, par);
    auto fn = [&u0](const Vec& v) { return u0(v); };
    RadialDensity K = kinetic_apply_radial(fn, radii, par.d, par.kin);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      Vec s{radii[i], 0, 0};
      double g = par.prof.gamma(s);
      acc[i] += q.w[j] * std::exp(-2.0 * g * (tau - l)) * K.values()[i];
    }
  }
  return RadialDensity(radii, acc);
}

}  // namespace wavekin
