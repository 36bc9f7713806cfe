#include "wavekin/wick.hpp"

#include <algorithm>
#include <cmath>

#include "wavekin/kinetic.hpp"
#include "wavekin/numerics.hpp"
#include "wavekin/resonance.hpp"

namespace wavekin {

WickEngine::WickEngine(std::shared_ptr<const ModeSet> ms, Profiles prof, double nu)
    : ms_(std::move(ms)), prof_(std::move(prof)), nu_(nu) {
  if (!(nu > 0.0 && nu <= 0.5)) throw std::invalid_argument("WickEngine: nu in (0,1/2]");
  const std::size_t M = ms_->size();
  gam_.resize(M);
  B_.resize(M);
  k2_.resize(M);
  for (std::size_t m = 0; m < M; ++m) {
    gam_[m] = prof_.gamma((*ms_)[m].s);
    B_[m] = prof_.B((*ms_)[m].s);
    k2_[m] = norm2((*ms_)[m].s);
  }
}

ConvGrid& WickEngine::grid() const {
  if (!grid_) grid_.emplace(ms_->spec().d, ms_->spec().index_radius());
  return *grid_;
}

// ---------------------------------------------------------------------------
// direct pair sums
// ---------------------------------------------------------------------------

MomentValue WickEngine::order1_moment_stationary(const Vec& s, const WickQuad& q) const {
  (void)q;
  const std::size_t M = ms_->size();
  const auto& spec = ms_->spec();
  double gs = prof_.gamma(s);
  // is the target a retained mode?
  IVec ns{(int)std::lround(s[0] * spec.L), (int)std::lround(s[1] * spec.L),
          (int)std::lround(s[2] * spec.L)};
  bool on_lattice = ms_->find(ns) >= 0 && norm(s - spec.freq(ns)) < 1e-12 * (1.0 + norm(s));

  Kahan acc;
  for (std::size_t i = 0; i < M; ++i) {
    for (std::size_t j = 0; j < M; ++j) {
      double g3, B3, omega;
      if (on_lattice) {
        IVec n3 = (*ms_)[i].n + (*ms_)[j].n - ns;
        int k3 = ms_->find(n3);
        if (k3 < 0) continue;
        if ((*ms_)[i].n == n3 || (*ms_)[i].n == ns) continue;  // strict delta
        g3 = gam_[k3];
        B3 = B_[k3];
        omega = (k2_[i] + k2_[j] - k2_[(std::size_t)k3] - norm2(s));
      } else {
        Vec s3 = (*ms_)[i].s + (*ms_)[j].s - s;
        if (norm2(s3) > spec.cutoff_radius * spec.cutoff_radius) continue;
        g3 = prof_.gamma(s3);
        B3 = prof_.B(s3);
        omega = k2_[i] + k2_[j] - norm2(s3) - norm2(s);
      }
      double Gamma = gam_[i] + gam_[j] + g3 + gs;
      acc.add(B_[i] * B_[j] * B3 * Gamma / (omega * omega + nu_ * nu_ * Gamma * Gamma));
    }
  }
  MomentValue mv;
  mv.kind = MomentKind::Sigma_s;
  mv.s = s;
  mv.nu = nu_;
  mv.L = spec.L;
  mv.value = 2.0 * nu_ * nu_ / gs * std::pow(spec.L, -2.0 * spec.d) * acc.value();
  return mv;
}

// ---------------------------------------------------------------------------
// FFT sweeps
// ---------------------------------------------------------------------------

namespace {
struct SweepBufs {
  std::vector<cplx> m, h, T1, T2, T3;
  void resize(std::size_t M) {
    m.resize(M);
    h.resize(M);
    T1.resize(M);
    T2.resize(M);
    T3.resize(M);
  }
};
}  // namespace

std::vector<double> WickEngine::stationary_sweep(bool full_n2, const WickQuad& q) const {
  const std::size_t M = ms_->size();
  const auto& spec = ms_->spec();
  const double Ld2 = std::pow(spec.L, -2.0 * spec.d);
  double gmin = *std::min_element(gam_.begin(), gam_.end());
  double u_cut = -std::log(q.tail_tol) / (4.0 * gmin);
  double rc2 = spec.cutoff_radius * spec.cutoff_radius;
  double rate = std::min(q.omega_cut, 2.0 * rc2) / nu_;
  QuadRule un = oscillatory_panels(0.0, u_cut, rate, q.u_nodes_per_panel, q.u_phase_per_panel);

  std::vector<double> a1sq(M, 0.0);
  std::vector<cplx> ea2(M, cplx{});
  SweepBufs b;
  b.resize(M);
  ConvWork work;
  for (std::size_t ui = 0; ui < un.x.size(); ++ui) {
    double u = un.x[ui], wu = un.w[ui];
    for (std::size_t k = 0; k < M; ++k) {
      cplx ph = std::polar(1.0, k2_[k] / nu_ * u);
      double dec = std::exp(-gam_[k] * u);
      b.h[k] = dec * ph;
      b.m[k] = B_[k] * dec * ph;
    }
    strict_triple_conv(*ms_, grid(), b.m.data(), b.m.data(), b.m.data(), b.T1.data(), work);
    if (full_n2) {
      strict_triple_conv(*ms_, grid(), b.m.data(), b.m.data(), b.h.data(), b.T2.data(), work);
      strict_triple_conv(*ms_, grid(), b.h.data(), b.m.data(), b.m.data(), b.T3.data(), work);
    }
    for (std::size_t k = 0; k < M; ++k) {
      cplx cph = std::conj(std::polar(1.0, k2_[k] / nu_ * u)) * std::exp(-gam_[k] * u);
      a1sq[k] += wu * 2.0 / gam_[k] * (cph * b.T1[k]).real() * Ld2;
      if (full_n2) ea2[k] += wu * B_[k] / gam_[k] * cph * (b.T2[k] - 2.0 * b.T3[k]) * Ld2;
    }
  }
  std::vector<double> out(M);
  for (std::size_t k = 0; k < M; ++k) out[k] = a1sq[k] + (full_n2 ? 2.0 * ea2[k].real() : 0.0);
  return out;
}

std::vector<double> WickEngine::order1_moment_stationary_all(const WickQuad& q) const {
  return stationary_sweep(false, q);
}

std::vector<double> WickEngine::spectrum_order2_stationary_all(const WickQuad& q) const {
  return stationary_sweep(true, q);
}

std::vector<double> WickEngine::finite_T_sweep(double tau, double T, const WickQuad& q) const {
  const std::size_t M = ms_->size();
  const auto& spec = ms_->spec();
  const double Ld2 = std::pow(spec.L, -2.0 * spec.d);
  double gmin = *std::min_element(gam_.begin(), gam_.end());
  double u_cut = std::min(tau + T, -std::log(q.tail_tol) / (4.0 * gmin));
  double rc2 = spec.cutoff_radius * spec.cutoff_radius;
  double rate = std::min(q.omega_cut, 2.0 * rc2) / nu_;
  QuadRule un = oscillatory_panels(0.0, u_cut, rate, q.u_nodes_per_panel, q.u_phase_per_panel);

  std::vector<double> a1sq(M, 0.0);
  std::vector<cplx> ea2(M, cplx{});
  SweepBufs b;
  b.resize(M);
  ConvWork work;
  for (std::size_t ui = 0; ui < un.x.size(); ++ui) {
    double u = un.x[ui], wu = un.w[ui];
    double v_lo = u - 2.0 * T, v_hi = 2.0 * tau - u;
    if (!(v_hi > v_lo)) continue;
    QuadRule vn = oscillatory_panels(v_lo, v_hi, q.v_rate, q.v_nodes_per_panel, 4.0);
    for (std::size_t vi = 0; vi < vn.x.size(); ++vi) {
      double v = vn.x[vi], w = wu * vn.w[vi];
      double l = 0.5 * (v + u), lp = 0.5 * (v - u);
      for (std::size_t k = 0; k < M; ++k) {
        cplx ph = std::polar(1.0, k2_[k] / nu_ * u);
        double dec = std::exp(-gam_[k] * u);
        b.h[k] = dec * ph;
        b.m[k] = B_[k] * (dec - std::exp(-gam_[k] * (2.0 * T + v))) * ph;
      }
      strict_triple_conv(*ms_, grid(), b.m.data(), b.m.data(), b.m.data(), b.T1.data(), work);
      strict_triple_conv(*ms_, grid(), b.m.data(), b.m.data(), b.h.data(), b.T2.data(), work);
      strict_triple_conv(*ms_, grid(), b.h.data(), b.m.data(), b.m.data(), b.T3.data(), work);
      for (std::size_t k = 0; k < M; ++k) {
        cplx cph = std::conj(std::polar(1.0, k2_[k] / nu_ * u));
        double gs = gam_[k];
        a1sq[k] += w * 2.0 * (cph * b.T1[k]).real() * std::exp(-gs * (2.0 * tau - v)) * Ld2;
        double Cs = B_[k] * (std::exp(-gs * (tau - lp)) - std::exp(-gs * (2.0 * T + tau + lp)));
        ea2[k] += w * 0.5 * std::exp(-gs * (tau - l)) * Cs * cph *
                  (2.0 * b.T2[k] - 4.0 * b.T3[k]) * Ld2;
      }
    }
  }
  std::vector<double> out(M);
  for (std::size_t k = 0; k < M; ++k) out[k] = a1sq[k] + 2.0 * ea2[k].real();
  return out;
}

std::vector<double> WickEngine::spectrum_order2_all(double tau, double T, const WickQuad& q) const {
  if (!std::isfinite(T)) return spectrum_order2_stationary_all(q);
  if (tau < -T) throw std::invalid_argument("spectrum_order2_all: tau < -T");
  return finite_T_sweep(tau, T, q);
}

double WickEngine::spectrum_order2_direct(const Vec& s, double tau, double T) const {
  const std::size_t M = ms_->size();
  const auto& spec = ms_->spec();
  IVec ns{(int)std::lround(s[0] * spec.L), (int)std::lround(s[1] * spec.L),
          (int)std::lround(s[2] * spec.L)};
  if (ms_->find(ns) < 0) throw std::invalid_argument("spectrum_order2_direct: s not retained");
  double gs = prof_.gamma(s), Bs = prof_.B(s);
  Kahan acc;
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = 0; j < M; ++j) {
      IVec n3 = (*ms_)[i].n + (*ms_)[j].n - ns;
      int k3 = ms_->find(n3);
      if (k3 < 0) continue;
      if ((*ms_)[i].n == n3 || (*ms_)[i].n == ns) continue;
      double omega = k2_[i] + k2_[j] - k2_[(std::size_t)k3] - norm2(s);
      acc.add(detail::n2_pair_kernel(omega, nu_, gam_[i], gam_[j], gam_[(std::size_t)k3], gs,
                                     B_[i], B_[j], B_[(std::size_t)k3], Bs, tau, T));
    }
  return std::pow(spec.L, -2.0 * spec.d) * acc.value();
}

SpectralDensity WickEngine::n_leq2(double tau, const PhysicalParams& par, const WickQuad& q) const {
  std::vector<double> n2 = spectrum_order2_all(tau, par.T, q);
  const std::size_t M = ms_->size();
  std::vector<double> vals(M);
  double rho2 = par.rho() * par.rho();
  for (std::size_t m = 0; m < M; ++m)
    vals[m] = n0_spectrum((*ms_)[m].s, tau, prof_, par) + rho2 * n2[m];
  return SpectralDensity::on_lattice(ms_, std::move(vals));
}

// ---------------------------------------------------------------------------
// increment machinery
// ---------------------------------------------------------------------------

MomentValue WickEngine::increment_moment_sum(const Vec& s, double tau, const PhysicalParams& par,
                                             double* parts_out) const {
  if (!(tau > 0.0 && tau <= 1.0))
    throw std::invalid_argument("increment_moment_sum: tau in (0,1]");
  const std::size_t M = ms_->size();
  const auto& spec = ms_->spec();
  IVec ns{(int)std::lround(s[0] * spec.L), (int)std::lround(s[1] * spec.L),
          (int)std::lround(s[2] * spec.L)};
  int ks = ms_->find(ns);
  if (ks < 0) throw std::invalid_argument("increment_moment_sum: s not retained");
  double gs = gam_[(std::size_t)ks];
  auto n0 = [&](std::size_t k) {
    return par.finite_T() ? B_[k] * (1.0 - std::exp(-2.0 * gam_[k] * par.T)) : B_[k];
  };
  double ns0 = n0((std::size_t)ks);
  Kahan s1acc, s2acc, s3acc;
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t j = 0; j < M; ++j) {
      IVec n3 = (*ms_)[i].n + (*ms_)[j].n - ns;
      int k3 = ms_->find(n3);
      if (k3 < 0) continue;
      if ((*ms_)[i].n == n3 || (*ms_)[i].n == ns) continue;
      double omega = k2_[i] + k2_[j] - k2_[(std::size_t)k3] - norm2(s);
      IncrementKernels zk =
          increment_kernels(omega, gam_[i], gam_[j], gam_[(std::size_t)k3], gs, tau, nu_);
      double n1 = n0(i), n2v = n0(j), n3v = n0((std::size_t)k3);
      s1acc.add(zk.Z4 * n1 * n2v * n3v);
      s2acc.add(zk.Z3 * n1 * n2v * ns0);
      s3acc.add(zk.Z1 * n2v * n3v * ns0);
    }
  double scale = std::pow(spec.L, -2.0 * spec.d);
  double S1 = scale * s1acc.value(), S2 = scale * s2acc.value(), S3 = scale * s3acc.value();
  if (parts_out) {
    parts_out[0] = 2.0 * S1;
    parts_out[1] = 2.0 * S2;
    parts_out[2] = -4.0 * S3;
  }
  MomentValue mv;
  mv.kind = MomentKind::cZ;
  mv.s = s;
  mv.tau = tau;
  mv.nu = nu_;
  mv.L = spec.L;
  mv.value = 2.0 * S1 + 2.0 * S2 - 4.0 * S3;
  return mv;
}

MomentValue WickEngine::cross_correlation_sum(const Vec& s, double tau, double g,
                                              const std::function<double(const Vec&)>& f,
                                              double T) const {
  const std::size_t M = ms_->size();
  const auto& spec = ms_->spec();
  IVec ns{(int)std::lround(s[0] * spec.L), (int)std::lround(s[1] * spec.L),
          (int)std::lround(s[2] * spec.L)};
  cplx acc{};
  for (std::size_t i = 0; i < M; ++i) {
    double fi = f((*ms_)[i].s);
    if (fi == 0.0) continue;
    for (std::size_t j = 0; j < M; ++j) {
      IVec n3 = (*ms_)[i].n + (*ms_)[j].n - ns;
      int k3 = ms_->find(n3);
      if (k3 < 0) continue;
      if ((*ms_)[i].n == n3 || (*ms_)[i].n == ns) continue;
      double omega = k2_[i] + k2_[j] - k2_[(std::size_t)k3] - norm2(s);
      double c = omega / nu_;
      cplx tfac = exp_integral(cplx(0.0, c), 0.0, tau);
      cplx past = std::isfinite(T) ? exp_integral(cplx(g, -c), -T, 0.0) : 1.0 / cplx(g, -c);
      acc += fi * f((*ms_)[j].s) * f((*ms_)[(std::size_t)k3].s) * tfac * past;
    }
  }
  MomentValue mv;
  mv.kind = MomentKind::cross_S;
  mv.s = s;
  mv.tau = tau;
  mv.nu = nu_;
  mv.L = spec.L;
  mv.value = std::abs(std::pow(spec.L, -2.0 * spec.d) * acc);
  return mv;
}

MomentValue WickEngine::oscillating_sum_sigma0(const Vec& s, double tau,
                                               const std::function<double(const Vec&)>& f) const {
  if (!(tau >= 0.0 && tau <= 1.0))
    throw std::invalid_argument("oscillating_sum_sigma0: tau in [0,1]");
  const std::size_t M = ms_->size();
  const auto& spec = ms_->spec();
  double gs = prof_.gamma(s);
  IVec ns{(int)std::lround(s[0] * spec.L), (int)std::lround(s[1] * spec.L),
          (int)std::lround(s[2] * spec.L)};
  Kahan acc;
  for (std::size_t i = 0; i < M; ++i) {
    double fi = f((*ms_)[i].s);
    if (fi == 0.0) continue;
    for (std::size_t j = 0; j < M; ++j) {
      IVec n3 = (*ms_)[i].n + (*ms_)[j].n - ns;
      int k3 = ms_->find(n3);
      if (k3 < 0) continue;
      if ((*ms_)[i].n == n3 || (*ms_)[i].n == ns) continue;
      double omega = k2_[i] + k2_[j] - k2_[(std::size_t)k3] - norm2(s);
      double c = omega / nu_;
      double re = std::cos(c * tau) - std::exp(-gs * tau);
      double im = std::sin(c * tau);
      acc.add(fi * f((*ms_)[j].s) * f((*ms_)[(std::size_t)k3].s) * (re * re + im * im) /
              (gs * gs + c * c));
    }
  }
  MomentValue mv;
  mv.kind = MomentKind::S1;
  mv.s = s;
  mv.tau = tau;
  mv.nu = nu_;
  mv.L = spec.L;
  mv.value = std::pow(spec.L, -2.0 * spec.d) * acc.value();
  return mv;
}

// ---------------------------------------------------------------------------
// continuum (L -> infinity) pair integrals, d = 2
// ---------------------------------------------------------------------------

namespace {

// J = int dx dy N(s1,s2,s3) / ((x.y)^2 + W(s1,s2,s3)^2), d = 2, with
// s1 = s+x, s2 = s+y, s3 = s1+s2-s. N, W given in mode coordinates.
template <class NFn, class WFn>
double lorentzian_pair_integral_2d(const Vec& s, NFn&& N, WFn&& W, const ContinuumQuad& cq) {
  Kahan total;
  QuadRule rr = gl_on(cq.n_radial, 0.0, cq.range);
  QuadRule qq = gl_on(cq.n_fiber, -cq.range, cq.range);
  double phimax = std::atan(cq.peak_halfwidth);
  QuadRule ff = gl_on(cq.n_peak, -phimax, phimax);
  for (int ai = 0; ai < cq.n_angle; ++ai) {
    double th = 2.0 * M_PI * ai / cq.n_angle;
    Vec u{std::cos(th), std::sin(th), 0.0};
    Vec w{-u[1], u[0], 0.0};
    for (int ri = 0; ri < cq.n_radial; ++ri) {
      double r = rr.x[ri];
      Vec s1 = s + r * u;
      auto eval = [&](double p, double q) {
        Vec s2 = s + p * u + q * w;
        Vec s3 = s1 + s2 - s;
        double xy = r * p;
        double Wv = W(s1, s2, s3);
        return N(s1, s2, s3) / (xy * xy + Wv * Wv);
      };
      for (int qi = 0; qi < cq.n_fiber; ++qi) {
        double q = qq.x[qi];
        Vec s20{s[0] + q * w[0], s[1] + q * w[1], 0.0};
        Vec s30 = s1 + s20 - s;
        double W0 = W(s1, s20, s30);
        double inner = 0.0;
        // peak: p = (W0/r) tan(phi)
        double scale = W0 / r;
        for (int fi = 0; fi < cq.n_peak; ++fi) {
          double phi = ff.x[fi];
          double t = std::tan(phi);
          double p = scale * t;
          double jac = scale * (1.0 + t * t);
          inner += ff.w[fi] * jac * eval(p, q);
        }
        // smooth tails, geometric panels
        double p0 = scale * cq.peak_halfwidth;
        double pmax = cq.range + norm(s) + 1.0;
        if (p0 < pmax) {
          for (int side = -1; side <= 1; side += 2) {
            double a = p0;
            while (a < pmax) {
              double bnd = std::min(pmax, 4.0 * a);
              QuadRule tp = gl_on(cq.n_tail_panel, a, bnd);
              for (int ti = 0; ti < cq.n_tail_panel; ++ti)
                inner += tp.w[ti] * eval(side * tp.x[ti], q);
              a = bnd;
            }
          }
        }
        total.add(2.0 * M_PI / cq.n_angle * rr.w[ri] * r * qq.w[qi] * inner);
      }
    }
  }
  return total.value();
}

}  // namespace

MomentValue WickEngine::order1_moment_stationary_continuum(const Vec& s,
                                                           const ContinuumQuad& cq) const {
  if (ms_->spec().d != 2)
    throw std::invalid_argument("order1_moment_stationary_continuum: d = 2 only");
  double gs = prof_.gamma(s);
  auto Gamma = [&](const Vec& s1, const Vec& s2, const Vec& s3) {
    return prof_.gamma(s1) + prof_.gamma(s2) + prof_.gamma(s3) + gs;
  };
  auto N = [&](const Vec& s1, const Vec& s2, const Vec& s3) {
    return prof_.B123(s1, s2, s3) * Gamma(s1, s2, s3);
  };
  auto W = [&](const Vec& s1, const Vec& s2, const Vec& s3) {
    return 0.5 * nu_ * Gamma(s1, s2, s3);
  };
  // omega = 2 x.y, so Gamma/(omega^2 + nu^2 Gamma^2) = (Gamma/4)/((x.y)^2 + (nu Gamma/2)^2)
  double J = lorentzian_pair_integral_2d(s, N, W, cq);
  MomentValue mv;
  mv.kind = MomentKind::Sigma_s;
  mv.s = s;
  mv.nu = nu_;
  mv.L = 0.0;
  mv.value = 2.0 * nu_ * nu_ / gs * 0.25 * J;
  return mv;
}

MomentValue WickEngine::oscillating_sum_continuum(const Vec& s, double tau,
                                                  const std::function<double(const Vec&)>& f,
                                                  const ContinuumQuad& cq) const {
  if (ms_->spec().d != 2)
    throw std::invalid_argument("oscillating_sum_continuum: d = 2 only");
  const double gs = prof_.gamma(s);
  const double A = 1.0 + std::exp(-2.0 * gs * tau);
  const double Bc = 2.0 * std::exp(-gs * tau);
  Kahan total;
  QuadRule rr = gl_on(cq.n_radial, 0.0, cq.range);
  QuadRule qq = gl_on(cq.n_fiber, -cq.range, cq.range);
  double phimax = std::atan(cq.peak_halfwidth);
  QuadRule ff = gl_on(cq.n_peak, -phimax, phimax);
  for (int ai = 0; ai < cq.n_angle; ++ai) {
    double th = 2.0 * M_PI * ai / cq.n_angle;
    Vec u{std::cos(th), std::sin(th), 0.0};
    Vec w{-u[1], u[0], 0.0};
    for (int ri = 0; ri < cq.n_radial; ++ri) {
      double r = rr.x[ri];
      Vec s1 = s + r * u;
      double f1 = f(s1);
      if (f1 == 0.0) continue;
      for (int qi = 0; qi < cq.n_fiber; ++qi) {
        double q = qq.x[qi];
        auto env = [&](double p) {
          Vec s2 = s + p * u + q * w;
          Vec s3 = s1 + s2 - s;
          return f1 * f(s2) * f(s3);
        };
        // c = omega/nu = 2 r p / nu
        const double kappa = 2.0 * r / nu_;  // c = kappa p
        double inner = 0.0;
        // peak (|c| <= gs * peak_halfwidth): both the Lorentzian and the
        // cosine are resolved in the scaled variable
        double scale = gs / kappa;  // p at c = gs
        {
          // A part via tan substitution
          for (int fi = 0; fi < cq.n_peak; ++fi) {
            double t = std::tan(ff.x[fi]);
            double p = scale * t;
            double jac = scale * (1.0 + t * t);
            double c = kappa * p;
            inner += ff.w[fi] * jac * env(p) * A / (gs * gs + c * c);
          }
          // cosine part on oscillatory panels in c
          double c_hi = gs * cq.peak_halfwidth;
          QuadRule cn = oscillatory_panels(-c_hi, c_hi, tau, 16, 12.0);
          for (std::size_t ciq = 0; ciq < cn.x.size(); ++ciq) {
            double c = cn.x[ciq];
            double p = c / kappa;
            inner += cn.w[ciq] / kappa * env(p) * (-Bc * std::cos(c * tau)) / (gs * gs + c * c);
          }
        }
        // tails |c| > gs*peak_halfwidth: smooth part by GL, cosine by Filon
        double p0 = scale * cq.peak_halfwidth;
        double pmax = cq.range + norm(s) + 1.0;
        if (p0 < pmax) {
          for (int side = -1; side <= 1; side += 2) {
            double a = p0;
            while (a < pmax) {
              double bnd = std::min(pmax, 4.0 * a);
              QuadRule tp = gl_on(cq.n_tail_panel, a, bnd);
              for (int ti = 0; ti < cq.n_tail_panel; ++ti) {
                double p = side * tp.x[ti];
                double c = kappa * p;
                inner += tp.w[ti] * env(p) * A / (gs * gs + c * c);
              }
              auto gsm = [&](double p) {
                double c = kappa * p;
                return env(p) * (-Bc) / (gs * gs + c * c);
              };
              inner += filon_exp_panel(gsm, side == 1 ? a : -bnd, side == 1 ? bnd : -a,
                                       kappa * tau, cq.n_tail_panel + 2)
                           .real();
              a = bnd;
            }
          }
        }
        total.add(2.0 * M_PI / cq.n_angle * rr.w[ri] * r * qq.w[qi] * inner);
      }
    }
  }
  MomentValue mv;
  mv.kind = MomentKind::S1;
  mv.s = s;
  mv.tau = tau;
  mv.nu = nu_;
  mv.L = 0.0;
  mv.value = total.value();
  return mv;
}

// ---------------------------------------------------------------------------
// increment prediction
// ---------------------------------------------------------------------------

IncrementPrediction n_leq2_increment(const SpectralDensity& n_start, double tau,
                                     const Profiles& prof, const PhysicalParams& par,
                                     const LatticeSpec& lat, const KineticConfig& kcfg) {
  if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("n_leq2_increment: tau in (0,1]");
  if (n_start.nonneg_flag()) {
    for (double v : n_start.values())
      if (v < 0.0) throw std::invalid_argument("n_leq2_increment: negative start state");
  }
  const auto& ms = n_start.mode_set();
  RadialDensity nr = radial_average(n_start);
  auto nfn = [&nr](const Vec& v) { return nr(v); };
  IncrementPrediction out;
  out.predicted.resize(ms.size());
  // K^tau on the distinct radii, then per mode
  std::vector<double> radii = nr.radii();
  RadialDensity Kt = kinetic_tau_apply(nfn, tau, prof, radii, lat.d, kcfg);
  for (std::size_t m = 0; m < ms.size(); ++m) {
    const Vec& s = ms[m].s;
    double g = prof.gamma(s);
    double relax = std::exp(-2.0 * g * tau);
    double forced = prof.b.b2(s) / g * (1.0 - relax);
    out.predicted[m] = relax * n_start.at_mode(m) + forced + par.eps * Kt(norm(s));
  }
  double aleph = PhysicalParams::aleph_for(lat.d);
  out.budget = par.eps * (std::pow(par.nu, 1.0 - aleph) +
                          std::pow(par.nu, -3.0) / (lat.L * lat.L) + tau * tau + par.eps * tau);
  return out;
}

}  // namespace wavekin
