#include "wavekin/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "wavekin/numerics.hpp"
#include "wavekin/parallel.hpp"
#include "wavekin/rng.hpp"

namespace wavekin {

double DuhamelConfig::substep(double nu) const { return h_osc > 0.0 ? h_osc : 0.25 * nu; }

void DuhamelConfig::check(double nu) const {
  if (h_osc > 0.25 * nu * (1.0 + 1e-12))
    throw std::invalid_argument("DuhamelConfig: h_osc must be <= nu/4");
  if (gl_nodes < 2) throw std::invalid_argument("DuhamelConfig: gl_nodes >= 2");
}

ChaosSimulator::ChaosSimulator(std::shared_ptr<const ModeSet> ms, Profiles prof,
                               PhysicalParams par, DuhamelConfig cfg)
    : ms_(std::move(ms)), prof_(std::move(prof)), par_(par), cfg_(cfg) {
  cfg_.check(par_.nu);
  const std::size_t M = ms_->size();
  gam_.resize(M);
  B_.resize(M);
  k2_.resize(M);
  for (std::size_t m = 0; m < M; ++m) {
    gam_[m] = prof_.gamma((*ms_)[m].s);
    B_[m] = prof_.B((*ms_)[m].s);
    k2_[m] = norm2((*ms_)[m].s);
  }
  std::size_t pair_budget = M * M;
  use_fft_ = cfg_.conv_path == DuhamelConfig::Path::fft ||
             (cfg_.conv_path == DuhamelConfig::Path::automatic && pair_budget > 40'000);
  grid_ = std::make_unique<ConvGrid>(ms_->spec().d, ms_->spec().index_radius());
}

double ChaosSimulator::t_start(double first_out) const {
  if (par_.finite_T()) return -par_.T;
  double gmin = *std::min_element(gam_.begin(), gam_.end());
  return first_out - cfg_.T_eff_factor / gmin;
}

namespace {
// Everything per-substep that depends only on the substep length h.
struct SubstepCache {
  std::vector<std::vector<cplx>> node;   // e^{i theta_k (l_j - ta)} [gl][mode]
  std::vector<cplx> full;                // e^{i theta_k h} [mode]
  std::vector<std::vector<double>> damp; // e^{-gamma_k (h - off_j)} [gl][mode]
  std::vector<std::vector<double>> prop; // e^{-gamma_k off_j} [gl][mode]
  std::vector<std::vector<double>> frac; // (1-e^{-g off_j})/(1-e^{-g h}) [gl][mode]
  std::vector<double> dec_half, sd, dec_full;  // OU half-step decay/noise, full decay
};
}  // namespace

ChaosSample ChaosSimulator::simulate(std::uint64_t master_seed, std::uint32_t sample_id,
                                     const std::vector<double>& out_times,
                                     double duhamel_from) const {
  if (out_times.empty()) throw std::invalid_argument("simulate: no output times");
  for (std::size_t i = 1; i < out_times.size(); ++i)
    if (!(out_times[i] > out_times[i - 1]))
      throw std::invalid_argument("simulate: output times must increase");
  if (par_.finite_T() && out_times.front() < -par_.T - 1e-12)
    throw std::invalid_argument("simulate: output before -T");
  const bool restart = std::isfinite(duhamel_from);

  const std::size_t M = ms_->size();
  const double h_max = cfg_.substep(par_.nu);
  const int G = cfg_.gl_nodes;
  const QuadRule& gl = gauss_legendre(G);
  const double Ld = std::pow(ms_->spec().L, -(double)ms_->spec().d);

  // breakpoints: start, all output times
  std::vector<double> brk;
  brk.push_back(t_start(out_times.front()));
  for (double t : out_times)
    if (t > brk.back() + 1e-14) brk.push_back(t);

  ChaosSample cs;
  cs.sample_id = sample_id;
  cs.times = out_times;
  cs.n_modes = M;
  cs.a0.assign(out_times.size() * M, cplx{});
  cs.a1.assign(out_times.size() * M, cplx{});
  cs.a2.assign(out_times.size() * M, cplx{});

  // state
  std::vector<cplx> a0(M, cplx{}), A1(M, cplx{}), A2(M, cplx{}), A1out(M, cplx{});
  std::vector<NoiseStream> streams;
  streams.reserve(M);
  for (std::size_t m = 0; m < M; ++m)
    streams.emplace_back(master_seed, (std::uint32_t)m, sample_id, 0);
  std::uint64_t draw = 0;
  if (!par_.finite_T()) {
    for (std::size_t m = 0; m < M; ++m) {
      auto [z1, z2] = streams[m].gauss_pair(draw);
      a0[m] = std::sqrt(0.5 * B_[m]) * cplx(z1, z2);
    }
  }
  ++draw;

  // caches per distinct substep length
  std::map<long long, SubstepCache> sub_cache;
  auto cache_for = [&](double h) -> const SubstepCache& {
    long long key = (long long)std::llround(h * 1e12);
    auto it = sub_cache.find(key);
    if (it != sub_cache.end()) return it->second;
    SubstepCache c;
    c.node.assign(G, std::vector<cplx>(M));
    c.damp.assign(G, std::vector<double>(M));
    c.prop.assign(G, std::vector<double>(M));
    c.frac.assign(G, std::vector<double>(M));
    c.full.resize(M);
    c.dec_half.resize(M);
    c.sd.resize(M);
    c.dec_full.resize(M);
    for (int j = 0; j < G; ++j) {
      double off = 0.5 * h * (gl.x[j] + 1.0);
      for (std::size_t m = 0; m < M; ++m) {
        c.node[j][m] = std::polar(1.0, k2_[m] / par_.nu * off);
        c.damp[j][m] = std::exp(-gam_[m] * (h - off));
        c.prop[j][m] = std::exp(-gam_[m] * off);
        c.frac[j][m] = std::expm1(-gam_[m] * off) / std::expm1(-gam_[m] * h);
      }
    }
    for (std::size_t m = 0; m < M; ++m) {
      c.full[m] = std::polar(1.0, k2_[m] / par_.nu * h);
      double dh = std::exp(-gam_[m] * 0.5 * h);
      c.dec_half[m] = dh;
      c.sd[m] = std::sqrt(0.5 * B_[m] * (1.0 - dh * dh));
      c.dec_full[m] = dh * dh;
    }
    return sub_cache.emplace(key, std::move(c)).first->second;
  };

  // per-mode phase e^{i theta_k ta} maintained incrementally
  std::vector<cplx> phase(M);
  for (std::size_t m = 0; m < M; ++m) phase[m] = std::polar(1.0, k2_[m] / par_.nu * brk.front());

  ConvWork work;
  std::vector<cplx> f0(M), f1(M), x1(M), x2a(M), x2b(M);
  std::vector<cplx> a0mid(M);
  std::size_t out_idx = 0;
  if (std::abs(out_times.front() - brk.front()) < 1e-14) {
    // output at the start point (finite T with out time -T)
    for (std::size_t m = 0; m < M; ++m) cs.a0[0 * M + m] = a0[m];
    ++out_idx;
  }

  std::vector<cplx> add1(M), add2(M);
  for (std::size_t seg = 0; seg + 1 < brk.size(); ++seg) {
    double ta_seg = brk[seg], tb_seg = brk[seg + 1];
    int nsub = std::max(1, (int)std::ceil((tb_seg - ta_seg) / h_max * (1.0 - 1e-12)));
    double h = (tb_seg - ta_seg) / nsub;
    const SubstepCache& c = cache_for(h);
    for (int sub = 0; sub < nsub; ++sub) {
      double ta = ta_seg + sub * h;
      bool active = !restart || ta >= duhamel_from - 1e-12;

      // OU: midpoint and endpoint (two exact half-steps)
      for (std::size_t m = 0; m < M; ++m) {
        auto [z1, z2] = streams[m].gauss_pair(draw);
        a0mid[m] = c.dec_half[m] * a0[m] + c.sd[m] * cplx(z1, z2);
        auto [z3, z4] = streams[m].gauss_pair(draw + 1);
        a0[m] = c.dec_half[m] * a0mid[m] + c.sd[m] * cplx(z3, z4);
      }
      draw += 2;

      // A(tb) = e^{-gamma h} A(ta) + i L^{-d} sum_j w_j e^{-gamma (tb - l_j)} X(l_j)
      // Two passes: the first accumulates the order-1 increment, the second
      // evaluates the order-2 integrand with a1 interpolated inside the
      // substep (constant-envelope rule), which keeps the substep error at
      // O(h_osc^2). `active` gates only outputs restarted at duhamel_from.
      std::fill(add1.begin(), add1.end(), cplx{});
      std::fill(add2.begin(), add2.end(), cplx{});
      const bool want2 = cfg_.with_order2 && active;
      for (int j = 0; j < G; ++j) {
        double wj = 0.5 * h * gl.w[j];
        for (std::size_t m = 0; m < M; ++m) f0[m] = a0mid[m] * phase[m] * c.node[j][m];
        if (use_fft_)
          strict_triple_conv(*ms_, *grid_, f0.data(), f0.data(), f0.data(), x1.data(), work);
        else
          strict_triple_direct(*ms_, f0.data(), f0.data(), f0.data(), x1.data());
        for (std::size_t m = 0; m < M; ++m)
          add1[m] += wj * c.damp[j][m] * std::conj(phase[m] * c.node[j][m]) * x1[m];
      }
      const cplx I(0.0, 1.0);
      if (want2) {
        for (int j = 0; j < G; ++j) {
          double wj = 0.5 * h * gl.w[j];
          for (std::size_t m = 0; m < M; ++m) {
            cplx ph = phase[m] * c.node[j][m];
            f0[m] = a0mid[m] * ph;
            cplx a1_at_node = c.prop[j][m] * A1[m] + c.frac[j][m] * (I * Ld * add1[m]);
            f1[m] = a1_at_node * ph;
          }
          if (use_fft_) {
            strict_triple_conv(*ms_, *grid_, f1.data(), f0.data(), f0.data(), x2a.data(), work);
            strict_triple_conv(*ms_, *grid_, f0.data(), f0.data(), f1.data(), x2b.data(), work);
          } else {
            strict_triple_direct(*ms_, f1.data(), f0.data(), f0.data(), x2a.data());
            strict_triple_direct(*ms_, f0.data(), f0.data(), f1.data(), x2b.data());
          }
          for (std::size_t m = 0; m < M; ++m)
            add2[m] += wj * c.damp[j][m] * std::conj(phase[m] * c.node[j][m]) *
                       (2.0 * x2a[m] + x2b[m]);
        }
      }
      for (std::size_t m = 0; m < M; ++m) {
        double dec = c.dec_full[m];
        A1[m] = dec * A1[m] + I * Ld * add1[m];
        if (restart) A1out[m] = dec * A1out[m] + (active ? I * Ld * add1[m] : cplx{});
        A2[m] = dec * A2[m] + I * Ld * add2[m];
        phase[m] *= c.full[m];
      }
    }
    // segment boundary: maybe an output time
    while (out_idx < out_times.size() && std::abs(out_times[out_idx] - tb_seg) < 1e-12) {
      for (std::size_t m = 0; m < M; ++m) {
        cs.a0[out_idx * M + m] = a0[m];
        cs.a1[out_idx * M + m] = restart ? A1out[m] : A1[m];
        cs.a2[out_idx * M + m] = A2[m];
      }
      ++out_idx;
      break;
    }
  }
  if (out_idx != out_times.size()) throw std::logic_error("simulate: output alignment failure");
  return cs;
}

IncrementSample increments_delta(const ChaosSample& s, double tau_ref, const ModeSet& ms,
                                 const Profiles& prof) {
  auto it = std::find_if(s.times.begin(), s.times.end(),
                         [&](double t) { return std::abs(t - tau_ref) < 1e-12; });
  if (it == s.times.end())
    throw std::invalid_argument("increments_delta: tau_ref must be an output time");
  std::size_t ref = (std::size_t)(it - s.times.begin());
  IncrementSample inc;
  inc.n_modes = s.n_modes;
  for (std::size_t k = ref; k < s.times.size(); ++k) {
    double tau = s.times[k];
    if (tau < tau_ref) throw std::invalid_argument("increments_delta: tau < tau_ref");
    inc.times.push_back(tau);
    for (std::size_t m = 0; m < s.n_modes; ++m) {
      double dec = std::exp(-prof.gamma(ms[m].s) * (tau - tau_ref));
      inc.d0.push_back(s.at(0, k, m) - dec * s.at(0, ref, m));
      inc.d1.push_back(s.at(1, k, m) - dec * s.at(1, ref, m));
      inc.d2.push_back(s.at(2, k, m) - dec * s.at(2, ref, m));
    }
  }
  return inc;
}

McSpectrum mc_spectrum(const ChaosSimulator& sim, std::uint64_t master_seed,
                       std::uint32_t n_samples, double tau) {
  if (n_samples < 2) throw std::invalid_argument("mc_spectrum: need >= 2 samples");
  const std::size_t M = sim.modes().size();
  const double rho = sim.params().rho();
  const std::vector<double> out{tau};

  constexpr std::uint32_t kChunk = 16;
  const std::uint32_t n_chunks = (n_samples + kChunk - 1) / kChunk;
  // per chunk: 6 stats x (sum, sumsq)
  std::vector<std::vector<double>> partial(n_chunks);

  parallel_for(n_chunks, [&](std::size_t ci, int) {
    std::vector<double> acc(M * 12, 0.0);
    std::uint32_t lo = (std::uint32_t)ci * kChunk;
    std::uint32_t hi = std::min(n_samples, lo + kChunk);
    for (std::uint32_t sid = lo; sid < hi; ++sid) {
      ChaosSample cs = sim.simulate(master_seed, sid, out);
      for (std::size_t m = 0; m < M; ++m) {
        cplx a0 = cs.at(0, 0, m), a1 = cs.at(1, 0, m), a2 = cs.at(2, 0, m);
        cplx A = a0 + rho * a1 + rho * rho * a2;
        double st[6];
        st[0] = std::norm(A);
        st[1] = std::norm(a0);
        st[2] = 2.0 * std::real(a1 * std::conj(a0));
        st[3] = std::norm(a1) + 2.0 * std::real(a2 * std::conj(a0));
        st[4] = 2.0 * std::real(a2 * std::conj(a1));
        st[5] = std::norm(a2);
        for (int q = 0; q < 6; ++q) {
          acc[m * 12 + 2 * q] += st[q];
          acc[m * 12 + 2 * q + 1] += st[q] * st[q];
        }
      }
    }
    partial[ci] = std::move(acc);
  });

  std::vector<double> total(M * 12, 0.0);
  for (std::uint32_t ci = 0; ci < n_chunks; ++ci)
    for (std::size_t k = 0; k < M * 12; ++k) total[k] += partial[ci][k];

  McSpectrum out_spec;
  out_spec.n_samples = n_samples;
  out_spec.mean.resize(M);
  out_spec.stderr_.resize(M);
  out_spec.order.resize(M);
  out_spec.order_se.resize(M);
  const double n = (double)n_samples;
  auto finish = [&](double sum, double sumsq, double& mean, double& se) {
    mean = sum / n;
    double var = std::max(0.0, sumsq / n - mean * mean);
    se = std::sqrt(var / (n - 1.0));  // jackknife SE of the mean
  };
  for (std::size_t m = 0; m < M; ++m) {
    finish(total[m * 12 + 0], total[m * 12 + 1], out_spec.mean[m], out_spec.stderr_[m]);
    for (int q = 0; q < 5; ++q)
      finish(total[m * 12 + 2 * (q + 1)], total[m * 12 + 2 * (q + 1) + 1], out_spec.order[m][q],
             out_spec.order_se[m][q]);
  }
  return out_spec;
}

Delta1Moment mc_delta1_second_moment(const ModeSet& ms, const Profiles& prof,
                                     const PhysicalParams& par, std::uint64_t master_seed,
                                     std::uint32_t n_samples, double tau, double span, double h) {
  if (par.finite_T()) throw std::invalid_argument("mc_delta1_second_moment: stationary (T = infinity) only");
  const std::size_t M = ms.size();
  const double Ld = std::pow(ms.spec().L, -(double)ms.spec().d);
  std::vector<double> gam(M), B(M);
  for (std::size_t m = 0; m < M; ++m) {
    gam[m] = prof.gamma(ms[m].s);
    B[m] = prof.B(ms[m].s);
  }
  int steps = (int)std::ceil(span / h);

  constexpr std::uint32_t kChunk = 16;
  const std::uint32_t n_chunks = (n_samples + kChunk - 1) / kChunk;
  std::vector<std::vector<double>> partial(n_chunks);
  parallel_for(n_chunks, [&](std::size_t ci, int) {
    std::vector<double> acc(M * 2, 0.0);
    std::uint32_t lo = (std::uint32_t)ci * kChunk;
    std::uint32_t hi = std::min(n_samples, lo + kChunk);
    for (std::uint32_t sid = lo; sid < hi; ++sid) {
      for (std::size_t m = 0; m < M; ++m) {
        NoiseStream nsm(master_seed, (std::uint32_t)m, sid, 1);
        std::uint64_t draw = 0;
        auto [z1, z2] = nsm.gauss_pair(draw++);
        cplx a = std::sqrt(0.5 * B[m]) * cplx(z1, z2);
        cplx R{};  // int e^{-gamma (t-l)} |a|^2 a dl, midpoint envelope
        double dec_h = std::exp(-gam[m] * h), dec_half = std::exp(-gam[m] * 0.5 * h);
        double sd = std::sqrt(0.5 * B[m] * (1.0 - dec_half * dec_half));
        for (int k = 0; k < steps; ++k) {
          auto [g1, g2] = nsm.gauss_pair(draw++);
          cplx amid = dec_half * a + sd * cplx(g1, g2);
          auto [g3, g4] = nsm.gauss_pair(draw++);
          a = dec_half * amid + sd * cplx(g3, g4);
          R = dec_h * R + h * dec_half * (std::norm(amid) * amid);
        }
        double d1sq = std::norm(Ld * R);  // |Delta^1|^2 = |(-i) L^{-d} R|^2
        acc[m * 2] += d1sq;
        acc[m * 2 + 1] += d1sq * d1sq;
      }
    }
    partial[ci] = std::move(acc);
  });
  std::vector<double> total(M * 2, 0.0);
  for (std::uint32_t ci = 0; ci < n_chunks; ++ci)
    for (std::size_t k = 0; k < M * 2; ++k) total[k] += partial[ci][k];
  Delta1Moment out;
  out.second_moment.resize(M);
  out.stderr_.resize(M);
  double n = (double)n_samples;
  for (std::size_t m = 0; m < M; ++m) {
    double mean = total[m * 2] / n;
    double var = std::max(0.0, total[m * 2 + 1] / n - mean * mean);
    out.second_moment[m] = mean;
    out.stderr_[m] = std::sqrt(var / (n - 1.0));
  }
  (void)tau;  // stationary: the moment does not depend on tau
  return out;
}

double delta1_second_moment_exact(const Vec& s, const Profiles& prof, const LatticeSpec& lat) {
  double B = prof.B(s), g = prof.gamma(s);
  return std::pow(lat.L, -2.0 * lat.d) * B * B * B * 2.5 / (g * g);
}

}  // namespace wavekin
