#include <doctest.h>

#include <cmath>
#include <memory>

#include "wavekin/chaos.hpp"
#include "wavekin/numerics.hpp"
#include "wavekin/wick.hpp"

using namespace wavekin;

namespace {
Profiles default_profiles() { return Profiles{DampingProfile(1.0), ForcingProfile(1.0, 2.0)}; }
std::shared_ptr<ModeSet> tiny_lattice() {
  return std::make_shared<ModeSet>(LatticeSpec(2, 3.0, 1.2));
}
DuhamelConfig fft_cfg() {
  DuhamelConfig c;
  c.conv_path = DuhamelConfig::Path::fft;
  return c;
}
}  // namespace

TEST_CASE("config validation") {
  DuhamelConfig c;
  c.h_osc = 0.1;
  CHECK_THROWS(c.check(0.2));  // h_osc > nu/4
  c.h_osc = 0.05;
  CHECK_NOTHROW(c.check(0.2));
}

TEST_CASE("direct and FFT convolution paths agree on one sample") {
  auto ms = tiny_lattice();
  Profiles prof = default_profiles();
  PhysicalParams par(0.2, 0.1, 0.4);
  DuhamelConfig cd = fft_cfg();
  cd.conv_path = DuhamelConfig::Path::direct;
  DuhamelConfig cf = fft_cfg();
  ChaosSimulator sim_d(ms, prof, par, cd), sim_f(ms, prof, par, cf);
  auto a = sim_d.simulate(5, 0, {0.0, 0.3});
  auto b = sim_f.simulate(5, 0, {0.0, 0.3});
  for (std::size_t k = 0; k < a.a1.size(); ++k) {
    CHECK(std::abs(a.a0[k] - b.a0[k]) == 0.0);  // same noise stream
    CHECK(std::abs(a.a1[k] - b.a1[k]) < 1e-10 * (1.0 + std::abs(a.a1[k])));
    CHECK(std::abs(a.a2[k] - b.a2[k]) < 1e-10 * (1.0 + std::abs(a.a2[k])));
  }
}

TEST_CASE("determinism: identical seed and config give identical paths") {
  auto ms = tiny_lattice();
  Profiles prof = default_profiles();
  PhysicalParams par(0.2, 0.1);
  ChaosSimulator sim(ms, prof, par, fft_cfg());
  auto a = sim.simulate(17, 3, {0.0});
  auto b = sim.simulate(17, 3, {0.0});
  for (std::size_t k = 0; k < a.a2.size(); ++k) {
    CHECK(a.a1[k] == b.a1[k]);
    CHECK(a.a2[k] == b.a2[k]);
  }
}

TEST_CASE("Duhamel homogeneity: scaling the noise scales the orders as c^1, c^3, c^5") {
  // scaling b (the forcing amplitude) by c scales a0 by c pathwise, hence
  // a1 by c^3 and a2 by c^5 exactly
  auto ms = tiny_lattice();
  double c = 1.7;
  PhysicalParams par(0.2, 0.1, 0.5);
  ChaosSimulator s1(ms, Profiles{DampingProfile(1.0), ForcingProfile(1.0, 2.0)}, par, fft_cfg());
  ChaosSimulator s2(ms, Profiles{DampingProfile(1.0), ForcingProfile(c, 2.0)}, par, fft_cfg());
  auto a = s1.simulate(9, 1, {0.2});
  auto b = s2.simulate(9, 1, {0.2});
  for (std::size_t k = 0; k < a.a2.size(); ++k) {
    CHECK(std::abs(b.a0[k] - c * a.a0[k]) < 1e-12 * (1.0 + std::abs(a.a0[k])));
    CHECK(std::abs(b.a1[k] - c * c * c * a.a1[k]) < 1e-11 * (1.0 + std::abs(a.a1[k])));
    CHECK(std::abs(b.a2[k] - std::pow(c, 5) * a.a2[k]) < 1e-10 * (1.0 + std::abs(a.a2[k])));
  }
}

TEST_CASE("zero noise makes every order vanish") {
  auto ms = tiny_lattice();
  Profiles prof{DampingProfile(1.0), ForcingProfile(1e-300, 2.0)};
  PhysicalParams par(0.2, 0.1, 0.4);
  ChaosSimulator sim(ms, prof, par, fft_cfg());
  auto s = sim.simulate(1, 0, {0.1});
  for (std::size_t k = 0; k < s.a1.size(); ++k) {
    CHECK(std::abs(s.a1[k]) < 1e-200);
    CHECK(std::abs(s.a2[k]) < 1e-200);
  }
}

TEST_CASE("increments: definition, OU variance, and restart consistency") {
  auto ms = tiny_lattice();
  Profiles prof = default_profiles();
  PhysicalParams par(0.2, 0.1, 0.6);
  ChaosSimulator sim(ms, prof, par, fft_cfg());
  std::vector<double> times{0.0, 0.25};

  SUBCASE("tau = tau_ref gives zero increments") {
    auto s = sim.simulate(3, 0, times);
    auto inc = increments_delta(s, 0.25, *ms, prof);
    for (std::size_t m = 0; m < ms->size(); ++m) {
      CHECK(std::abs(inc.d0[m]) == 0.0);
      CHECK(std::abs(inc.d1[m]) == 0.0);
    }
  }

  SUBCASE("restarted Duhamel equals the direct increment definition") {
    auto full = sim.simulate(3, 0, times);
    auto inc = increments_delta(full, 0.0, *ms, prof);
    auto restarted = sim.simulate(3, 0, times, 0.0);
    // entry 1 of `times` is tau = 0.25
    for (std::size_t m = 0; m < ms->size(); ++m) {
      CHECK(std::abs(restarted.at(1, 1, m) - inc.d1[ms->size() + m]) < 1e-8);
      CHECK(std::abs(restarted.at(2, 1, m) - inc.d2[ms->size() + m]) < 1e-8);
    }
  }

  SUBCASE("Delta a0 variance matches the OU increment law") {
    const int N = 3000;
    std::size_t M = ms->size();
    std::vector<double> acc(M, 0.0);
    for (int sid = 0; sid < N; ++sid) {
      auto s = sim.simulate(21, (std::uint32_t)sid, times);
      auto inc = increments_delta(s, 0.0, *ms, prof);
      for (std::size_t m = 0; m < M; ++m) acc[m] += std::norm(inc.d0[M + m]);
    }
    int bad = 0;
    for (std::size_t m = 0; m < M; ++m) {
      double g = prof.gamma((*ms)[m].s), B = prof.B((*ms)[m].s);
      double want = B * (1.0 - std::exp(-2.0 * g * 0.25));
      double se = want / std::sqrt((double)N);
      if (std::abs(acc[m] / N - want) > 3.0 * se) ++bad;
    }
    CHECK(bad <= (int)(0.02 * M) + 1);
  }
}

TEST_CASE("Monte Carlo orders against the Wick engine (stationary)") {
  auto ms = tiny_lattice();
  Profiles prof = default_profiles();
  PhysicalParams par(0.2, 0.1);  // T = infinity
  DuhamelConfig cfg = fft_cfg();
  ChaosSimulator sim(ms, prof, par, cfg);
  WickEngine eng(ms, prof, par.nu);
  auto sigma = eng.order1_moment_stationary_all();
  auto n2 = eng.spectrum_order2_stationary_all();

  const std::uint32_t N = 4000;
  McSpectrum mc = mc_spectrum(sim, 2024, N, 0.0);
  std::size_t M = ms->size();

  int bad_mean1 = 0, bad_sigma = 0, bad_n2 = 0, bad_n0 = 0;
  for (std::size_t m = 0; m < M; ++m) {
    // order-1 coefficient estimate: 2 Re E a1 conj(a0) = 0
    if (std::abs(mc.order[m][1]) > 3.0 * mc.order_se[m][1]) ++bad_mean1;
    // n^(0) = B
    double B = prof.B((*ms)[m].s);
    if (std::abs(mc.order[m][0] - B) > 3.0 * mc.order_se[m][0]) ++bad_n0;
    // n^(2) = E|a1|^2 + 2Re E a2 conj(a0): both pieces together
    if (std::abs(mc.order[m][2] - n2[m]) > 3.0 * mc.order_se[m][2] + 2e-3 * std::abs(n2[m]))
      ++bad_n2;
    (void)sigma;
  }
  CHECK(bad_mean1 <= (int)(0.01 * M) + 1);
  CHECK(bad_n0 <= (int)(0.01 * M) + 1);
  CHECK(bad_n2 <= (int)(0.02 * M) + 1);
}

TEST_CASE("Monte Carlo order-1 second moment against sigma (separate ensemble)") {
  auto ms = tiny_lattice();
  Profiles prof = default_profiles();
  PhysicalParams par(0.2, 0.1);
  DuhamelConfig cfg = fft_cfg();
  cfg.with_order2 = false;
  ChaosSimulator sim(ms, prof, par, cfg);
  WickEngine eng(ms, prof, par.nu);
  auto sigma = eng.order1_moment_stationary_all();

  const int N = 4000;
  std::size_t M = ms->size();
  std::vector<double> s1(M, 0.0), s2(M, 0.0);
  std::vector<cplx> m1(M, cplx{}), nc(M, cplx{}), cross01(M, cplx{});
  for (int sid = 0; sid < N; ++sid) {
    auto cs = sim.simulate(77, (std::uint32_t)sid, {0.0});
    for (std::size_t m = 0; m < M; ++m) {
      cplx a1 = cs.at(1, 0, m);
      double v = std::norm(a1);
      s1[m] += v;
      s2[m] += v * v;
      m1[m] += a1;
      nc[m] += a1 * a1;
      cross01[m] += a1 * std::conj(cs.at(0, 0, m));
    }
  }
  int bad = 0, bad_parity = 0, bad_lemma = 0;
  for (std::size_t m = 0; m < M; ++m) {
    double mean = s1[m] / N;
    double se = std::sqrt(std::max(0.0, s2[m] / N - mean * mean) / (N - 1.0));
    if (std::abs(mean - sigma[m]) > 3.0 * se + 2e-3 * sigma[m]) ++bad;
    double se1 = std::sqrt(mean / (2.0 * N));
    if (std::abs(m1[m].real()) / N > 3.0 * se1) ++bad_parity;
    if (std::abs(m1[m].imag()) / N > 3.0 * se1) ++bad_parity;
    double se2 = mean / std::sqrt((double)N);
    if (std::abs(nc[m]) / N > 3.0 * se2 + 1e-12) ++bad_lemma;
    double B = prof.B((*ms)[m].s);
    double seX = std::sqrt(mean * B / N);
    if (std::abs(cross01[m]) / N > 3.0 * seX + 1e-12) ++bad_lemma;
  }
  CHECK(bad <= (int)(0.02 * M) + 1);
  CHECK(bad_parity <= (int)(0.01 * 2 * M) + 1);
  CHECK(bad_lemma <= (int)(0.02 * 2 * M) + 2);
}

TEST_CASE("Monte Carlo order 2 against the finite-horizon Wick engine") {
  auto ms = tiny_lattice();
  Profiles prof = default_profiles();
  PhysicalParams par(0.2, 0.1, 0.8);
  ChaosSimulator sim(ms, prof, par, fft_cfg());
  WickEngine eng(ms, prof, par.nu);
  double tau = 0.4;
  auto n2 = eng.spectrum_order2_all(tau, par.T);

  const std::uint32_t N = 4000;
  McSpectrum mc = mc_spectrum(sim, 555, N, tau);
  std::size_t M = ms->size();
  int bad = 0;
  for (std::size_t m = 0; m < M; ++m)
    if (std::abs(mc.order[m][2] - n2[m]) > 3.0 * mc.order_se[m][2] + 2e-3 * std::abs(n2[m])) ++bad;
  CHECK(bad <= (int)(0.02 * M) + 1);
}

TEST_CASE("diagonal correction: closed form, Monte Carlo, and L-scaling") {
  Profiles prof = default_profiles();
  PhysicalParams par(0.2, 0.1);
  auto msA = std::make_shared<ModeSet>(LatticeSpec(2, 3.0, 1.2));
  auto mom = mc_delta1_second_moment(*msA, prof, par, 31, 2000, 0.0);
  int bad = 0;
  for (std::size_t m = 0; m < msA->size(); ++m) {
    double want = delta1_second_moment_exact((*msA)[m].s, prof, msA->spec());
    if (std::abs(mom.second_moment[m] - want) > 3.0 * mom.stderr_[m] + 5e-3 * want) ++bad;
  }
  CHECK(bad <= (int)(0.02 * msA->size()) + 1);
  // doubling L scales the exact moment by 2^{-2d}
  LatticeSpec lat2(2, 6.0, 1.2);
  double r = delta1_second_moment_exact(Vec{0, 0, 0}, prof, lat2) /
             delta1_second_moment_exact(Vec{0, 0, 0}, prof, msA->spec());
  CHECK(r == doctest::Approx(std::pow(2.0, -4.0)).epsilon(1e-12));
}

TEST_CASE("increment moment sum against Monte Carlo increments") {
  // Q_s(tau) = E|d a1|^2 + 2Re E(d a1 conj(c1)) + 2Re E(d a2 conj(a0))
  // versus the deterministic Z_s built on the order-zero spectrum at 0.
  auto ms = tiny_lattice();
  Profiles prof = default_profiles();
  PhysicalParams par(0.1, 0.05, 0.8);
  ChaosSimulator sim(ms, prof, par, fft_cfg());
  WickEngine eng(ms, prof, par.nu);
  double tau = 0.3;
  std::vector<double> times{0.0, tau};

  const int N = 6000;
  std::size_t M = ms->size();
  std::vector<double> q_acc(M, 0.0), q2_acc(M, 0.0);
  for (int sid = 0; sid < N; ++sid) {
    auto s = sim.simulate(909, (std::uint32_t)sid, times);
    auto inc = increments_delta(s, 0.0, *ms, prof);
    for (std::size_t m = 0; m < M; ++m) {
      double g = prof.gamma((*ms)[m].s);
      cplx c1 = std::exp(-g * tau) * s.at(1, 0, m);
      cplx d1 = inc.d1[M + m], d2 = inc.d2[M + m];
      double q = std::norm(d1) + 2.0 * std::real(d1 * std::conj(c1)) +
                 2.0 * std::real(d2 * std::conj(s.at(0, 1, m)));
      q_acc[m] += q;
      q2_acc[m] += q * q;
    }
  }
  int bad = 0;
  double chi = std::log(1.0 / par.nu);
  double budget = par.nu * par.nu * chi + 1.0 / (par.nu * par.nu * std::pow(3.0, 4.0)) +
                  par.nu * tau * tau;
  for (std::size_t m = 0; m < M; ++m) {
    double mean = q_acc[m] / N;
    double se = std::sqrt(std::max(0.0, q2_acc[m] / N - mean * mean) / (N - 1.0));
    double z = eng.increment_moment_sum((*ms)[m].s, tau, par).value;
    if (std::abs(mean - z) > 3.0 * se + 1.5 * budget) ++bad;
  }
  CHECK(bad <= (int)(0.03 * M) + 1);

  // tau -> 0: the sum vanishes
  CHECK(eng.increment_moment_sum((*ms)[0].s, 1e-12, par).value ==
        doctest::Approx(0.0).epsilon(1e-10));
}
