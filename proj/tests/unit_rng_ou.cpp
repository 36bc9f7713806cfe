#include <doctest.h>

#include <cmath>
#include <complex>
#include <memory>

#include "wavekin/numerics.hpp"
#include "wavekin/ou.hpp"
#include "wavekin/rng.hpp"

using namespace wavekin;

namespace {
Profiles default_profiles() { return Profiles{DampingProfile(1.0), ForcingProfile(1.0, 2.0)}; }
}  // namespace

TEST_CASE("counter-based streams are reproducible and key-separated") {
  NoiseStream a(42, 3, 7, 0), b(42, 3, 7, 0), c(42, 3, 8, 0), d(43, 3, 7, 0);
  auto [x1, y1] = a.gauss_pair(11);
  auto [x2, y2] = b.gauss_pair(11);
  CHECK(x1 == x2);
  CHECK(y1 == y2);
  auto [x3, _y3] = c.gauss_pair(11);
  auto [x4, _y4] = d.gauss_pair(11);
  CHECK(x1 != x3);
  CHECK(x1 != x4);
  // moments of a decent batch of draws
  double s = 0.0, s2 = 0.0;
  int n = 200000;
  for (int i = 0; i < n; ++i) {
    auto [g1, g2] = a.gauss_pair((std::uint64_t)i + 100);
    s += g1 + g2;
    s2 += g1 * g1 + g2 * g2;
  }
  CHECK(std::abs(s / (2 * n)) < 4.0 / std::sqrt(2.0 * n));
  CHECK(s2 / (2 * n) == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("order-zero process: initial condition and closed-form correlations") {
  LatticeSpec lat(2, 2.0, 1.0);
  auto ms = std::make_shared<ModeSet>(lat);
  Profiles prof = default_profiles();

  SUBCASE("finite T starts at zero exactly") {
    PhysicalParams par(0.1, 0.0, 1.5);
    auto cs = sample_a0(*ms, prof, par, 7, 0, {-1.5, 0.0});
    for (std::size_t m = 0; m < ms->size(); ++m) CHECK(cs.at(0, 0, m) == cplx{});
    CHECK(corr_a0((*ms)[0].s, (*ms)[0].s, -1.5, 0.3, prof, par) == doctest::Approx(0.0));
  }

  SUBCASE("corr examples") {
    PhysicalParams par(0.1, 0.0);
    Vec s{0.5, 0, 0}, sp{0.0, 0.5, 0};
    CHECK(corr_a0(s, sp, 0.0, 0.0, prof, par) == 0.0);
    CHECK(corr_a0(s, s, 0.2, 0.2, prof, par) == doctest::Approx(prof.B(s)));
    CHECK(n0_spectrum(s, 0.0, prof, par) == doctest::Approx(prof.B(s)));
    PhysicalParams parT(0.1, 0.0, 2.0);
    CHECK(n0_spectrum(s, -2.0, prof, parT) == doctest::Approx(0.0));
    CHECK(n0_spectrum(s, 0.7, prof, parT) ==
          doctest::Approx(corr_a0(s, s, 0.7, 0.7, prof, parT)));
    // nondecreasing in tau with limit B(s)
    double prev = -1.0;
    for (double tau = -2.0; tau < 6.0; tau += 0.25) {
      double v = n0_spectrum(s, tau, prof, parT);
      CHECK(v >= prev - 1e-15);
      prev = v;
    }
    CHECK(prev == doctest::Approx(prof.B(s)).epsilon(1e-6));
  }
}

TEST_CASE("Monte Carlo second moments match corr_a0 within 3 SE") {
  LatticeSpec lat(2, 2.0, 1.0);
  auto ms = std::make_shared<ModeSet>(lat);
  Profiles prof = default_profiles();
  PhysicalParams par(0.1, 0.0);  // T = infinity
  std::vector<double> times{0.0, 0.35, 1.0};
  const int N = 4000;

  std::size_t M = ms->size();
  std::vector<cplx> mean(M, cplx{});
  std::vector<double> var_acc(M, 0.0);
  // covariance probes
  std::vector<cplx> cov01(M, cplx{}), nonconj(M, cplx{});
  for (int sid = 0; sid < N; ++sid) {
    auto cs = sample_a0(*ms, prof, par, 99, (std::uint32_t)sid, times);
    for (std::size_t m = 0; m < M; ++m) {
      mean[m] += cs.at(0, 1, m);
      var_acc[m] += std::norm(cs.at(0, 1, m));
      cov01[m] += cs.at(0, 0, m) * std::conj(cs.at(0, 2, m));
      nonconj[m] += cs.at(0, 0, m) * cs.at(0, 2, m);
    }
  }
  int fails_mean = 0, fails_var = 0, fails_cov = 0, fails_nc = 0;
  for (std::size_t m = 0; m < M; ++m) {
    double B = prof.B((*ms)[m].s);
    double se_mean = std::sqrt(B / 2.0 / N);  // per real part
    if (std::abs(mean[m].real() / N) > 3 * se_mean) ++fails_mean;
    if (std::abs(mean[m].imag() / N) > 3 * se_mean) ++fails_mean;
    // |a|^2 has variance B^2 (complex Gaussian: E|a|^4 = 2 B^2)
    double se_var = B / std::sqrt((double)N);
    if (std::abs(var_acc[m] / N - B) > 3 * se_var) ++fails_var;
    double want = corr_a0((*ms)[m].s, (*ms)[m].s, times[0], times[2], prof, par);
    if (std::abs(cov01[m].real() / N - want) > 3 * se_var) ++fails_cov;
    if (std::abs(nonconj[m].real() / N) > 3 * se_var) ++fails_nc;
    if (std::abs(cov01[m].imag() / N) > 3 * se_var) ++fails_cov;
  }
  // CLT allowance: >= 99% of probes inside 3 SE
  std::size_t probes = 2 * M;
  CHECK(fails_mean <= (int)(0.01 * probes) + 1);
  CHECK(fails_var <= (int)(0.01 * M) + 1);
  CHECK(fails_cov <= (int)(0.02 * M) + 1);
  CHECK(fails_nc <= (int)(0.01 * M) + 1);
}

TEST_CASE("sample_a0 input validation") {
  LatticeSpec lat(2, 2.0, 1.0);
  auto ms = std::make_shared<ModeSet>(lat);
  Profiles prof = default_profiles();
  PhysicalParams par(0.1, 0.0, 1.0);
  CHECK_THROWS(sample_a0(*ms, prof, par, 1, 0, {0.5, 0.2}));
  CHECK_THROWS(sample_a0(*ms, prof, par, 1, 0, {-2.0, 0.0}));
  CHECK_THROWS(sample_a0(*ms, prof, par, 1, 0, {}));
}
