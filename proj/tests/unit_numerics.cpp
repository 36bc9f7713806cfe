#include <doctest.h>

#include <cmath>
#include <complex>

#include "wavekin/numerics.hpp"

using namespace wavekin;

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  QuadRule q = gl_on(6, 0.0, 1.0);
  double s = 0.0;
  for (int i = 0; i < 6; ++i) s += q.w[i] * std::pow(q.x[i], 5);
  CHECK(s == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("oscillatory panels resolve a fast cosine") {
  QuadRule q = oscillatory_panels(0.0, 10.0, 50.0);
  double s = 0.0;
  for (std::size_t i = 0; i < q.x.size(); ++i) s += q.w[i] * std::cos(50.0 * q.x[i]);
  CHECK(s == doctest::Approx(std::sin(500.0) / 50.0).epsilon(1e-10));
}

TEST_CASE("adaptive quadrature localizes indicator edges and kinks") {
  double edge = adaptive_1d([](double x) { return x < 0.337 ? 1.0 : 0.0; }, 0.0, 1.0, 1e-9);
  CHECK(edge == doctest::Approx(0.337).epsilon(1e-7));
  double kink = adaptive_1d([](double x) { return std::exp(-std::abs(x - 0.3)); }, -1.0, 1.0, 1e-11);
  double exact = 2.0 - std::exp(-1.3) - std::exp(-0.7);
  CHECK(kink == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("exp_integral stable across magnitudes") {
  CHECK(exp_integral(cplx(0.0, 0.0), -1.0, 2.0).real() == doctest::Approx(3.0));
  cplx v = exp_integral(cplx(1e-12, 0.0), 0.0, 1.0);
  CHECK(v.real() == doctest::Approx(1.0).epsilon(1e-12));
  cplx w = exp_integral(cplx(-3.0, 5.0), -0.5, 1.5);
  // oracle: dense midpoint quadrature
  cplx acc{};
  int n = 200000;
  for (int i = 0; i < n; ++i) {
    double t = -0.5 + 2.0 * (i + 0.5) / n;
    acc += 2.0 / n * std::exp(cplx(-3.0, 5.0) * t);
  }
  CHECK(std::abs(w - acc) < 1e-8);
}

TEST_CASE("nested exponential integral matches 2-D quadrature oracle") {
  auto oracle = [](cplx p, cplx r, double a, double b) {
    // int_a^b e^{p l} int_a^l e^{r l'} dl' dl by tensor Gauss
    QuadRule ql = gl_on(48, a, b);
    cplx acc{};
    for (int i = 0; i < 48; ++i) {
      QuadRule qi = gl_on(48, a, ql.x[i]);
      cplx inner{};
      for (int j = 0; j < 48; ++j) inner += qi.w[j] * std::exp(r * qi.x[j]);
      acc += ql.w[i] * std::exp(p * ql.x[i]) * inner;
    }
    return acc;
  };
  struct Case {
    cplx p, r;
  } cases[] = {
      {{1.0, 2.0}, {0.5, -2.0}},   {{-2.0, 30.0}, {3.0, -30.0}}, {{0.0, 0.0}, {0.0, 0.0}},
      {{1.0, 0.0}, {1e-9, 0.0}},   {{-1.0, 4.0}, {1.0, -4.0}},   {{2.0, -7.0}, {-2.0, 7.0}},
      {{-3.0, 0.0}, {3.0, 0.0}},  // p + r = 0
  };
  for (const auto& c : cases) {
    cplx got = nested_exp_integral(c.p, c.r, -0.7, 1.3);
    cplx want = oracle(c.p, c.r, -0.7, 1.3);
    CAPTURE(c.p.real());
    CAPTURE(c.r.real());
    CHECK(std::abs(got - want) <= 1e-10 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("filon panel handles fast oscillation under a smooth envelope") {
  auto g = [](double x) { return 1.0 / (1.0 + x * x); };
  double kappa = 157.0;
  cplx got = filon_exp_panel(g, 0.5, 1.5, kappa);
  // oracle: heavily resolved panel quadrature
  QuadRule q = oscillatory_panels(0.5, 1.5, kappa, 24, 12.0);
  cplx want{};
  for (std::size_t i = 0; i < q.x.size(); ++i)
    want += q.w[i] * g(q.x[i]) * std::exp(cplx(0.0, kappa * q.x[i]));
  CHECK(std::abs(got - want) < 1e-9);
}

TEST_CASE("loglog fit recovers a power law") {
  std::vector<double> x{0.2, 0.1, 0.05, 0.025};
  std::vector<double> y;
  for (double v : x) y.push_back(3.7 * std::pow(v, 1.9));
  LogFit f = fit_loglog(x, y);
  CHECK(f.slope == doctest::Approx(1.9).epsilon(1e-10));
  CHECK(f.rel_residual < 1e-10);
}
