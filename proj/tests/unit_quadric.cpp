#include <doctest.h>

#include <cmath>

#include "wavekin/numerics.hpp"
#include "wavekin/quadric.hpp"

using namespace wavekin;

TEST_CASE("ball volumes under the singular measure: pi^2 R^{2d-2}") {
  for (int d : {2, 3}) {
    for (double R : {0.5, 1.0, 2.0}) {
      QuadricMeasure qm(d, R);
      qm.radial_nodes = 96;
      auto ind = [R](const Vec& x, const Vec& y) {
        return norm2(x) + norm2(y) <= R * R ? 1.0 : 0.0;
      };
      double got = quadric_integrate(ind, qm, 8.0);
      double want = M_PI * M_PI * std::pow(R, 2.0 * d - 2.0);
      CAPTURE(d);
      CAPTURE(R);
      CHECK(std::abs(got - want) / want < 1e-3);
    }
  }
}

TEST_CASE("ball-volume law: mu(B_R)/R^{2d-2} constant in R") {
  double prev = 0.0;
  for (double R : {0.7, 1.3, 2.9}) {
    QuadricMeasure qm(2, R);
    qm.radial_nodes = 96;
    auto ind = [R](const Vec& x, const Vec& y) {
      return norm2(x) + norm2(y) <= R * R ? 1.0 : 0.0;
    };
    double v = quadric_integrate(ind, qm, 8.0) / (R * R);
    if (prev != 0.0) CHECK(v == doctest::Approx(prev).epsilon(5e-3));
    prev = v;
  }
}

TEST_CASE("Gaussian integrand: closed form pi^2 in d = 2") {
  QuadricMeasure qm(2, 14.0);
  auto g = [](const Vec& x, const Vec& y) { return std::exp(-norm2(x) - norm2(y)); };
  double got = quadric_integrate(g, qm, 10.0);
  // disintegration closed form: (int |x|^{-1} e^{-|x|^2} dx) (int e^{-|y|^2} dy)
  //                           = pi^{3/2} * pi^{1/2} = pi^2
  CHECK(got == doctest::Approx(M_PI * M_PI).epsilon(1e-4));
}

TEST_CASE("x- and y-disintegrations agree; symmetry zeros") {
  QuadricMeasure qm(2, 12.0);
  qm.radial_nodes = 160;
  qm.angular_nodes = 96;
  qm.fiber_tol = 1e-11;
  auto f = [](const Vec& x, const Vec& y) {
    return std::exp(-norm2(x) - 0.5 * norm2(y)) * (1.0 + 0.3 * x[0] * y[1]);
  };
  double a = quadric_integrate(f, qm, 10.0);
  double b = quadric_integrate_y_disintegration(f, qm, 10.0);
  CHECK(a == doctest::Approx(b).epsilon(1e-6));

  // odd under z -> -z integrates to zero
  auto odd = [](const Vec& x, const Vec& y) { return x[0] * std::exp(-norm2(x) - norm2(y)); };
  CHECK(std::abs(quadric_integrate(odd, qm, 10.0)) < 1e-10);

  // swap symmetry of the measure
  auto asym = [](const Vec& x, const Vec& y) { return std::exp(-2.0 * norm2(x) - norm2(y)); };
  auto swapped = [&](const Vec& x, const Vec& y) { return asym(y, x); };
  CHECK(quadric_integrate(asym, qm, 10.0) ==
        doctest::Approx(quadric_integrate(swapped, qm, 10.0)).epsilon(1e-6));
}

TEST_CASE("linearity, positivity, and the continuity bound") {
  QuadricMeasure qm(2, 12.0);
  auto f = [](const Vec& x, const Vec& y) { return std::exp(-norm2(x) - norm2(y)); };
  double v1 = quadric_integrate(f, qm, 10.0);
  auto f2 = [&](const Vec& x, const Vec& y) { return 3.0 * f(x, y); };
  CHECK(quadric_integrate(f2, qm, 10.0) == doctest::Approx(3.0 * v1).epsilon(1e-12));
  CHECK(v1 > 0.0);

  // |int f dmu| <= C_r |f|_r for r > 2d-2, stable empirical constant over a
  // scaled family f_c(z) = <c z>^{-r}
  double r = 3.0;
  double cprev = 0.0;
  for (double c : {1.0, 1.5, 2.0}) {
    auto fam = [c, r](const Vec& x, const Vec& y) {
      double z2 = c * c * (norm2(x) + norm2(y));
      return std::pow(1.0 + z2, -r / 2);
    };
    double I = quadric_integrate(fam, qm, r);
    // |f|_r = sup <z>^r <cz>^{-r} = 1 at z = 0 for c >= 1
    double Cr = I / 1.0;
    if (cprev > 0.0) CHECK(Cr < cprev * 1.05);
    cprev = Cr;
  }
  CHECK_THROWS(quadric_integrate(f, qm, 1.5));  // decay too weak declared
}

TEST_CASE("theoremA integral: rotation invariance and a direct surface-parametrization oracle") {
  Profiles prof{DampingProfile(1.0), ForcingProfile(1.0, 2.0)};
  QuadricMeasure qm(2, 12.0);

  // rotation invariance for radial profiles
  Vec s1{1.2, 0, 0};
  double th = 0.53;
  Vec s2{1.2 * std::cos(th), 1.2 * std::sin(th), 0};
  double v1 = theoremA_integral(s1, prof, qm);
  double v2 = theoremA_integral(s2, prof, qm);
  CHECK(v1 == doctest::Approx(v2).epsilon(1e-6));

  // independent oracle at s = 0, d = 2: parametrize the quadric by
  // x = r(cos t, sin t), y = u(-sin t, cos t); the surface element
  // sqrt(r^2+u^2) dr dt du cancels the 1/|z| weight exactly, so
  //   integral = int_0^inf dr int_0^{2pi} dt int_R du B(x)B(y)B(x+y).
  auto B = [&prof](const Vec& v) { return prof.B(v); };
  QuadRule qr = gl_on(160, 0.0, 6.0);
  QuadRule qu = gl_on(320, -6.0, 6.0);
  int nt = 96;
  Kahan acc;
  for (int it = 0; it < nt; ++it) {
    double t = 2.0 * M_PI * it / nt;
    Vec e1{std::cos(t), std::sin(t), 0}, e2{-std::sin(t), std::cos(t), 0};
    for (int ir = 0; ir < 160; ++ir)
      for (int iu = 0; iu < 320; ++iu) {
        Vec x = qr.x[ir] * e1, y = qu.x[iu] * e2;
        acc.add(qr.w[ir] * qu.w[iu] * B(x) * B(y) * B(x + y));
      }
  }
  double oracle = 2.0 * M_PI / nt * acc.value();
  double want = M_PI / prof.gamma(Vec{0, 0, 0}) * oracle;
  double got = theoremA_integral(Vec{0, 0, 0}, prof, qm);
  CHECK(got == doctest::Approx(want).epsilon(1e-4));
}

TEST_CASE("Gaussian-phase integral obeys the stationary-phase bound") {
  // phi = 0 -> I = 0 <= 0
  GaussianEnvelope none{0.0, 1.0};
  std::vector<double> Q{0.0, 1.0, 1.0, 0.0};
  CHECK(std::abs(gaussian_phase_integral(Q, 2, none, 0.1)) == 0.0);

  GaussianEnvelope phi{1.0, 1.0};  // e^{-|x|^2}
  double l1 = gaussian_envelope_fourier_l1(2, phi);
  // oracle for the closed form at moderate nu: dense 2-D quadrature
  double nu0 = 0.5;
  {
    cplx acc{};
    int n = 1200;
    double Rm = 6.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double x = -Rm + 2 * Rm * (i + 0.5) / n;
        double y = -Rm + 2 * Rm * (j + 0.5) / n;
        double w = (2 * Rm / n) * (2 * Rm / n);
        acc += w * std::exp(cplx(0.0, x * y / nu0)) * std::exp(-x * x - y * y);
      }
    cplx closed = gaussian_phase_integral(Q, 2, phi, nu0);
    CHECK(std::abs(closed - acc) < 1e-6 * std::abs(closed) + 1e-9);
  }
  double prev_ratio = 0.0;
  for (double nu : {0.1, 0.05, 0.025}) {
    double bound = fresnel_bound(Q, 2, l1, nu);
    double I = std::abs(gaussian_phase_integral(Q, 2, phi, nu));
    CHECK(I <= bound);
    CHECK(I / nu < 2.0 * M_PI + 1.0);  // |I|/nu bounded (n = 2: rate nu^{n/2} = nu)
    double ratio = I / nu;
    if (prev_ratio > 0.0) CHECK(ratio == doctest::Approx(prev_ratio).epsilon(1.0));
    prev_ratio = ratio;
  }
  // singular Q rejected
  std::vector<double> Qs{1.0, 0.0, 0.0, 0.0};
  CHECK_THROWS(fresnel_bound(Qs, 2, l1, 0.1));
}
