#include "wavekin/numerics.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace wavekin {

static QuadRule make_gl(int n) {
  QuadRule q;
  q.x.resize(n);
  q.w.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton from Chebyshev initial guess
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.x[i] = x;
    q.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return q;
}

const QuadRule& gauss_legendre(int n) {
  static std::map<int, QuadRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gl(n)).first;
  return it->second;
}

QuadRule gl_on(int n, double a, double b) {
  const QuadRule& g = gauss_legendre(n);
  QuadRule q;
  q.x.resize(n);
  q.w.resize(n);
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    q.x[i] = c + h * g.x[i];
    q.w[i] = h * g.w[i];
  }
  return q;
}

QuadRule oscillatory_panels(double a, double b, double rate, int nodes_per_panel,
                            double max_phase_per_panel) {
  QuadRule out;
  double span = b - a;
  if (span <= 0.0) return out;
  double width = std::abs(rate) > 1e-12 ? max_phase_per_panel / std::abs(rate) : span;
  int panels = std::max(1, (int)std::ceil(span / width));
  for (int p = 0; p < panels; ++p) {
    double pa = a + span * p / panels, pb = a + span * (p + 1) / panels;
    QuadRule q = gl_on(nodes_per_panel, pa, pb);
    out.x.insert(out.x.end(), q.x.begin(), q.x.end());
    out.w.insert(out.w.end(), q.w.begin(), q.w.end());
  }
  return out;
}

namespace {
double gl_pair(const std::function<double(double)>& f, double a, double b, double& coarse) {
  const QuadRule& g7 = gauss_legendre(7);
  const QuadRule& g15 = gauss_legendre(15);
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s7 = 0.0, s15 = 0.0;
  for (int i = 0; i < 7; ++i) s7 += g7.w[i] * f(c + h * g7.x[i]);
  for (int i = 0; i < 15; ++i) s15 += g15.w[i] * f(c + h * g15.x[i]);
  coarse = h * s7;
  return h * s15;
}

double adapt_rec(const std::function<double(double)>& f, double a, double b, double tol,
                 double rel_tol, int depth, int max_depth) {
  double coarse;
  double fine = gl_pair(f, a, b, coarse);
  double err = std::abs(fine - coarse);
  if (depth >= max_depth || err <= std::max(tol, rel_tol * std::abs(fine))) return fine;
  double m = 0.5 * (a + b);
  return adapt_rec(f, a, m, 0.5 * tol, rel_tol, depth + 1, max_depth) +
         adapt_rec(f, m, b, 0.5 * tol, rel_tol, depth + 1, max_depth);
}
}  // namespace

double adaptive_1d(const std::function<double(double)>& f, double a, double b, double abs_tol,
                   double rel_tol, int max_depth) {
  if (!(b > a)) return 0.0;
  return adapt_rec(f, a, b, abs_tol, rel_tol, 0, max_depth);
}

static cplx sinhc(cplx z) {
  if (std::abs(z) < 1e-4) {
    cplx z2 = z * z;
    return 1.0 + z2 / 6.0 * (1.0 + z2 / 20.0);
  }
  return std::sinh(z) / z;
}

cplx exp_integral(cplx x, double a, double b) {
  double h = b - a;
  cplx z = 0.5 * x * h;
  return h * std::exp(x * 0.5 * (a + b)) * sinhc(z);
}

namespace {
// I_m = integral_0^h e^{p t} t^m dt, m = 0..mmax (small mmax)
void exp_moments(cplx p, double h, int mmax, cplx* out) {
  if (std::abs(p) * h < 0.5) {
    // series: I_m = sum_j p^j h^{m+j+1} / (j! (m+j+1))
    for (int m = 0; m <= mmax; ++m) {
      cplx term = std::pow(h, m + 1) / (double)(m + 1);
      cplx sum = term;
      cplx pj = 1.0;
      double fact = 1.0;
      for (int j = 1; j < 30; ++j) {
        pj *= p;
        fact *= j;
        cplx t = pj / fact * std::pow(h, m + j + 1) / (double)(m + j + 1);
        sum += t;
        if (std::abs(t) < 1e-18 * (1.0 + std::abs(sum))) break;
      }
      out[m] = sum;
    }
    return;
  }
  out[0] = exp_integral(p, 0.0, h);
  cplx eph = std::exp(p * h);
  for (int m = 1; m <= mmax; ++m) out[m] = (eph * std::pow(h, m) - (double)m * out[m - 1]) / p;
}
}  // namespace

cplx nested_exp_integral(cplx p, cplx r, double a, double b) {
  double h = b - a;
  if (h <= 0.0) return 0.0;
  if (std::abs(r) * h > 0.1) {
    return (exp_integral(p + r, a, b) - std::exp(r * a) * exp_integral(p, a, b)) / r;
  }
  // inner integral E(r; a, l) = e^{ra} sum_{m>=1} r^{m-1} (l-a)^m / m!
  cplx mom[12];
  exp_moments(p, h, 10, mom);
  cplx sum = 0.0, rm = 1.0;
  double fact = 1.0;
  for (int m = 1; m <= 10; ++m) {
    fact *= m;
    cplx t = rm / fact * mom[m];
    sum += t;
    rm *= r;
    if (std::abs(t) < 1e-18 * (1.0 + std::abs(sum))) break;
  }
  return std::exp(r * a) * std::exp(p * a) * sum;
}

cplx filon_exp_panel(const std::function<double(double)>& g, double a, double b, double kappa,
                     int n_pts) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double sigma = kappa * h;
  const QuadRule& q = gauss_legendre(n_pts);
  // sampled g on [-1,1] and Legendre values
  std::vector<double> gv(n_pts);
  for (int i = 0; i < n_pts; ++i) gv[i] = g(c + h * q.x[i]);
  cplx total{};
  const int deg = n_pts - 2;
  for (int n = 0; n <= deg; ++n) {
    double an = 0.0;
    for (int i = 0; i < n_pts; ++i) {
      // P_n(x_i) by recurrence
      double p0 = 1.0, p1 = q.x[i];
      double pn = n == 0 ? 1.0 : q.x[i];
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2 * k - 1) * q.x[i] * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
        pn = p2;
      }
      an += q.w[i] * gv[i] * pn;
    }
    an *= (2.0 * n + 1.0) / 2.0;
    double jn = std::sph_bessel((unsigned)n, std::abs(sigma));
    if (sigma < 0.0 && (n % 2)) jn = -jn;
    cplx in = std::pow(cplx(0.0, 1.0), n);
    total += an * 2.0 * in * jn;
  }
  return h * std::exp(cplx(0.0, kappa * c)) * total;
}

LogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_loglog: need >= 2 points");
  std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw std::invalid_argument("fit_loglog: positive data required");
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  double denom = n * sxx - sx * sx;
  LogFit f;
  f.slope = (n * sxy - sx * sy) / denom;
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double res = std::log(y[i]) - (f.intercept + f.slope * std::log(x[i]));
    ss += res * res;
  }
  f.rel_residual = std::sqrt(ss / n) / std::max(1e-30, std::abs(f.slope));
  return f;
}

}  // namespace wavekin
