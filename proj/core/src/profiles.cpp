#include "wavekin/profiles.hpp"

#include <algorithm>
#include <cmath>

namespace wavekin {

DampingProfile DampingProfile::from_table(double r_star, std::vector<double> y,
                                          std::vector<double> g) {
  if (y.size() != g.size() || y.size() < 2)
    throw std::invalid_argument("DampingProfile::from_table: need matching tables, size >= 2");
  if (y.front() != 0.0) throw std::invalid_argument("DampingProfile::from_table: table must start at y=0");
  DampingProfile p(r_star);
  p.tab_y_ = std::move(y);
  p.tab_g_ = std::move(g);
  for (std::size_t i = 0; i < p.tab_g_.size(); ++i) {
    if (p.tab_g_[i] < 1.0) throw std::invalid_argument("DampingProfile: gamma0 >= 1 violated in table");
    if (i && (p.tab_y_[i] <= p.tab_y_[i - 1] || p.tab_g_[i] < p.tab_g_[i - 1]))
      throw std::invalid_argument("DampingProfile: table must be strictly increasing in y, nondecreasing in g");
  }
  return p;
}

double DampingProfile::gamma0(double y) const {
  if (tab_y_.empty()) return std::pow(1.0 + y, r_star_);
  if (y <= tab_y_.front()) return tab_g_.front();
  if (y >= tab_y_.back()) {
    // continue with the power-law envelope beyond the table
    double y0 = tab_y_.back();
    return tab_g_.back() * std::pow((1.0 + y) / (1.0 + y0), r_star_);
  }
  auto it = std::upper_bound(tab_y_.begin(), tab_y_.end(), y);
  std::size_t i = (std::size_t)(it - tab_y_.begin());
  double t = (y - tab_y_[i - 1]) / (tab_y_[i] - tab_y_[i - 1]);
  return tab_g_[i - 1] + t * (tab_g_[i] - tab_g_[i - 1]);
}

double DampingProfile::validate(double y_max, double envelope_constant) const {
  double c_needed = 0.0;
  const int n = 200;
  double prev = gamma0(0.0);
  if (prev < 1.0) throw std::runtime_error("DampingProfile: gamma0(0) < 1");
  for (int i = 0; i <= n; ++i) {
    double y = y_max * i / n;
    double g = gamma0(y);
    if (g < 1.0) throw std::runtime_error("DampingProfile: gamma0 < 1 on sample grid");
    if (i && g < prev - 1e-12 * std::abs(prev))
      throw std::runtime_error("DampingProfile: gamma0 not nondecreasing");
    prev = g;
    if (i == 0) continue;  // interior stencils only
    double h = std::max(1e-3, 1e-3 * (1.0 + y));
    if (y - 3 * h < 0.0) continue;
    // a table evaluator is only piecewise smooth: skip stencils across knots
    if (!tab_y_.empty()) {
      bool straddles = false;
      for (double knot : tab_y_)
        if (std::abs(knot - y) < 3.5 * h) straddles = true;
      if (straddles) continue;
    }
    double f[7];
    for (int k = -3; k <= 3; ++k) f[k + 3] = gamma0(y + k * h);
    double d1 = (f[4] - f[2]) / (2 * h);
    double d2 = (f[4] - 2 * f[3] + f[2]) / (h * h);
    double d3 = (f[5] - 2 * f[4] + 2 * f[2] - f[1]) / (2 * h * h * h);
    double dv[3] = {std::abs(d1), std::abs(d2), std::abs(d3)};
    for (int k = 1; k <= 3; ++k) {
      double env = std::pow(1.0 + y, r_star_ - k);
      if (env > 0.0) c_needed = std::max(c_needed, dv[k - 1] / env);
    }
  }
  if (c_needed > envelope_constant)
    throw std::runtime_error("DampingProfile: derivative envelope constant exceeded");
  return c_needed;
}

bool ForcingProfile::decay_dominates(double r, double s_max) const {
  double worst = 0.0;
  for (int i = 0; i <= 400; ++i) {
    double x = s_max * i / 400.0;
    Vec s{x, 0, 0};
    worst = std::max(worst, (*this)(s)*std::pow(1.0 + x * x, r / 2));
  }
  return std::isfinite(worst);
}

double Profiles::default_cutoff(double tol) const {
  double r = 0.5;
  while (r < 64.0) {
    Vec s{r, 0, 0};
    if (B(s) < tol) return r;
    r += 0.1;
  }
  return r;
}

}  // namespace wavekin
