#include "wavekin/density.hpp"

#include <algorithm>
#include <map>
#include <cmath>

namespace wavekin {

SpectralDensity SpectralDensity::on_lattice(std::shared_ptr<const ModeSet> ms,
                                            std::vector<double> values, bool nonneg) {
  if (!ms || values.size() != ms->size())
    throw std::invalid_argument("SpectralDensity::on_lattice: size mismatch");
  SpectralDensity d;
  d.ms_ = std::move(ms);
  d.values_ = std::move(values);
  d.nonneg_ = nonneg;
  if (nonneg)
    for (double v : d.values_)
      if (v < 0.0) throw std::invalid_argument("SpectralDensity: negative value with nonneg flag");
  return d;
}

SpectralDensity SpectralDensity::continuum(std::function<double(const Vec&)> f, bool nonneg) {
  SpectralDensity d;
  d.f_ = std::move(f);
  d.nonneg_ = nonneg;
  return d;
}

double SpectralDensity::operator()(const Vec& s) const {
  if (f_) return f_(s);
  if (!ms_) throw std::logic_error("SpectralDensity: empty");
  const auto& spec = ms_->spec();
  IVec n{(int)std::lround(s[0] * spec.L), (int)std::lround(s[1] * spec.L),
         (int)std::lround(s[2] * spec.L)};
  int i = ms_->find(n);
  return i < 0 ? 0.0 : values_[(std::size_t)i];
}

RadialDensity::RadialDensity(std::vector<double> radii, std::vector<double> values)
    : r_(std::move(radii)), v_(std::move(values)) {
  if (r_.size() != v_.size() || r_.size() < 2)
    throw std::invalid_argument("RadialDensity: need >= 2 knots");
  for (std::size_t i = 1; i < r_.size(); ++i)
    if (r_[i] <= r_[i - 1]) throw std::invalid_argument("RadialDensity: radii must increase");
  build_slopes();
}

void RadialDensity::build_slopes() {
  // Steffen (1990) monotone cubic slopes: no overshoot, C^1.
  std::size_t n = r_.size();
  slope_.assign(n, 0.0);
  std::vector<double> h(n - 1), d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = r_[i + 1] - r_[i];
    d[i] = (v_[i + 1] - v_[i]) / h[i];
  }
  slope_[0] = d[0];
  slope_[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    double p = (d[i - 1] * h[i] + d[i] * h[i - 1]) / (h[i - 1] + h[i]);
    double lim = 2.0 * std::min(std::abs(d[i - 1]), std::abs(d[i]));
    if (d[i - 1] * d[i] <= 0.0)
      slope_[i] = 0.0;
    else
      slope_[i] = std::copysign(std::min(std::abs(p), lim), d[i]);
  }
}

double RadialDensity::operator()(double r) const {
  if (r <= r_.front()) {
    // even extension around 0 for radial profiles
    if (r_.front() == 0.0) return v_.front();
    return v_.front();
  }
  if (r >= r_.back()) return 0.0;
  auto it = std::upper_bound(r_.begin(), r_.end(), r);
  std::size_t i = (std::size_t)(it - r_.begin()) - 1;
  double h = r_[i + 1] - r_[i], t = (r - r_[i]) / h;
  double a = v_[i], b = slope_[i] * h, da = v_[i + 1] - v_[i];
  double c = 3 * da - 2 * b - slope_[i + 1] * h;
  double e = -2 * da + b + slope_[i + 1] * h;
  return a + t * (b + t * (c + t * e));
}

RadialDensity radial_average(const SpectralDensity& lattice) {
  const auto& ms = lattice.mode_set();
  std::map<long long, std::pair<double, int>> bins;  // |n|^2 -> (sum, count)
  for (std::size_t i = 0; i < ms.size(); ++i) {
    long long r2 = inorm2(ms[i].n);
    auto& b = bins[r2];
    b.first += lattice.at_mode(i);
    b.second += 1;
  }
  std::vector<double> radii, vals;
  for (const auto& [r2, b] : bins) {
    radii.push_back(std::sqrt((double)r2) / ms.spec().L);
    vals.push_back(b.first / b.second);
  }
  return RadialDensity(std::move(radii), std::move(vals));
}

std::vector<double> norm_probe_radii(int n, double jbracket_max) {
  std::vector<double> out;
  out.push_back(0.0);
  double smax = std::sqrt(jbracket_max * jbracket_max - 1.0);
  double s0 = 0.05;
  for (int i = 0; i < n; ++i) {
    double t = (double)i / (n - 1);
    out.push_back(s0 * std::pow(smax / s0, t));
  }
  return out;
}

double weighted_norm(const SpectralDensity& f, double r) {
  if (f.is_lattice()) {
    const auto& ms = f.mode_set();
    if (ms.size() == 0) throw std::invalid_argument("weighted_norm: empty probe set");
    double best = 0.0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
      double w = std::pow(1.0 + norm2(ms[i].s), r / 2);
      best = std::max(best, std::abs(f.at_mode(i)) * w);
    }
    return best;
  }
  return weighted_norm([&f](const Vec& s) { return f(s); }, r, norm_probe_radii());
}

double weighted_norm(const std::function<double(const Vec&)>& f, double r,
                     const std::vector<double>& probe_radii) {
  if (probe_radii.empty()) throw std::invalid_argument("weighted_norm: empty probe set");
  double best = 0.0;
  for (double x : probe_radii) {
    Vec s{x, 0, 0};
    best = std::max(best, std::abs(f(s)) * std::pow(1.0 + x * x, r / 2));
  }
  return best;
}

}  // namespace wavekin
