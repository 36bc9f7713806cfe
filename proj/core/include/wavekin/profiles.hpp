#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "wavekin/lattice.hpp"

namespace wavekin {

// Damping rate gamma_s = gamma0(|s|^2). Built-in family gamma0(y) = (1+y)^{r*}
// with r* >= 0; an optional table-driven evaluator (log-linear interpolation in
// y) is supported for radially specified profiles.
class DampingProfile {
 public:
  explicit DampingProfile(double r_star = 1.0) : r_star_(r_star) {
    if (r_star < 0.0) throw std::invalid_argument("DampingProfile: r_star must be >= 0");
  }
  static DampingProfile from_table(double r_star, std::vector<double> y, std::vector<double> g);

  double r_star() const { return r_star_; }
  double gamma0(double y) const;           // y = |s|^2
  double operator()(const Vec& s) const { return gamma0(norm2(s)); }

  // Checks gamma0 >= 1, monotonicity, and the (1+y)^{r*-k} envelope for
  // finite-difference derivatives up to order 3 on a sample grid.
  // Returns the smallest constant C making the envelope hold.
  double validate(double y_max, double envelope_constant = 64.0) const;

 private:
  double r_star_;
  std::vector<double> tab_y_, tab_g_;  // empty => power family
};

// Forcing amplitude b(s); built-in Gaussian family b(s) = beta*exp(-|s|^2/sigma^2).
// B(s) = b(s)^2 / gamma_s extends to a Schwartz function.
class ForcingProfile {
 public:
  explicit ForcingProfile(double beta = 1.0, double sigma2 = 2.0) : beta_(beta), sigma2_(sigma2) {
    if (beta <= 0.0 || sigma2 <= 0.0)
      throw std::invalid_argument("ForcingProfile: beta and sigma^2 must be > 0");
  }
  double beta() const { return beta_; }
  double sigma2() const { return sigma2_; }
  double operator()(const Vec& s) const { return beta_ * std::exp(-norm2(s) / sigma2_); }
  double b2(const Vec& s) const { double v = (*this)(s); return v * v; }

  // b(s) <s>^r bounded for every configured r: checked on a radial sample grid.
  bool decay_dominates(double r, double s_max = 40.0) const;

 private:
  double beta_, sigma2_;
};

struct Profiles {
  DampingProfile gamma;
  ForcingProfile b;

  double B(const Vec& s) const { return b.b2(s) / gamma(s); }
  double B123(const Vec& s1, const Vec& s2, const Vec& s3) const { return B(s1) * B(s2) * B(s3); }
  // Default cutoff rule: smallest radius with b(Rc)^2/gamma(Rc^2) < tol.
  double default_cutoff(double tol = 1e-12) const;
};

// Scaling parameters: rho^2 * nu = eps exactly, lambda = sqrt(nu*eps).
struct PhysicalParams {
  double nu = 0.1;
  double eps = 0.1;
  double T = std::numeric_limits<double>::infinity();  // horizon; u(-T) = 0
  double aleph = 0.1;  // rate exponent; 0 for d >= 3, small positive for d = 2

  PhysicalParams() = default;
  PhysicalParams(double nu_, double eps_, double T_ = std::numeric_limits<double>::infinity())
      : nu(nu_), eps(eps_), T(T_) {
    if (!(nu > 0.0 && nu <= 0.5)) throw std::invalid_argument("PhysicalParams: nu in (0,1/2]");
    if (!(eps >= 0.0 && eps <= 1.0)) throw std::invalid_argument("PhysicalParams: eps in [0,1]");
    if (!(T > 0.0)) throw std::invalid_argument("PhysicalParams: T > 0");
  }
  double rho() const { return std::sqrt(eps / nu); }
  double lambda() const { return std::sqrt(nu * eps); }
  bool finite_T() const { return std::isfinite(T); }
  static double aleph_for(int d) { return d >= 3 ? 0.0 : 0.1; }
};

}  // namespace wavekin
