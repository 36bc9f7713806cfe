#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "wavekin/lattice.hpp"

namespace wavekin {

// Energy spectra and WKE states: a real function of s given either by
// per-mode lattice values (zero outside the cutoff) or by a continuum
// evaluator. Nonnegativity is a flag checked on stored values only.
class SpectralDensity {
 public:
  SpectralDensity() = default;

  static SpectralDensity on_lattice(std::shared_ptr<const ModeSet> ms, std::vector<double> values,
                                    bool nonneg = false);
  static SpectralDensity continuum(std::function<double(const Vec&)> f, bool nonneg = false);

  bool is_lattice() const { return ms_ != nullptr; }
  const ModeSet& mode_set() const {
    if (!ms_) throw std::logic_error("SpectralDensity: not a lattice density");
    return *ms_;
  }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }
  bool nonneg_flag() const { return nonneg_; }

  // Lattice form: value at the nearest lattice mode if retained, else 0.
  double operator()(const Vec& s) const;
  double at_mode(std::size_t i) const { return values_[i]; }

 private:
  std::shared_ptr<const ModeSet> ms_;
  std::vector<double> values_;
  std::function<double(const Vec&)> f_;
  bool nonneg_ = false;
};

// Radial samples with monotone-safe cubic (Steffen-like) interpolation in |s|;
// 0 beyond the last knot. Used for WKE states and K outputs on radial grids.
class RadialDensity {
 public:
  RadialDensity() = default;
  RadialDensity(std::vector<double> radii, std::vector<double> values);
  double operator()(double r) const;
  double operator()(const Vec& s) const { return (*this)(norm(s)); }
  const std::vector<double>& radii() const { return r_; }
  const std::vector<double>& values() const { return v_; }
  std::vector<double>& values() { return v_; }

 private:
  std::vector<double> r_, v_, slope_;
  void build_slopes();
};

// Log-spaced radial probe grid used as the |.|_r norm surrogate
// (documented: sup over this probe set), up to <s> = 40 by default.
std::vector<double> norm_probe_radii(int n = 96, double jbracket_max = 40.0);

// Radial profile of a lattice density: values averaged over modes sharing the
// same |s| (exact equal-radius classes), interpolated monotone-safely.
RadialDensity radial_average(const SpectralDensity& lattice);

// |f|_r = sup over probes of |f(s)| <s>^r. For lattice densities the probe
// set is the retained mode set; for continuum evaluators it is the radial
// probe grid (direction (1,0,..) — radial usage). Throws on an empty probe set.
double weighted_norm(const SpectralDensity& f, double r);
double weighted_norm(const std::function<double(const Vec&)>& f, double r,
                     const std::vector<double>& probe_radii);

}  // namespace wavekin
