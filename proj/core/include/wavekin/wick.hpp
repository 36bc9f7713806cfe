#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "wavekin/density.hpp"
#include "wavekin/gridfft.hpp"
#include "wavekin/lattice.hpp"
#include "wavekin/ou.hpp"
#include "wavekin/profiles.hpp"
#include "wavekin/timekernels.hpp"

namespace wavekin {

enum class MomentKind {
  Sigma_s,        // stationary E|a1_s|^2
  Z4, Zj,         // increment kernels
  S1, S2, S3,     // parts of the increment moment sum
  cZ,             // assembled increment moment sum
  Q_s,            // Monte Carlo increment moment
  cross_S,        // one-sided oscillating cross sum
  n_leq2_increment
};

struct MomentValue {
  double value = 0.0;
  MomentKind kind = MomentKind::Sigma_s;
  Vec s{0, 0, 0};
  double tau = 0.0, tau_prime = 0.0, nu = 0.0;
  double L = 0.0;  // 0 means continuum
  std::string note;
};

// Quadrature controls for the deterministic lattice evaluators.
struct WickQuad {
  double omega_cut = 12.0;      // resolve phases up to |omega| <= omega_cut
  int u_nodes_per_panel = 24;
  double u_phase_per_panel = 24.0;
  int v_nodes_per_panel = 10;
  double v_rate = 8.0;          // e-folding rate the v panels are sized for
  double tail_tol = 1e-9;
  std::size_t direct_pair_limit = 40'000'000;  // switch direct -> FFT above this
};

// Controls for the continuum (L -> infinity) pair integrals.
struct ContinuumQuad {
  int n_radial = 32;
  int n_angle = 48;       // d=2 circle; d=3 uses n_angle_polar x n_angle
  int n_angle_polar = 16;
  int n_fiber = 32;       // transverse y coordinate(s)
  int n_peak = 48;        // Lorentzian peak nodes (tan substitution)
  int n_tail_panel = 12;  // Filon/GL nodes per smooth tail panel
  double range = 4.5;     // outer integration radius (B-decay)
  double peak_halfwidth = 20.0;  // peak zone in units of nu*Gamma/(2 r1)
};

// Deterministic (sampling-free) second moments built from the paper's Wick
// closed forms on the resonance set.
class WickEngine {
 public:
  WickEngine(std::shared_ptr<const ModeSet> ms, Profiles prof, double nu);

  const ModeSet& modes() const { return *ms_; }
  const Profiles& profiles() const { return prof_; }
  double nu() const { return nu_; }

  // --- stationary (T = infinity) ---------------------------------------
  // E|a1_s|^2 on the lattice; s must be a retained mode when by_index is used.
  MomentValue order1_moment_stationary(const Vec& s, const WickQuad& q = {}) const;
  // all retained modes at once (FFT route)
  std::vector<double> order1_moment_stationary_all(const WickQuad& q = {}) const;
  // continuum variant (the pair integral with the lattice sum replaced by ds1 ds2)
  MomentValue order1_moment_stationary_continuum(const Vec& s, const ContinuumQuad& cq = {}) const;

  // Full stationary order-2 spectrum coefficient  n2 = E|a1|^2 + 2 Re E a2 conj(a0)
  // for every retained mode.
  std::vector<double> spectrum_order2_stationary_all(const WickQuad& q = {}) const;

  // --- finite horizon ----------------------------------------------------
  // Deterministic n^(2)_s(tau) for every retained mode, horizon T (finite).
  std::vector<double> spectrum_order2_all(double tau, double T, const WickQuad& q = {}) const;
  // Reference per-pair evaluation (small lattices; oracle for the FFT route).
  double spectrum_order2_direct(const Vec& s, double tau, double T) const;

  // n^{<=2}(tau) = n^(0)(tau) + rho^2 n^(2)(tau) as a lattice density.
  SpectralDensity n_leq2(double tau, const PhysicalParams& par, const WickQuad& q = {}) const;

  // --- increment machinery (Duhamel step of length tau from state at 0) ---
  // Z_s = 2 modsum delta' (Z4 n1 n2 n3 + Z3 n1 n2 ns - 2 Z1 n2 n3 ns) and its
  // parts; n is the order-zero spectrum at the step start.
  MomentValue increment_moment_sum(const Vec& s, double tau, const PhysicalParams& par,
                                   double* parts_out = nullptr) const;

  // One-sided oscillating cross sum (declarative envelope F123 given as a
  // per-mode radial factor f so that F = f(s1) f(s2) f(s3)):
  //   S_s = modsum delta' int_0^tau dl int_{-T}^0 dl' e^{g l'} e^{i(l-l') omega/nu} F.
  MomentValue cross_correlation_sum(const Vec& s, double tau, double g,
                                    const std::function<double(const Vec&)>& f,
                                    double T) const;

  // Oscillating sum Sigma^0_s with envelope F = f(s1) f(s2) f(s3) (lattice),
  // and its continuum variant I^0_s.
  MomentValue oscillating_sum_sigma0(const Vec& s, double tau,
                                     const std::function<double(const Vec&)>& f) const;
  MomentValue oscillating_sum_continuum(const Vec& s, double tau,
                                        const std::function<double(const Vec&)>& f,
                                        const ContinuumQuad& cq = {}) const;

  // per-mode precomputed tables
  const std::vector<double>& gamma_table() const { return gam_; }
  const std::vector<double>& B_table() const { return B_; }

 private:
  std::shared_ptr<const ModeSet> ms_;
  Profiles prof_;
  double nu_;
  std::vector<double> gam_, B_, k2_;  // gamma_k, B_k, |s_k|^2
  mutable std::optional<ConvGrid> grid_;
  ConvGrid& grid() const;

  std::vector<double> stationary_sweep(bool full_n2, const WickQuad& q) const;
  std::vector<double> finite_T_sweep(double tau, double T, const WickQuad& q) const;
};

// Prediction of Theorem-5.2 form for a step of length tau from n_start, with
// the structural remainder budget (constant 1):
//   pred = e^{-tau L} n_start + 2 int_0^tau e^{-t L} b^2 dt + eps K^tau(n_start),
//   budget = eps (nu^{1-aleph} + nu^{-3} L^{-2} + tau^2 + eps tau).
struct IncrementPrediction {
  std::vector<double> predicted;  // per retained mode
  double budget = 0.0;
};
class KineticConfig;  // from kinetic.hpp
IncrementPrediction n_leq2_increment(const SpectralDensity& n_start, double tau,
                                     const Profiles& prof, const PhysicalParams& par,
                                     const LatticeSpec& lat, const KineticConfig& kcfg);

}  // namespace wavekin
