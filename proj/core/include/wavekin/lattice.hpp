#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace wavekin {

// Frequencies and mode indices are stored with 3 components; for d = 2 the
// third component is identically zero, so norms and dot products are
// dimension-agnostic.
using Vec = std::array<double, 3>;
using IVec = std::array<int, 3>;

inline double dot(const Vec& a, const Vec& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }
inline Vec operator+(const Vec& a, const Vec& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec operator-(const Vec& a, const Vec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec operator*(double c, const Vec& a) { return {c * a[0], c * a[1], c * a[2]}; }
// Japanese bracket <v> = sqrt(1+|v|^2)
inline double jbracket(const Vec& a) { return std::sqrt(1.0 + norm2(a)); }

inline long long idot(const IVec& a, const IVec& b) {
  return (long long)a[0] * b[0] + (long long)a[1] * b[1] + (long long)a[2] * b[2];
}
inline long long inorm2(const IVec& a) { return idot(a, a); }
inline IVec operator+(const IVec& a, const IVec& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline IVec operator-(const IVec& a, const IVec& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

// Discretized torus frequency lattice Z^d_L = L^{-1} Z^d with a radial cutoff.
// Modes with |s| > cutoff_radius are dropped from all sums.
struct LatticeSpec {
  int d = 2;           // space dimension, 2 or 3
  double L = 1.0;      // period; lattice spacing is 1/L
  double cutoff_radius = 3.0;

  LatticeSpec() = default;
  LatticeSpec(int d_, double L_, double Rc_) : d(d_), L(L_), cutoff_radius(Rc_) {
    if (d != 2 && d != 3) throw std::invalid_argument("LatticeSpec: d must be 2 or 3");
    if (L < 1.0) throw std::invalid_argument("LatticeSpec: L must be >= 1");
    if (Rc_ <= 0.0) throw std::invalid_argument("LatticeSpec: cutoff_radius must be > 0");
  }

  // Largest integer index magnitude per axis.
  int index_radius() const { return (int)std::floor(cutoff_radius * L + 1e-12); }
  bool retained(const IVec& n) const {
    double r2 = (double)inorm2(n) / (L * L);
    return r2 <= cutoff_radius * cutoff_radius * (1.0 + 1e-14);
  }
  Vec freq(const IVec& n) const { return {n[0] / L, n[1] / L, n[2] / L}; }
};

struct Mode {
  IVec n{0, 0, 0};   // integer index
  Vec s{0, 0, 0};    // frequency n / L
};

// Retained modes in fixed lexicographic index order plus O(1) index lookup.
class ModeSet {
 public:
  explicit ModeSet(const LatticeSpec& spec);

  const LatticeSpec& spec() const { return spec_; }
  const std::vector<Mode>& modes() const { return modes_; }
  std::size_t size() const { return modes_.size(); }
  const Mode& operator[](std::size_t i) const { return modes_[i]; }

  // -1 if the index vector is not retained.
  int find(const IVec& n) const;

 private:
  LatticeSpec spec_;
  std::vector<Mode> modes_;
  std::vector<int> lut_;  // dense (2K+1)^d lookup table
  int K_ = 0;
  std::size_t lut_index(const IVec& n) const;
};

// Compensated (Kahan) accumulator; keeps deterministic sums at <= 1e-13
// relative regardless of the reduction tree shape used above it.
struct Kahan {
  double s = 0.0, c = 0.0;
  void add(double x) {
    double y = x - c;
    double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  double value() const { return s; }
};

// L^{-d} * sum over retained modes, lexicographic order, compensated.
// Throws on non-finite partial sums (profile blow-up guard).
double mod_sum(const ModeSet& ms, const std::function<double(const Mode&)>& f);

}  // namespace wavekin
