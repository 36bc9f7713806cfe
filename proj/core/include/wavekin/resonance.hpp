#pragma once

#include <cmath>

#include "wavekin/lattice.hpp"

namespace wavekin {

// Four-wave resonance data for a quadruple (s1, s2, s3, s).
// omega = |s1|^2 + |s2|^2 - |s3|^2 - |s|^2 = 2 (s1 - s) . (s - s2) whenever
// s1 + s2 = s3 + s; both forms are always computed.
struct ResonanceData {
  Vec s1, s2, s3, s;
  double omega = 0.0;        // |s1|^2+|s2|^2-|s3|^2-|s|^2
  double omega_dot = 0.0;    // 2 (s1-s).(s-s2)
  bool kron_delta = false;   // s1+s2 = s3+s
  bool strict_delta = false; // kron_delta and {s1,s2} != {s3,s} as unordered pairs
};

// Index form: all deltas and omega*L^2 exact in integer arithmetic.
inline ResonanceData dispersion_omega(const IVec& n1, const IVec& n2, const IVec& n3,
                                      const IVec& ns, double L) {
  ResonanceData r;
  r.s1 = {n1[0] / L, n1[1] / L, n1[2] / L};
  r.s2 = {n2[0] / L, n2[1] / L, n2[2] / L};
  r.s3 = {n3[0] / L, n3[1] / L, n3[2] / L};
  r.s = {ns[0] / L, ns[1] / L, ns[2] / L};
  long long w = inorm2(n1) + inorm2(n2) - inorm2(n3) - inorm2(ns);
  r.omega = (double)w / (L * L);
  long long wd = 2 * idot(n1 - ns, ns - n2);
  r.omega_dot = (double)wd / (L * L);
  r.kron_delta = (n1 + n2 == n3 + ns);
  bool pair_eq = (n1 == n3 && n2 == ns) || (n1 == ns && n2 == n3);
  r.strict_delta = r.kron_delta && !pair_eq;
  return r;
}

// Frequency-vector form; deltas tested to floating tolerance.
inline ResonanceData dispersion_omega(const Vec& s1, const Vec& s2, const Vec& s3, const Vec& s) {
  ResonanceData r;
  r.s1 = s1; r.s2 = s2; r.s3 = s3; r.s = s;
  r.omega = norm2(s1) + norm2(s2) - norm2(s3) - norm2(s);
  r.omega_dot = 2.0 * dot(s1 - s, s - s2);
  double scale = 1.0 + norm(s1) + norm(s2) + norm(s3) + norm(s);
  r.kron_delta = norm(s1 + s2 - s3 - s) <= 1e-12 * scale;
  auto near = [&](const Vec& a, const Vec& b) { return norm(a - b) <= 1e-12 * scale; };
  bool pair_eq = (near(s1, s3) && near(s2, s)) || (near(s1, s) && near(s2, s3));
  r.strict_delta = r.kron_delta && !pair_eq;
  return r;
}

}  // namespace wavekin
