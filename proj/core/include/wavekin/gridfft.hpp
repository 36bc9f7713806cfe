#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

#include "wavekin/lattice.hpp"
#include "wavekin/numerics.hpp"

namespace wavekin {

// Dense complex field over the integer index box [-K,K]^d embedded in an
// N^d periodic grid with N >= 4K+1, which makes the triple mode sum
//   TC(f1,f2,f3)(t) = sum_{n1,n2 in box} f1(n1) f2(n2) conj(f3(n1+n2-t))
// alias-free for targets |t| <= K. Fields are zero outside the retained set,
// so the cutoff on s3 is automatic.
class ConvGrid {
 public:
  ConvGrid(int d, int K);
  ~ConvGrid();
  ConvGrid(const ConvGrid&) = delete;
  ConvGrid& operator=(const ConvGrid&) = delete;

  int dim() const { return d_; }
  int box_radius() const { return K_; }
  int fft_size() const { return N_; }
  std::size_t cells() const { return cells_; }

  std::size_t cell_of(const IVec& n) const;  // n in [-N/2, N/2) wrapped

  void scatter(const ModeSet& ms, const cplx* per_mode, cplx* grid) const;
  void gather(const ModeSet& ms, const cplx* grid, cplx* per_mode) const;

  // in-place transforms on caller buffers of size cells(); inverse includes 1/N^d
  void forward(cplx* grid) const;
  void inverse(cplx* grid) const;

 private:
  int d_, K_, N_;
  std::size_t cells_;
  struct Plans;
  std::unique_ptr<Plans> plans_;
};

// Per-thread scratch for triple convolutions.
struct ConvWork {
  std::vector<cplx> g1, g2, g3, prod;
  void resize(std::size_t n) {
    g1.assign(n, cplx{});
    g2.assign(n, cplx{});
    g3.assign(n, cplx{});
    prod.assign(n, cplx{});
  }
};

// out[t] = sum over retained (n1,n2) with the strict four-wave delta of
// f1(n1) f2(n2) conj(f3(n3)), n3 = n1+n2-t, for every retained target t.
// No L^{-2d} normalization. FFT path.
void strict_triple_conv(const ModeSet& ms, const ConvGrid& grid, const cplx* f1, const cplx* f2,
                        const cplx* f3, cplx* out, ConvWork& work);

// Reference direct summation (same contract); O(M^2) per target.
void strict_triple_direct(const ModeSet& ms, const cplx* f1, const cplx* f2, const cplx* f3,
                          cplx* out);

// Removes the pair-coincidence terms from a plain-delta triple convolution:
// full[t] - f1(t) sum_k f2 conj(f3) - f2(t) sum_k f1 conj(f3) + f1(t) f2(t) conj(f3(t)).
void strict_delta_correction(const ModeSet& ms, const cplx* f1, const cplx* f2, const cplx* f3,
                             cplx* full_to_fix);

}  // namespace wavekin
