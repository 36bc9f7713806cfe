#include "wavekin/gridfft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace wavekin {

namespace {
std::mutex& fftw_mutex() {
  static std::mutex mu;
  return mu;
}

int next_good_size(int n) {
  auto good = [](int m) {
    for (int p : {2, 3, 5, 7})
      while (m % p == 0) m /= p;
    return m == 1;
  };
  while (!good(n)) ++n;
  return n;
}
}  // namespace

struct ConvGrid::Plans {
  fftw_plan fwd = nullptr, inv = nullptr;
  std::vector<cplx> proto;  // planning buffer
  ~Plans() {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
  }
};

ConvGrid::ConvGrid(int d, int K) : d_(d), K_(K) {
  if (d != 2 && d != 3) throw std::invalid_argument("ConvGrid: d must be 2 or 3");
  if (K < 1) throw std::invalid_argument("ConvGrid: K must be >= 1");
  N_ = next_good_size(4 * K + 1);
  cells_ = 1;
  for (int k = 0; k < d; ++k) cells_ *= (std::size_t)N_;
  plans_ = std::make_unique<Plans>();
  plans_->proto.assign(cells_, cplx{});
  int dims[3] = {N_, N_, N_};
  std::lock_guard<std::mutex> lock(fftw_mutex());
  auto* buf = reinterpret_cast<fftw_complex*>(plans_->proto.data());
  plans_->fwd = fftw_plan_dft(d_, dims, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->inv = fftw_plan_dft(d_, dims, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plans_->fwd || !plans_->inv) throw std::runtime_error("ConvGrid: FFTW planning failed");
}

ConvGrid::~ConvGrid() = default;

std::size_t ConvGrid::cell_of(const IVec& n) const {
  std::size_t idx = 0;
  for (int k = 0; k < d_; ++k) {
    int c = n[k] % N_;
    if (c < 0) c += N_;
    idx = idx * (std::size_t)N_ + (std::size_t)c;
  }
  return idx;
}

void ConvGrid::scatter(const ModeSet& ms, const cplx* per_mode, cplx* grid) const {
  std::fill(grid, grid + cells_, cplx{});
  for (std::size_t m = 0; m < ms.size(); ++m) grid[cell_of(ms[m].n)] = per_mode[m];
}

void ConvGrid::gather(const ModeSet& ms, const cplx* grid, cplx* per_mode) const {
  for (std::size_t m = 0; m < ms.size(); ++m) per_mode[m] = grid[cell_of(ms[m].n)];
}

void ConvGrid::forward(cplx* grid) const {
  auto* b = reinterpret_cast<fftw_complex*>(grid);
  fftw_execute_dft(plans_->fwd, b, b);
}

void ConvGrid::inverse(cplx* grid) const {
  auto* b = reinterpret_cast<fftw_complex*>(grid);
  fftw_execute_dft(plans_->inv, b, b);
  double scale = 1.0 / (double)cells_;
  for (std::size_t i = 0; i < cells_; ++i) grid[i] *= scale;
}

void strict_delta_correction(const ModeSet& ms, const cplx* f1, const cplx* f2, const cplx* f3,
                             cplx* full) {
  cplx s23{}, s13{};
  for (std::size_t k = 0; k < ms.size(); ++k) {
    s23 += f2[k] * std::conj(f3[k]);
    s13 += f1[k] * std::conj(f3[k]);
  }
  for (std::size_t t = 0; t < ms.size(); ++t)
    full[t] -= f1[t] * s23 + f2[t] * s13 - f1[t] * f2[t] * std::conj(f3[t]);
}

void strict_triple_conv(const ModeSet& ms, const ConvGrid& grid, const cplx* f1, const cplx* f2,
                        const cplx* f3, cplx* out, ConvWork& work) {
  work.resize(grid.cells());
  grid.scatter(ms, f1, work.g1.data());
  grid.scatter(ms, f2, work.g2.data());
  grid.scatter(ms, f3, work.g3.data());
  grid.forward(work.g1.data());
  grid.forward(work.g2.data());
  grid.forward(work.g3.data());
  for (std::size_t i = 0; i < grid.cells(); ++i)
    work.prod[i] = work.g1[i] * work.g2[i] * std::conj(work.g3[i]);
  grid.inverse(work.prod.data());
  grid.gather(ms, work.prod.data(), out);
  strict_delta_correction(ms, f1, f2, f3, out);
}

void strict_triple_direct(const ModeSet& ms, const cplx* f1, const cplx* f2, const cplx* f3,
                          cplx* out) {
  const std::size_t M = ms.size();
  for (std::size_t t = 0; t < M; ++t) {
    cplx acc{};
    for (std::size_t i = 0; i < M; ++i) {
      if (f1[i] == cplx{}) continue;
      for (std::size_t j = 0; j < M; ++j) {
        IVec n3 = ms[i].n + ms[j].n - ms[t].n;
        int k3 = ms.find(n3);
        if (k3 < 0) continue;
        // strict delta: exclude {s1,s2} == {s3,s}
        bool pair_eq = (ms[i].n == n3 /* => s2 == t */) || (ms[i].n == ms[t].n);
        if (pair_eq) continue;
        acc += f1[i] * f2[j] * std::conj(f3[(std::size_t)k3]);
      }
    }
    out[t] = acc;
  }
}

}  // namespace wavekin
