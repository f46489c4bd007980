#include "hqrl/quantum/kernels.hpp"

#include <vector>

namespace hqrl::quantum::kernels {

namespace {

// Index of the |...0...> member of pair r for a given target-bit mask.
inline std::size_t pair_low(std::size_t r, std::size_t mask) {
  return ((r & ~(mask - 1)) << 1) | (r & (mask - 1));
}

// Fixed-size blocks keep parallel sums deterministic: block partials are
// combined serially in block order regardless of the thread count.
constexpr std::size_t kSumBlock = 4096;

template <typename F>
double blocked_sum(std::size_t dim, F&& term) {
  if (dim <= kSumBlock) {
    double acc = 0.0;
    for (std::size_t b = 0; b < dim; ++b) acc += term(b);
    return acc;
  }
  const std::size_t nblocks = (dim + kSumBlock - 1) / kSumBlock;
  std::vector<double> partial(nblocks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::size_t blk = 0; blk < nblocks; ++blk) {
    const std::size_t lo = blk * kSumBlock;
    const std::size_t hi = lo + kSumBlock < dim ? lo + kSumBlock : dim;
    double acc = 0.0;
    for (std::size_t b = lo; b < hi; ++b) acc += term(b);
    partial[blk] = acc;
  }
  double acc = 0.0;
  for (double p : partial) acc += p;
  return acc;
}

}  // namespace

namespace serial {

void apply_single_qubit(std::complex<double>* amps, std::size_t dim, int qubit,
                        const Mat2& u) {
  const std::size_t mask = std::size_t{1} << qubit;
  const std::size_t half = dim >> 1;
  for (std::size_t r = 0; r < half; ++r) {
    const std::size_t lo = pair_low(r, mask);
    const std::size_t hi = lo | mask;
    const std::complex<double> a = amps[lo];
    const std::complex<double> b = amps[hi];
    amps[lo] = u.m00 * a + u.m01 * b;
    amps[hi] = u.m10 * a + u.m11 * b;
  }
}

void apply_cz(std::complex<double>* amps, std::size_t dim, int p, int k) {
  const std::size_t both = (std::size_t{1} << p) | (std::size_t{1} << k);
  for (std::size_t b = 0; b < dim; ++b) {
    if ((b & both) == both) amps[b] = -amps[b];
  }
}

double marginal_one(const std::complex<double>* amps, std::size_t dim, int qubit) {
  const std::size_t mask = std::size_t{1} << qubit;
  double acc = 0.0;
  for (std::size_t b = 0; b < dim; ++b) {
    if (b & mask) acc += std::norm(amps[b]);
  }
  return acc;
}

double norm_sq(const std::complex<double>* amps, std::size_t dim) {
  double acc = 0.0;
  for (std::size_t b = 0; b < dim; ++b) acc += std::norm(amps[b]);
  return acc;
}

}  // namespace serial

void apply_single_qubit(std::complex<double>* amps, std::size_t dim, int qubit,
                        const Mat2& u) {
  if (dim < kParallelMinDim) {
    serial::apply_single_qubit(amps, dim, qubit, u);
    return;
  }
  const std::size_t mask = std::size_t{1} << qubit;
  const std::size_t half = dim >> 1;
#pragma omp parallel for schedule(static)
  for (std::size_t r = 0; r < half; ++r) {
    const std::size_t lo = pair_low(r, mask);
    const std::size_t hi = lo | mask;
    const std::complex<double> a = amps[lo];
    const std::complex<double> b = amps[hi];
    amps[lo] = u.m00 * a + u.m01 * b;
    amps[hi] = u.m10 * a + u.m11 * b;
  }
}

void apply_cz(std::complex<double>* amps, std::size_t dim, int p, int k) {
  if (dim < kParallelMinDim) {
    serial::apply_cz(amps, dim, p, k);
    return;
  }
  const std::size_t both = (std::size_t{1} << p) | (std::size_t{1} << k);
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < dim; ++b) {
    if ((b & both) == both) amps[b] = -amps[b];
  }
}

double marginal_one(const std::complex<double>* amps, std::size_t dim, int qubit) {
  const std::size_t mask = std::size_t{1} << qubit;
  return blocked_sum(dim, [&](std::size_t b) {
    return (b & mask) ? std::norm(amps[b]) : 0.0;
  });
}

double norm_sq(const std::complex<double>* amps, std::size_t dim) {
  return blocked_sum(dim, [&](std::size_t b) { return std::norm(amps[b]); });
}

}  // namespace hqrl::quantum::kernels
