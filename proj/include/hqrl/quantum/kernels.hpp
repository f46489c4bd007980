#pragma once

#include <complex>
#include <cstddef>

namespace hqrl::quantum::kernels {

// Gate loops below this dimension stay serial; the fork/join overhead beats
// the work for small registers.
inline constexpr std::size_t kParallelMinDim = std::size_t{1} << 16;

struct Mat2 {
  std::complex<double> m00, m01, m10, m11;
};

// Serial reference kernels. Straight-line loops, kept as the comparison
// baseline for the OpenMP variants and for the benchmark target.
namespace serial {

void apply_single_qubit(std::complex<double>* amps, std::size_t dim, int qubit,
                        const Mat2& u);
void apply_cz(std::complex<double>* amps, std::size_t dim, int p, int k);
double marginal_one(const std::complex<double>* amps, std::size_t dim, int qubit);
double norm_sq(const std::complex<double>* amps, std::size_t dim);

}  // namespace serial

// OpenMP kernels. Deterministic for any thread count: every amplitude is
// written by exactly one iteration, and sums combine fixed-size blocks in a
// fixed order. (Against the serial reference they agree to rounding only,
// since the compiler may contract the two builds differently.)
void apply_single_qubit(std::complex<double>* amps, std::size_t dim, int qubit,
                        const Mat2& u);
void apply_cz(std::complex<double>* amps, std::size_t dim, int p, int k);
double marginal_one(const std::complex<double>* amps, std::size_t dim, int qubit);
double norm_sq(const std::complex<double>* amps, std::size_t dim);

}  // namespace hqrl::quantum::kernels
