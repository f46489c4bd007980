#pragma once

// Test-only oracles, deliberately written as straight-line dense linear
// algebra so they share no code path with the kernels they check.

#include <array>
#include <complex>
#include <vector>

#include "hqrl/rng.hpp"

namespace test_oracle {

using Complex = std::complex<double>;
using Mat2 = std::array<std::array<Complex, 2>, 2>;

// Rz(phi) * Rx(theta), half-angle convention, multiplied out by hand.
inline Mat2 rotation_matrix(double theta, double phi) {
  const Complex i{0.0, 1.0};
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Mat2 rx{{{Complex{c, 0.0}, -i * s}, {-i * s, Complex{c, 0.0}}}};
  const Complex em = std::exp(-i * (phi / 2.0));
  const Complex ep = std::exp(i * (phi / 2.0));
  const Mat2 rz{{{em, Complex{0.0, 0.0}}, {Complex{0.0, 0.0}, ep}}};
  Mat2 out{};
  for (int r = 0; r < 2; ++r) {
    for (int col = 0; col < 2; ++col) {
      out[r][col] = rz[r][0] * rx[0][col] + rz[r][1] * rx[1][col];
    }
  }
  return out;
}

// Full 2^N x 2^N matrix-vector product where the matrix is U on `qubit`
// tensored with identities: entries built factor-by-factor from bit patterns.
inline std::vector<Complex> apply_single_qubit_dense(const std::vector<Complex>& state,
                                                     int num_qubits, int qubit,
                                                     const Mat2& u) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  std::vector<Complex> out(dim, Complex{0.0, 0.0});
  for (std::size_t row = 0; row < dim; ++row) {
    for (std::size_t col = 0; col < dim; ++col) {
      Complex entry{1.0, 0.0};
      for (int q = 0; q < num_qubits; ++q) {
        const int rb = (row >> q) & 1;
        const int cb = (col >> q) & 1;
        if (q == qubit) {
          entry *= u[rb][cb];
        } else if (rb != cb) {
          entry = Complex{0.0, 0.0};
          break;
        }
      }
      out[row] += entry * state[col];
    }
  }
  return out;
}

inline std::vector<Complex> apply_cz_dense(const std::vector<Complex>& state,
                                           int num_qubits, int p, int k) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  std::vector<Complex> out(dim);
  for (std::size_t b = 0; b < dim; ++b) {
    const bool both = ((b >> p) & 1) && ((b >> k) & 1);
    out[b] = (both && p != k) ? -state[b] : state[b];
  }
  return out;
}

// Marginals via basis-state enumeration.
inline std::vector<double> marginals_dense(const std::vector<Complex>& state,
                                           int num_qubits) {
  std::vector<double> probs(num_qubits, 0.0);
  for (std::size_t b = 0; b < state.size(); ++b) {
    const double p = std::norm(state[b]);
    for (int q = 0; q < num_qubits; ++q) {
      if ((b >> q) & 1) probs[q] += p;
    }
  }
  return probs;
}

}  // namespace test_oracle
