#pragma once

// Random generators and independent oracles shared by the test binaries.
// Nothing in here calls back into the library routines it is used to check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "qfithermo/numkernel.hpp"

namespace qfithermo::testing {

inline ComplexMatrix random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix a(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) a(r, c) = {n(rng), n(rng)};
  }
  return 0.5 * (a + a.adjoint());
}

inline ComplexVector random_ket(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexVector v(dim);
  for (Eigen::Index k = 0; k < dim; ++k) v(k) = {n(rng), n(rng)};
  return v / v.norm();
}

inline ComplexMatrix random_density(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = {n(rng), n(rng)};
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

/// Haar-ish random unitary from the QR factor of a Gaussian matrix.
inline ComplexMatrix random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) g(r, c) = {n(rng), n(rng)};
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  return qr.householderQ() * ComplexMatrix::Identity(dim, dim);
}

inline std::vector<double> random_distribution(std::size_t levels, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(levels);
  double sum = 0.0;
  for (double& x : p) sum += (x = e(rng));
  for (double& x : p) x /= sum;
  return p;
}

/// Binomial C(N,k)/2^N by Pascal's rule (no factorials or logs).
inline std::vector<double> pascal_binomial(int n) {
  std::vector<long double> row{1.0L};
  for (int i = 0; i < n; ++i) {
    std::vector<long double> next(row.size() + 1, 0.0L);
    for (std::size_t k = 0; k < row.size(); ++k) {
      next[k] += 0.5L * row[k];
      next[k + 1] += 0.5L * row[k];
    }
    row = std::move(next);
  }
  return {row.begin(), row.end()};
}

inline long double factorial(int n) {
  long double f = 1.0L;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline long double double_factorial(int n) {
  long double f = 1.0L;
  for (int i = n; i > 1; i -= 2) f *= i;
  return f;
}

/// |d^J_{m,0}(pi/2)|^2 for integer J = N/2 and m = k - J, from
/// d^J_{m,0}(pi/2)^2 = (J-|m|)!/(J+|m|)! * P_J^{|m|}(0)^2 and the closed form
/// |P_l^m(0)| = (l+m-1)!!/(l-m)!! for even l+m (zero otherwise).
inline std::vector<double> twin_fock_oracle(int n) {
  const int j = n / 2;
  std::vector<double> p(static_cast<std::size_t>(n + 1), 0.0);
  for (int k = 0; k <= n; ++k) {
    const int m = std::abs(k - j);
    if ((j + m) % 2 != 0) continue;
    const long double legendre = double_factorial(j + m - 1) / double_factorial(j - m);
    p[static_cast<std::size_t>(k)] =
        static_cast<double>(factorial(j - m) / factorial(j + m) * legendre * legendre);
  }
  return p;
}

inline double variance_of_index(const std::vector<double>& p) {
  long double mean = 0.0L;
  for (std::size_t k = 0; k < p.size(); ++k) mean += p[k] * static_cast<long double>(k);
  long double var = 0.0L;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const long double d = static_cast<long double>(k) - mean;
    var += p[k] * d * d;
  }
  return static_cast<double>(var);
}

/// Pair-weighted QFI assembled literally from F^{ab} / (2 (a-b)^2 t^2) * log(2/(p_a+p_b)).
inline double weighted_fq_literal(const std::vector<double>& p, const std::vector<double>& levels, double t) {
  double total = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = a + 1; b < p.size(); ++b) {
      const double gap = levels[a] - levels[b];
      if (gap == 0.0 || p[a] + p[b] == 0.0) continue;
      const double fab = 4.0 * t * t * p[a] * p[b] * gap * gap;
      total += fab / (2.0 * gap * gap * t * t) * std::log(2.0 / (p[a] + p[b]));
    }
  }
  return total;
}

inline double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

}  // namespace qfithermo::testing
