#pragma once

// Dense complex linear algebra used throughout the library. Everything here is
// templated on the real scalar type; the `double` aliases at the bottom are what
// the rest of the code base uses.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qfithermo/errors.hpp"

namespace qfithermo {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kTrace = 1e-10;
inline constexpr double kPositivity = 1e-10;
inline constexpr double kStateNorm = 1e-10;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kProbability = 1e-12;
inline constexpr double kDistributionSum = 1e-10;
/// Eigenvalues below this contribute nothing to an entropy.
inline constexpr double kEntropyClamp = 1e-14;
}  // namespace tol

// ---------------------------------------------------------------------------
// Elementary helpers

template <typename Derived>
auto dagger(const Eigen::MatrixBase<Derived>& a) {
  return a.adjoint().eval();
}

template <typename Real>
CMatrix<Real> kron(const CMatrix<Real>& a, const CMatrix<Real>& b) {
  CMatrix<Real> out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

template <typename Real>
CVector<Real> apply(const CMatrix<Real>& a, const CVector<Real>& v) {
  if (a.cols() != v.size()) {
    throw ValidationError("apply: operator has " + std::to_string(a.cols()) +
                          " columns but vector has dimension " + std::to_string(v.size()));
  }
  return a * v;
}

/// max_ij |A_ij - conj(A_ji)|; infinite for non-square input.
template <typename Real>
Real hermitian_deviation(const CMatrix<Real>& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<Real>::infinity();
  if (a.size() == 0) return Real(0);
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Real>
bool is_hermitian(const CMatrix<Real>& a, Real tolerance = Real(tol::kHermitian)) {
  return hermitian_deviation(a) < tolerance;
}

template <typename Real>
void require_hermitian(const CMatrix<Real>& a, const char* where) {
  if (a.rows() != a.cols()) {
    throw ValidationError(std::string(where) + ": matrix is not square");
  }
  const Real dev = hermitian_deviation(a);
  if (!(dev < Real(tol::kHermitian))) {
    throw ValidationError(std::string(where) + ": matrix is not Hermitian (deviation " +
                          std::to_string(static_cast<double>(dev)) + ")");
  }
}

template <typename Real>
Real unitarity_deviation(const CMatrix<Real>& u) {
  if (u.rows() != u.cols()) return std::numeric_limits<Real>::infinity();
  const CMatrix<Real> id = CMatrix<Real>::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - id).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition

template <typename Real>
struct HermEig {
  RVector<Real> values;    // ascending
  CMatrix<Real> vectors;   // orthonormal columns
};

/// Eigendecomposition of a Hermitian matrix. Eigenvalues come back ascending.
template <typename Real>
HermEig<Real> herm_eig(const CMatrix<Real>& a) {
  require_hermitian(a, "herm_eig");
  // Symmetrize so the solver only sees round-off-free Hermitian input.
  const CMatrix<Real> sym = (a + a.adjoint()) * Real(0.5);
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("herm_eig: eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

template <typename Real>
RVector<Real> herm_eigenvalues(const CMatrix<Real>& a) {
  require_hermitian(a, "herm_eigenvalues");
  const CMatrix<Real> sym = (a + a.adjoint()) * Real(0.5);
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("herm_eigenvalues: eigensolver did not converge");
  }
  return solver.eigenvalues();
}

/// Time evolution e^{-iHt} for a fixed Hermitian H, diagonalized once.
template <typename Real>
class Propagator {
 public:
  explicit Propagator(const CMatrix<Real>& hamiltonian) : eig_(herm_eig(hamiltonian)) {}
  explicit Propagator(HermEig<Real> eig) : eig_(std::move(eig)) {}

  CMatrix<Real> operator()(Real t) const {
    const auto& v = eig_.vectors;
    CVector<Real> phases(eig_.values.size());
    for (Eigen::Index k = 0; k < phases.size(); ++k) {
      phases(k) = std::polar(Real(1), -eig_.values(k) * t);
    }
    return v * phases.asDiagonal() * v.adjoint();
  }

  const HermEig<Real>& eig() const { return eig_; }
  Eigen::Index dim() const { return eig_.values.size(); }

 private:
  HermEig<Real> eig_;
};

template <typename Real>
CMatrix<Real> unitary_from(const CMatrix<Real>& h, Real t) {
  return Propagator<Real>(h)(t);
}

// ---------------------------------------------------------------------------
// States and density matrices

/// Normalized ket.
template <typename Real>
class BasicStateVector {
 public:
  /// Accepts amplitudes whose squared norm is within 1e-10 of one; the stored
  /// copy is renormalized so the norm is exact to round-off.
  explicit BasicStateVector(CVector<Real> amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) throw ValidationError("StateVector: empty amplitude list");
    const Real n2 = amps_.squaredNorm();
    if (!(std::abs(n2 - Real(1)) <= Real(tol::kStateNorm))) {
      throw ValidationError("StateVector: squared norm " + std::to_string(static_cast<double>(n2)) +
                            " is not 1");
    }
    amps_ /= std::sqrt(n2);
  }

  static BasicStateVector normalized(CVector<Real> v) {
    const Real n = v.norm();
    if (!(n > Real(0)) || !std::isfinite(static_cast<double>(n))) {
      throw ValidationError("StateVector: cannot normalize a zero or non-finite vector");
    }
    v /= n;
    return BasicStateVector(std::move(v));
  }

  const CVector<Real>& amplitudes() const { return amps_; }
  Eigen::Index dim() const { return amps_.size(); }
  const std::complex<Real>& operator[](Eigen::Index i) const { return amps_(i); }

  CMatrix<Real> projector() const { return amps_ * amps_.adjoint(); }

 private:
  CVector<Real> amps_;
};

template <typename Real>
bool is_density(const CMatrix<Real>& rho) {
  if (rho.rows() != rho.cols() || rho.size() == 0) return false;
  if (!is_hermitian(rho)) return false;
  if (std::abs(rho.trace() - std::complex<Real>(1)) > Real(tol::kTrace)) return false;
  return herm_eigenvalues(rho).minCoeff() >= -Real(tol::kPositivity);
}

template <typename Real>
void require_density(const CMatrix<Real>& rho, const char* where) {
  require_hermitian(rho, where);
  if (rho.size() == 0) throw ValidationError(std::string(where) + ": empty density matrix");
  const std::complex<Real> tr = rho.trace();
  if (std::abs(tr - std::complex<Real>(1)) > Real(tol::kTrace)) {
    throw ValidationError(std::string(where) + ": trace " + std::to_string(static_cast<double>(tr.real())) +
                          " is not 1");
  }
  if (herm_eigenvalues(rho).minCoeff() < -Real(tol::kPositivity)) {
    throw ValidationError(std::string(where) + ": matrix has a negative eigenvalue");
  }
}

template <typename Real>
Real purity(const CMatrix<Real>& rho) {
  return (rho * rho).trace().real();
}

/// Reduced density matrix on the subsystems listed in `keep` (any order; the
/// result follows the original subsystem ordering).
template <typename Real>
CMatrix<Real> partial_trace(const CMatrix<Real>& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  const std::size_t total =
      std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
  if (dims.empty() || rho.rows() != rho.cols() || static_cast<std::size_t>(rho.rows()) != total) {
    throw ValidationError("partial_trace: subsystem dimensions do not match the matrix");
  }
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size()) throw ValidationError("partial_trace: keep index out of range");
    kept[k] = true;
  }

  // Split every full index into (kept part, traced part), both row-major.
  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
  for (std::size_t s = 0; s < dims.size(); ++s) (kept[s] ? kept_dim : traced_dim) *= dims[s];
  std::vector<std::size_t> full_index(kept_dim * traced_dim);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rem = i;
    std::size_t stride = total;
    std::size_t ki = 0;
    std::size_t ti = 0;
    for (std::size_t s = 0; s < dims.size(); ++s) {
      stride /= dims[s];
      const std::size_t digit = rem / stride;
      rem %= stride;
      if (kept[s]) {
        ki = ki * dims[s] + digit;
      } else {
        ti = ti * dims[s] + digit;
      }
    }
    full_index[ki * traced_dim + ti] = i;
  }

  CMatrix<Real> out = CMatrix<Real>::Zero(kept_dim, kept_dim);
  for (std::size_t r = 0; r < kept_dim; ++r) {
    for (std::size_t c = 0; c < kept_dim; ++c) {
      std::complex<Real> acc(0);
      for (std::size_t e = 0; e < traced_dim; ++e) {
        acc += rho(full_index[r * traced_dim + e], full_index[c * traced_dim + e]);
      }
      out(r, c) = acc;
    }
  }
  return out;
}

template <typename Real>
CMatrix<Real> partial_trace(const CMatrix<Real>& rho, std::initializer_list<std::size_t> dims,
                            std::initializer_list<std::size_t> keep) {
  return partial_trace(rho, std::span<const std::size_t>(dims.begin(), dims.size()),
                       std::span<const std::size_t>(keep.begin(), keep.size()));
}

// ---------------------------------------------------------------------------
// Entropies and distances (natural logarithm throughout)

template <typename Real>
Real entropy_of_spectrum(const RVector<Real>& eigenvalues) {
  Real s(0);
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    const Real p = eigenvalues(k);
    if (p > Real(tol::kEntropyClamp)) s -= p * std::log(p);
  }
  return s;
}

template <typename Real>
Real vn_entropy(const CMatrix<Real>& rho) {
  require_density(rho, "vn_entropy");
  return entropy_of_spectrum<Real>(herm_eigenvalues(rho));
}

/// Shannon entropy of a probability list; 0 log 0 = 0.
template <typename Real>
Real shannon(std::span<const Real> p) {
  if (p.empty()) throw ValidationError("shannon: empty distribution");
  Real sum(0);
  for (Real x : p) {
    if (!(x >= -Real(tol::kProbability))) {
      throw ValidationError("shannon: negative or non-finite probability");
    }
    sum += x;
  }
  if (!(std::abs(sum - Real(1)) <= Real(tol::kDistributionSum))) {
    throw ValidationError("shannon: probabilities sum to " + std::to_string(static_cast<double>(sum)));
  }
  Real s(0);
  for (Real x : p) {
    if (x > Real(0)) s -= x * std::log(x);
  }
  return s;
}

template <typename Real>
Real shannon(const std::vector<Real>& p) {
  return shannon(std::span<const Real>(p));
}

template <typename Real>
Real trace_distance(const CMatrix<Real>& rho, const CMatrix<Real>& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw ValidationError("trace_distance: dimension mismatch");
  }
  require_density(rho, "trace_distance");
  require_density(sigma, "trace_distance");
  return Real(0.5) * herm_eigenvalues<Real>(rho - sigma).cwiseAbs().sum();
}

// ---------------------------------------------------------------------------

using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;
using RealVector = RVector<double>;
using StateVector = BasicStateVector<double>;
using Eig = HermEig<double>;

}  // namespace qfithermo
