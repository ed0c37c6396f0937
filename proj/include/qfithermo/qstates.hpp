#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qfithermo/numkernel.hpp"

namespace qfithermo {

/// Qubit Pauli matrices in the computational basis (|0>, |1>) with
/// sigma_z |0> = +|0>.
struct Pauli {
  ComplexMatrix x;
  ComplexMatrix y;
  ComplexMatrix z;
};
Pauli pauli();

/// Symmetric (Dicke) sector of N qubits: spin J = N/2, basis |D_N^k>, k = 0..N,
/// with Jz |D_N^k> = (k - N/2) |D_N^k>.
struct SpinRep {
  int qubits;

  double total_spin() const { return 0.5 * qubits; }
  Eigen::Index dim() const { return qubits + 1; }
  RealVector jz_spectrum() const;
};

struct SpinOps {
  ComplexMatrix jx;
  ComplexMatrix jy;
  ComplexMatrix jz;
};
SpinOps spin_ops(int qubits);

/// Truncated single bosonic mode, Fock states |0> .. |nmax>.
struct FockOps {
  ComplexMatrix a;
  ComplexMatrix a_dag;
  ComplexMatrix number;
};
FockOps fock_ops(int nmax);

/// Gibbs state of omega a^dag a at temperature T (k_B = 1), truncated at nmax.
/// T = 0 gives the vacuum projector.
ComplexMatrix thermal_state(double omega, double temperature, int nmax);

enum class FamilyKind { product, squeezed, twin_fock, ghz_like };

std::string_view to_string(FamilyKind kind);
std::optional<FamilyKind> parse_family(std::string_view name);

/// A named family of symmetric states, described by its Dicke-level
/// distribution p_k = |c_k|^2.
///
/// - product:   binomial C(N,k)/2^N (all qubits in |+>).
/// - squeezed:  Gaussian in k centred on N/2 with width N^gamma / 2, i.e.
///              anti-squeezed along Jz.
/// - twin_fock: |D_N^{N/2}> rotated by pi/2 about Jy; N must be even.
/// - ghz_like:  exp(-k^2/2nu^2) + exp(-(N-k)^2/2nu^2); the GHZ state as nu -> 0.
struct DickeFamily {
  FamilyKind kind = FamilyKind::product;
  double gamma = 0.95;
  double nu = 2.0;
};

inline constexpr double kDefaultSqueezeExponent = 0.95;
inline constexpr double kDefaultGhzWidth = 2.0;

std::vector<double> family_distribution(const DickeFamily& family, int qubits);

/// Symmetric state sum_k c_k |D_N^k>; N is coefficients.size() - 1.
StateVector dicke_state(const ComplexVector& coefficients);

/// Real non-negative amplitudes c_k = sqrt(p_k).
StateVector dicke_state_from_distribution(std::span<const double> p);

}  // namespace qfithermo
