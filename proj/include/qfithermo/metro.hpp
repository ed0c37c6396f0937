#pragma once

// Quantum Fisher information of pure probes, the lambda-averaged ensemble
// state, and the entropy / heat floors that follow from them.
//
// Conventions: k_B = hbar = 1, entropies in nats, and the probe is encoded as
// |psi_lambda> = exp(-i lambda h t) |psi>. The local generator is then h t and
// its seminorm is t * ||h||.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "qfithermo/numkernel.hpp"

namespace qfithermo {

/// Spectral spread lambda_max - lambda_min of a Hermitian operator.
double seminorm(const ComplexMatrix& a);

/// Interrogation generator h together with the interrogation time t.
/// The eigendecomposition of h is computed once, at construction.
class Generator {
 public:
  Generator(ComplexMatrix h, double t);

  /// Diagonal generator with the given spectrum.
  static Generator diagonal(std::span<const double> spectrum, double t);

  const ComplexMatrix& h() const { return h_; }
  double time() const { return t_; }
  const Eig& eig() const { return eig_; }
  double seminorm() const { return seminorm_; }
  Eigen::Index dim() const { return h_.rows(); }

  /// h_lambda = h t.
  ComplexMatrix local() const { return h_ * t_; }
  double local_seminorm() const { return seminorm_ * t_; }

  /// (h / ||h||, t ||h||): same QFI and bounds, unit-seminorm generator.
  Generator normalized() const;

  /// Eigenvector column indices grouped by (numerically) equal eigenvalue.
  const std::vector<std::vector<Eigen::Index>>& eigenspaces() const { return spaces_; }

 private:
  ComplexMatrix h_;
  double t_;
  Eig eig_;
  double seminorm_;
  std::vector<std::vector<Eigen::Index>> spaces_;
};

/// F_Q = 4 t^2 Var_psi(h).
double qfi_pure(const StateVector& psi, const Generator& g);

/// i U(l0)^dag (U(l0+eps) - U(l0-eps)) / (2 eps), Hermitian part.
ComplexMatrix local_generator_fd(const std::function<ComplexMatrix(double)>& unitary, double lambda0,
                                 double eps);

/// rho_s: the uniform lambda-average of U rho U^dag, i.e. the projection of rho
/// onto the eigenspaces of h.
ComplexMatrix rho_s_dephase(const ComplexMatrix& rho, const Generator& g);

/// Literal average over `samples` encoded states with lambda_j t = 2 pi j / samples.
/// Needs an integer-spaced spectrum; coincides with rho_s_dephase once
/// samples exceeds the spectral spread.
ComplexMatrix rho_s_grid_average(const StateVector& psi, const Generator& g, int samples);

/// Shannon entropy of the outcome record when rho_s is measured in `basis`
/// (columns are the measurement vectors).
double measurement_record_entropy(const ComplexMatrix& rho_s, const ComplexMatrix& basis);

struct LevelPair {
  std::size_t a;
  std::size_t b;
  double fq;  // 4 t^2 p_a p_b (e_a - e_b)^2
};

/// Per-pair QFI contributions over all index pairs a < b; they sum to F_Q.
std::vector<LevelPair> fq_pairwise(std::span<const double> p, std::span<const double> eigenvalues,
                                   double t);

/// sum_{a<b} 2 p_a p_b log(2 / (p_a + p_b)) over non-degenerate pairs, in nats.
/// Lower-bounds the ensemble entropy Shannon(p) for a non-degenerate spectrum.
double weighted_fq(std::span<const double> p, std::span<const double> eigenvalues);

// Heat floors ---------------------------------------------------------------

/// log(2) kT F_Q / ||h_lambda||^2 for an optimal measurement.
double heat_bound_local(double fq, double local_seminorm, double kbt);

/// log(2) kT F_Q / t^2, the lambda-averaged floor for a unit-seminorm h.
double heat_bound_average(double fq, double t, double kbt);

struct ErasureBound {
  double heat_floor;  // log(2) kT F_Q / t^2 - kT S(rho)
  double deficit;     // log(2) F_Q / t^2 - S(rho)
};

/// Minimum heat for mapping every psi_lambda onto one state of entropy
/// `entropy_final`. A negative floor is vacuous.
ErasureBound heat_bound_erasure(double fq, double t, double kbt, double entropy_final);

/// Low-temperature correction applied to the information deficit.
using HeatCorrection = std::function<double(double deficit, double kbt)>;

/// kT * deficit by default. A supplied correction must never undercut that.
double corrected_heat_floor(double deficit, double kbt, const HeatCorrection& correction = {});

/// Smallest admissible estimator variance after dissipating `heat`.
double precision_floor(double t, double kbt, double heat);

/// Quantum Cramer-Rao bound 1 / F_Q.
double crb(double fq);

struct BoundReport {
  double fq = 0.0;
  double fq_over_t2 = 0.0;
  double seminorm = 0.0;
  double entropy_rho_s = 0.0;
  double entropy_final = 0.0;
  double entropy_floor = 0.0;  // log(2) F_Q / (t ||h||)^2
  double deficit = 0.0;
  double heat_floor = 0.0;
  double kbt = 0.0;
};

/// Ensemble entropy of psi under g next to the QFI floor it must exceed, plus
/// the erasure heat floor for a final state of entropy `entropy_final`.
/// Throws NumericalError if S(rho_s) falls below the floor.
BoundReport ensemble_entropy_report(const StateVector& psi, const Generator& g, double kbt = 1.0,
                                    double entropy_final = 0.0);

}  // namespace qfithermo
