#pragma once

// Entropy and QFI scaling of symmetric N-qubit probes interrogated by Jz.
//
// In the Dicke basis Jz is non-degenerate, so the lambda-averaged state is
// diag(p_k) and its entropy is the Shannon entropy of the family distribution.

#include <span>
#include <vector>

#include "qfithermo/qstates.hpp"

namespace qfithermo {

struct SweepRecord {
  FamilyKind family = FamilyKind::product;
  int qubits = 0;
  double entropy_nats = 0.0;      // S(rho_s)
  double weighted_fq_nats = 0.0;  // pair-weighted QFI
  double fq_over_t2 = 0.0;        // 4 Var(Jz)
  double sql_ratio = 0.0;         // fq_over_t2 / N
};

SweepRecord sweep_point(const DickeFamily& family, int qubits);

/// One record per entry of qubit_counts, in input order.
std::vector<SweepRecord> sweep(const DickeFamily& family, std::span<const int> qubit_counts,
                               unsigned threads = 1);

/// y = alpha log N + beta.
struct LogFit {
  double alpha = 0.0;
  double beta = 0.0;
  double rms_residual = 0.0;
};

/// Ordinary least squares of y against log N. Needs at least three points and
/// at least two distinct N.
LogFit fit_log(std::span<const double> qubits, std::span<const double> y);

enum class FitTarget { entropy, weighted_fq };

LogFit fit_log(std::span<const SweepRecord> records, FitTarget target = FitTarget::entropy);

/// Smallest N used for scaling fits; smaller systems are still transient.
inline constexpr int kFitMinQubits = 8;

/// |S(N_high) - S(N_low)| for the GHZ-like family.
double saturation_check(const DickeFamily& family, int n_low, int n_high);

}  // namespace qfithermo
