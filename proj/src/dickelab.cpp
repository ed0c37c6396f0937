#include "qfithermo/dickelab.hpp"

#include <cmath>
#include <string>

#include "qfithermo/metro.hpp"
#include "qfithermo/parallel.hpp"

namespace qfithermo {

SweepRecord sweep_point(const DickeFamily& family, int qubits) {
  const std::vector<double> p = family_distribution(family, qubits);
  const RealVector spectrum = SpinRep{qubits}.jz_spectrum();
  const std::span<const double> levels(spectrum.data(), static_cast<std::size_t>(spectrum.size()));

  double mean = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) mean += p[k] * levels[k];
  double variance = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) variance += p[k] * (levels[k] - mean) * (levels[k] - mean);

  SweepRecord r;
  r.family = family.kind;
  r.qubits = qubits;
  r.entropy_nats = shannon(p);
  r.weighted_fq_nats = weighted_fq(p, levels);
  r.fq_over_t2 = 4.0 * variance;
  r.sql_ratio = r.fq_over_t2 / qubits;
  return r;
}

std::vector<SweepRecord> sweep(const DickeFamily& family, std::span<const int> qubit_counts, unsigned threads) {
  if (qubit_counts.empty()) throw ValidationError("sweep: empty qubit list");
  for (int n : qubit_counts) {
    if (n < 1) throw ValidationError("sweep: qubit counts must be positive");
    if (family.kind == FamilyKind::twin_fock && n % 2 != 0) {
      throw ValidationError("sweep: twin_fock needs even qubit counts, got " + std::to_string(n));
    }
  }
  return parallel_map(qubit_counts.size(), threads,
                      [&](std::size_t i) { return sweep_point(family, qubit_counts[i]); });
}

LogFit fit_log(std::span<const double> qubits, std::span<const double> y) {
  if (qubits.size() != y.size()) throw ValidationError("fit_log: size mismatch");
  if (qubits.size() < 3) throw ValidationError("fit_log: need at least three points");
  const std::size_t n = qubits.size();
  Eigen::VectorXd x(n), v(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(qubits[i] > 0.0)) throw ValidationError("fit_log: N must be positive");
    x(i) = std::log(qubits[i]);
    v(i) = y[i];
  }
  const double x_mean = x.mean();
  const double y_mean = v.mean();
  const Eigen::VectorXd dx = x.array() - x_mean;
  const double sxx = dx.squaredNorm();
  // All N equal: the slope is undetermined.
  if (!(sxx > 1e-12 * n)) throw ValidationError("fit_log: degenerate design, all N equal");

  LogFit fit;
  fit.alpha = dx.dot((v.array() - y_mean).matrix()) / sxx;
  fit.beta = y_mean - fit.alpha * x_mean;
  const Eigen::VectorXd residual = v - (fit.alpha * x.array() + fit.beta).matrix();
  fit.rms_residual = std::sqrt(residual.squaredNorm() / static_cast<double>(n));
  return fit;
}

LogFit fit_log(std::span<const SweepRecord> records, FitTarget target) {
  std::vector<double> n, y;
  n.reserve(records.size());
  y.reserve(records.size());
  for (const SweepRecord& r : records) {
    n.push_back(r.qubits);
    y.push_back(target == FitTarget::entropy ? r.entropy_nats : r.weighted_fq_nats);
  }
  return fit_log(n, y);
}

double saturation_check(const DickeFamily& family, int n_low, int n_high) {
  if (family.kind != FamilyKind::ghz_like) {
    throw ValidationError("saturation_check: only the ghz_like family saturates");
  }
  if (!(n_low >= 1 && n_low < n_high)) throw ValidationError("saturation_check: need 1 <= N_low < N_high");
  return std::abs(shannon(family_distribution(family, n_high)) - shannon(family_distribution(family, n_low)));
}

}  // namespace qfithermo
