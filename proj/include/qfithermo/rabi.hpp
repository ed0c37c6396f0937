#pragma once

// QFI erasure of a qubit probe through a single thermal bosonic mode under the
// quantum Rabi Hamiltonian
//
//   H = (Omega/2) sigma_z (x) 1 + omega 1 (x) a^dag a - g sigma_x (x) (a + a^dag),
//
// with the probe first (tensor order qubit (x) mode). The probe starts in
// c0|0> + c1 e^{-i phi}|1>, phi = lambda * t_enc, and sigma_z|0> = +|0>, so the
// probe relaxes towards |1> while dumping its energy into the mode.

#include <functional>
#include <span>
#include <vector>

#include "qfithermo/numkernel.hpp"

namespace qfithermo {

struct RabiConfig {
  double qubit_splitting = 1.0;  // Omega
  double mode_frequency = 1.0;   // omega
  double coupling = 0.05;        // g
  double temperature = 0.3;      // kT of the mode's initial Gibbs state
  int nmax = 20;                 // Fock cutoff
  double encoding_time = 1.0;    // t entering F_Q
  double c0 = 0.70710678118654752;
  int lambda_samples = 16;       // uniform phase grid over [0, 2 pi)
  double erasure_time = 30.8;    // tau

  /// Throws ValidationError on the first out-of-range field.
  void validate() const;
  double kbt() const { return temperature; }
};

/// Top-Fock population above this at any checkpoint aborts a run.
inline constexpr double kTruncationGuard = 1e-6;

ComplexMatrix build_hamiltonian(const RabiConfig& cfg);

/// One encoded phase, propagated for cfg.erasure_time.
struct RabiSingleRun {
  double phase = 0.0;
  ComplexMatrix probe_final;  // rho_S(tau)
  ComplexMatrix mode_final;   // rho_E(tau)
  double heat = 0.0;          // omega tr[a^dag a (rho_E(tau) - rho_E(0))]
  double probe_entropy = 0.0;
  double probe_energy_change = 0.0;
  double interaction_energy_change = 0.0;
  double total_energy_drift = 0.0;  // <H>(tau) - <H>(0)
  double purity_drift = 0.0;        // tr rho(tau)^2 - tr rho(0)^2
  double max_cutoff_population = 0.0;
};

RabiSingleRun run_single(const RabiConfig& cfg, double phase);

struct RabiOutcome {
  double c0 = 0.0;
  double fq_over_t2 = 0.0;
  double heat_avg = 0.0;
  double entropy_final_avg = 0.0;  // mean of S(rho_S(tau)) over the phase grid
  double entropy_of_avg = 0.0;     // S of the phase-averaged rho_S(tau)
  double bound_floor = 0.0;        // kT (log 2 F_Q / t^2 - entropy_of_avg)
  double erasure_quality = 0.0;
  double kbt = 0.0;

  /// heat_avg >= bound_floor, up to kT * erasure_quality for imperfect erasure.
  double audit_margin() const { return heat_avg - bound_floor + kbt * erasure_quality; }
  bool audit_passed() const { return audit_margin() >= 0.0; }
};

/// Phase-averaged runs for every c0, sorted by fq_over_t2.
std::vector<RabiOutcome> run_erasure_sweep(const RabiConfig& cfg, std::span<const double> c0_list,
                                          unsigned threads = 1);

/// Largest trace distance between final probe states over the phase grid.
double erasure_quality(const RabiConfig& cfg, double tau);

struct ScanPoint {
  double tau;
  double quality;
};

struct ErasureScan {
  double tau_star = 0.0;
  double quality = 0.0;
  std::vector<ScanPoint> points;
};

/// Grid argmin of `quality` over steps points in [tau_min, tau_max]. A later
/// point only wins if it improves by more than 1e-12, so ties go to the
/// smallest tau.
ErasureScan scan_minimum(const std::function<double(double)>& quality, double tau_min, double tau_max,
                         int steps, unsigned threads = 1);

ErasureScan find_erasure_time(const RabiConfig& cfg, double tau_min, double tau_max, int steps,
                              unsigned threads = 1);

}  // namespace qfithermo
