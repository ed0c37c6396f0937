#include "qfithermo/rabi.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qfithermo/metro.hpp"
#include "qfithermo/parallel.hpp"
#include "qfithermo/qstates.hpp"

namespace qfithermo {

namespace {

constexpr std::array<std::size_t, 1> kKeepProbe{0};
constexpr std::array<std::size_t, 1> kKeepMode{1};
constexpr double kTieBreak = 1e-12;

void require_positive(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw ValidationError(std::string("RabiConfig: ") + name + " must be positive");
  }
}

// Operators shared by every run of one configuration.
struct RabiModel {
  explicit RabiModel(const RabiConfig& c) : cfg(c) {
    cfg.validate();
    const Pauli s = pauli();
    const FockOps f = fock_ops(cfg.nmax);
    const ComplexMatrix id_q = ComplexMatrix::Identity(2, 2);
    const ComplexMatrix id_m = ComplexMatrix::Identity(f.a.rows(), f.a.cols());
    h_probe = kron<double>(0.5 * cfg.qubit_splitting * s.z, id_m);
    h_mode = kron<double>(id_q, cfg.mode_frequency * f.number);
    h_int = kron<double>(-cfg.coupling * s.x, f.a + f.a_dag);
    hamiltonian = h_probe + h_mode + h_int;
    mode_energy = cfg.mode_frequency * f.number;
    mode_initial = thermal_state(cfg.mode_frequency, cfg.temperature, cfg.nmax);
    dims = {2, static_cast<std::size_t>(cfg.nmax + 1)};
  }

  ComplexMatrix probe_state(double c0, double phase) const {
    ComplexVector psi(2);
    psi << c0, std::sqrt(std::max(0.0, 1.0 - c0 * c0)) * std::polar(1.0, -phase);
    return psi * psi.adjoint();
  }

  RabiConfig cfg;
  ComplexMatrix h_probe, h_mode, h_int, hamiltonian, mode_energy, mode_initial;
  std::array<std::size_t, 2> dims{};
};

double expectation(const ComplexMatrix& op, const ComplexMatrix& rho) {
  return (op * rho).trace().real();
}

double phase_of(int j, int samples) {
  return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(samples);
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  return 0.5 * (a + a.adjoint());
}

// Reduced probe map rho_q -> tr_E[U (rho_q (x) rho_E) U^dag] on the matrix units.
struct ProbeChannel {
  std::array<ComplexMatrix, 4> images;  // |i><j| -> images[2i + j]

  ComplexMatrix apply(const ComplexMatrix& rho_q) const {
    ComplexMatrix out = ComplexMatrix::Zero(2, 2);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) out += rho_q(i, j) * images[2 * i + j];
    }
    return hermitian_part(out);
  }
};

ProbeChannel probe_channel(const RabiModel& model, const ComplexMatrix& u) {
  ProbeChannel ch;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      ComplexMatrix unit = ComplexMatrix::Zero(2, 2);
      unit(i, j) = 1.0;
      const ComplexMatrix evolved = u * kron<double>(unit, model.mode_initial) * u.adjoint();
      ch.images[2 * i + j] = partial_trace<double>(evolved, model.dims, kKeepProbe);
    }
  }
  return ch;
}

double max_pairwise_distance(const std::vector<ComplexMatrix>& states) {
  double worst = 0.0;
  for (std::size_t a = 0; a < states.size(); ++a) {
    for (std::size_t b = a + 1; b < states.size(); ++b) {
      worst = std::max(worst, trace_distance(states[a], states[b]));
    }
  }
  return std::min(worst, 1.0);
}

double quality_at(const RabiModel& model, const Propagator<double>& prop, double tau) {
  const ProbeChannel ch = probe_channel(model, prop(tau));
  std::vector<ComplexMatrix> finals;
  finals.reserve(static_cast<std::size_t>(model.cfg.lambda_samples));
  for (int j = 0; j < model.cfg.lambda_samples; ++j) {
    finals.push_back(ch.apply(model.probe_state(model.cfg.c0, phase_of(j, model.cfg.lambda_samples))));
  }
  return max_pairwise_distance(finals);
}

RabiSingleRun simulate(const RabiModel& model, const Propagator<double>& prop, double c0, double phase) {
  const RabiConfig& cfg = model.cfg;
  const ComplexMatrix rho0 = kron<double>(model.probe_state(c0, phase), model.mode_initial);
  const Eigen::Index top = cfg.nmax;

  RabiSingleRun run;
  run.phase = phase;
  // Truncation guard at evenly spaced checkpoints, the final one included.
  constexpr int kCheckpoints = 4;
  ComplexMatrix rho_final;
  for (int c = 0; c <= kCheckpoints; ++c) {
    const double t = cfg.erasure_time * static_cast<double>(c) / kCheckpoints;
    const ComplexMatrix u = prop(t);
    const ComplexMatrix rho = hermitian_part(u * rho0 * u.adjoint());
    const ComplexMatrix mode = partial_trace<double>(rho, model.dims, kKeepMode);
    run.max_cutoff_population = std::max(run.max_cutoff_population, mode(top, top).real());
    if (c == kCheckpoints) rho_final = rho;
  }
  if (run.max_cutoff_population > kTruncationGuard) {
    throw TruncationError("run_single: Fock cutoff population " + std::to_string(run.max_cutoff_population) +
                          " exceeds guard; raise nmax");
  }

  run.probe_final = partial_trace<double>(rho_final, model.dims, kKeepProbe);
  run.mode_final = partial_trace<double>(rho_final, model.dims, kKeepMode);
  run.heat = expectation(model.mode_energy, run.mode_final) - expectation(model.mode_energy, model.mode_initial);
  run.probe_entropy = vn_entropy(run.probe_final);
  run.probe_energy_change = expectation(model.h_probe, rho_final) - expectation(model.h_probe, rho0);
  run.interaction_energy_change = expectation(model.h_int, rho_final) - expectation(model.h_int, rho0);
  run.total_energy_drift = expectation(model.hamiltonian, rho_final) - expectation(model.hamiltonian, rho0);
  run.purity_drift = purity(rho_final) - purity(rho0);
  return run;
}

}  // namespace

void RabiConfig::validate() const {
  require_positive(qubit_splitting, "qubit_splitting");
  require_positive(mode_frequency, "mode_frequency");
  if (!(coupling >= 0.0) || !std::isfinite(coupling)) throw ValidationError("RabiConfig: coupling must be non-negative");
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw ValidationError("RabiConfig: temperature must be finite and non-negative");
  }
  if (nmax < 10) throw ValidationError("RabiConfig: nmax must be at least 10");
  require_positive(encoding_time, "encoding_time");
  if (!(c0 >= 0.0 && c0 <= 1.0)) throw ValidationError("RabiConfig: c0 must lie in [0, 1]");
  if (lambda_samples < 2) throw ValidationError("RabiConfig: lambda_samples must be at least 2");
  if (!(erasure_time >= 0.0) || !std::isfinite(erasure_time)) {
    throw ValidationError("RabiConfig: erasure_time must be finite and non-negative");
  }
}

ComplexMatrix build_hamiltonian(const RabiConfig& cfg) {
  return RabiModel(cfg).hamiltonian;
}

RabiSingleRun run_single(const RabiConfig& cfg, double phase) {
  if (!(phase >= 0.0 && phase < 2.0 * std::numbers::pi)) {
    throw ValidationError("run_single: phase must lie in [0, 2 pi)");
  }
  const RabiModel model(cfg);
  const Propagator<double> prop(model.hamiltonian);
  return simulate(model, prop, cfg.c0, phase);
}

std::vector<RabiOutcome> run_erasure_sweep(const RabiConfig& cfg, std::span<const double> c0_list, unsigned threads) {
  const RabiModel model(cfg);
  for (double c0 : c0_list) {
    if (!(c0 >= 0.0 && c0 <= 1.0)) throw ValidationError("run_erasure_sweep: every c0 must lie in [0, 1]");
  }
  const Propagator<double> prop(model.hamiltonian);
  const std::size_t samples = static_cast<std::size_t>(cfg.lambda_samples);
  const Pauli s = pauli();
  const Generator encoding(0.5 * s.z, cfg.encoding_time);

  const auto runs = parallel_map(c0_list.size() * samples, threads, [&](std::size_t idx) {
    const std::size_t j = idx % samples;
    return simulate(model, prop, c0_list[idx / samples], phase_of(static_cast<int>(j), cfg.lambda_samples));
  });

  std::vector<RabiOutcome> out;
  out.reserve(c0_list.size());
  for (std::size_t c = 0; c < c0_list.size(); ++c) {
    std::vector<double> heats, entropies;
    std::vector<ComplexMatrix> finals;
    for (std::size_t j = 0; j < samples; ++j) {
      const RabiSingleRun& r = runs[c * samples + j];
      heats.push_back(r.heat);
      entropies.push_back(r.probe_entropy);
      finals.push_back(r.probe_final);
    }
    const double m = static_cast<double>(samples);
    RabiOutcome o;
    o.c0 = c0_list[c];
    o.kbt = cfg.kbt();
    ComplexVector amps(2);
    amps << o.c0, std::sqrt(std::max(0.0, 1.0 - o.c0 * o.c0));
    o.fq_over_t2 = qfi_pure(StateVector::normalized(amps), encoding) /
                   (cfg.encoding_time * cfg.encoding_time);
    o.heat_avg = pairwise_sum(heats) / m;
    o.entropy_final_avg = pairwise_sum(entropies) / m;
    o.entropy_of_avg = vn_entropy(hermitian_part(pairwise_sum(finals) / m));
    o.bound_floor = o.kbt * (std::numbers::ln2 * o.fq_over_t2 - o.entropy_of_avg);
    o.erasure_quality = max_pairwise_distance(finals);
    out.push_back(o);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RabiOutcome& a, const RabiOutcome& b) { return a.fq_over_t2 < b.fq_over_t2; });
  return out;
}

double erasure_quality(const RabiConfig& cfg, double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw ValidationError("erasure_quality: tau must be non-negative");
  const RabiModel model(cfg);
  return quality_at(model, Propagator<double>(model.hamiltonian), tau);
}

ErasureScan scan_minimum(const std::function<double(double)>& quality, double tau_min, double tau_max, int steps,
                         unsigned threads) {
  if (!(tau_min < tau_max) || !std::isfinite(tau_min) || !std::isfinite(tau_max)) {
    throw ValidationError("scan_minimum: need tau_min < tau_max");
  }
  if (steps < 2) throw ValidationError("scan_minimum: need at least two steps");
  const double step = (tau_max - tau_min) / (steps - 1);
  ErasureScan scan;
  scan.points = parallel_map(static_cast<std::size_t>(steps), threads, [&](std::size_t i) {
    const double tau = i + 1 == static_cast<std::size_t>(steps) ? tau_max : tau_min + step * static_cast<double>(i);
    return ScanPoint{tau, quality(tau)};
  });
  scan.tau_star = scan.points.front().tau;
  scan.quality = scan.points.front().quality;
  for (const ScanPoint& p : scan.points) {
    if (p.quality < scan.quality - kTieBreak) {
      scan.tau_star = p.tau;
      scan.quality = p.quality;
    }
  }
  return scan;
}

ErasureScan find_erasure_time(const RabiConfig& cfg, double tau_min, double tau_max, int steps, unsigned threads) {
  if (!(tau_min >= 0.0)) throw ValidationError("find_erasure_time: tau_min must be non-negative");
  const RabiModel model(cfg);
  const Propagator<double> prop(model.hamiltonian);
  return scan_minimum([&](double tau) { return quality_at(model, prop, tau); }, tau_min, tau_max, steps, threads);
}

}  // namespace qfithermo
