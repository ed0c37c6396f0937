#include "qfithermo/metro.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qfithermo/parallel.hpp"

namespace qfithermo {

namespace {

// Eigenvalues closer than this fraction of the spread are one eigenspace.
constexpr double kDegeneracyGap = 1e-9;
constexpr double kIntegerSpacing = 1e-9;
constexpr double kFdUnitarity = 1e-8;
constexpr double kEntropyFloorSlack = 1e-10;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw ValidationError(std::string(what) + " must be finite");
}

void require_fq(double fq, const char* where) {
  if (!std::isfinite(fq) || fq < -tol::kProbability) {
    throw ValidationError(std::string(where) + ": QFI must be finite and non-negative");
  }
}

void require_kbt(double kbt, const char* where) {
  if (!std::isfinite(kbt) || kbt < 0.0) {
    throw ValidationError(std::string(where) + ": kT must be finite and non-negative");
  }
}

void require_distribution(std::span<const double> p, std::span<const double> eigenvalues,
                          const char* where) {
  if (p.size() != eigenvalues.size()) {
    throw ValidationError(std::string(where) + ": " + std::to_string(p.size()) +
                          " probabilities but " + std::to_string(eigenvalues.size()) + " eigenvalues");
  }
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= -tol::kProbability)) throw ValidationError(std::string(where) + ": negative probability");
    sum += x;
  }
  if (!(std::abs(sum - 1.0) <= tol::kDistributionSum)) {
    throw ValidationError(std::string(where) + ": probabilities do not sum to 1");
  }
  for (double e : eigenvalues) require_finite(e, "eigenvalue");
}

double degeneracy_threshold(std::span<const double> eigenvalues) {
  if (eigenvalues.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(eigenvalues.begin(), eigenvalues.end());
  return kDegeneracyGap * (*hi - *lo);
}

}  // namespace

double seminorm(const ComplexMatrix& a) {
  const RealVector ev = herm_eigenvalues(a);
  return ev(ev.size() - 1) - ev(0);
}

Generator::Generator(ComplexMatrix h, double t) : h_(std::move(h)), t_(t) {
  if (!std::isfinite(t_) || t_ <= 0.0) throw ValidationError("Generator: interrogation time must be positive");
  if (h_.size() == 0) throw ValidationError("Generator: empty operator");
  eig_ = herm_eig(h_);
  const RealVector& ev = eig_.values;
  seminorm_ = ev(ev.size() - 1) - ev(0);

  const double gap = kDegeneracyGap * seminorm_;
  spaces_.push_back({0});
  for (Eigen::Index k = 1; k < ev.size(); ++k) {
    if (ev(k) - ev(k - 1) > gap) spaces_.emplace_back();
    spaces_.back().push_back(k);
  }
}

Generator Generator::diagonal(std::span<const double> spectrum, double t) {
  ComplexMatrix h = ComplexMatrix::Zero(spectrum.size(), spectrum.size());
  for (std::size_t k = 0; k < spectrum.size(); ++k) {
    require_finite(spectrum[k], "Generator: eigenvalue");
    h(k, k) = spectrum[k];
  }
  return Generator(std::move(h), t);
}

Generator Generator::normalized() const {
  if (!(seminorm_ > 0.0)) throw ValidationError("Generator: cannot normalize a generator with zero seminorm");
  return Generator(h_ / seminorm_, t_ * seminorm_);
}

double qfi_pure(const StateVector& psi, const Generator& g) {
  if (psi.dim() != g.dim()) {
    throw ValidationError("qfi_pure: state dimension " + std::to_string(psi.dim()) +
                          " does not match generator dimension " + std::to_string(g.dim()));
  }
  const ComplexVector& v = psi.amplitudes();
  const ComplexVector hv = g.h() * v;
  const double mean = v.dot(hv).real();
  // ||(h - <h>) psi||^2 is the variance and cannot go negative.
  const double variance = (hv - mean * v).squaredNorm();
  const double t = g.time();
  return 4.0 * t * t * variance;
}

ComplexMatrix local_generator_fd(const std::function<ComplexMatrix(double)>& unitary, double lambda0,
                                 double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw ValidationError("local_generator_fd: eps must be positive");
  require_finite(lambda0, "local_generator_fd: lambda0");
  const ComplexMatrix u0 = unitary(lambda0);
  const ComplexMatrix up = unitary(lambda0 + eps);
  const ComplexMatrix um = unitary(lambda0 - eps);
  for (const ComplexMatrix* u : {&u0, &up, &um}) {
    if (!(unitarity_deviation(*u) < kFdUnitarity)) {
      throw ValidationError("local_generator_fd: sampled operator is not unitary");
    }
  }
  if (up.rows() != u0.rows() || um.rows() != u0.rows()) {
    throw ValidationError("local_generator_fd: sampled operators change dimension");
  }
  const std::complex<double> i(0.0, 1.0);
  const ComplexMatrix raw = i * u0.adjoint() * (up - um) / (2.0 * eps);
  return 0.5 * (raw + raw.adjoint());
}

ComplexMatrix rho_s_dephase(const ComplexMatrix& rho, const Generator& g) {
  if (rho.rows() != g.dim() || rho.cols() != g.dim()) {
    throw ValidationError("rho_s_dephase: density matrix and generator dimensions differ");
  }
  require_density(rho, "rho_s_dephase");
  const ComplexMatrix& v = g.eig().vectors;
  const ComplexMatrix in_eigenbasis = v.adjoint() * rho * v;

  std::vector<std::size_t> space_of(static_cast<std::size_t>(g.dim()));
  for (std::size_t s = 0; s < g.eigenspaces().size(); ++s) {
    for (Eigen::Index k : g.eigenspaces()[s]) space_of[static_cast<std::size_t>(k)] = s;
  }
  ComplexMatrix blocks = ComplexMatrix::Zero(g.dim(), g.dim());
  for (Eigen::Index r = 0; r < g.dim(); ++r) {
    for (Eigen::Index c = 0; c < g.dim(); ++c) {
      if (space_of[r] == space_of[c]) blocks(r, c) = in_eigenbasis(r, c);
    }
  }
  ComplexMatrix out = v * blocks * v.adjoint();
  return 0.5 * (out + out.adjoint());
}

ComplexMatrix rho_s_grid_average(const StateVector& psi, const Generator& g, int samples) {
  if (samples < 1) throw ValidationError("rho_s_grid_average: need at least one sample");
  if (psi.dim() != g.dim()) throw ValidationError("rho_s_grid_average: state and generator dimensions differ");
  const RealVector& ev = g.eig().values;
  const double tolerance = kIntegerSpacing * std::max(1.0, g.seminorm());
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    const double offset = ev(k) - ev(0);
    if (std::abs(offset - std::round(offset)) > tolerance) {
      throw ValidationError("rho_s_grid_average: generator spectrum is not integer-spaced");
    }
  }

  const ComplexMatrix& v = g.eig().vectors;
  const ComplexVector coeffs = v.adjoint() * psi.amplitudes();
  const auto states = parallel_map(static_cast<std::size_t>(samples), 1, [&](std::size_t j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / samples;
    ComplexVector c = coeffs;
    for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::polar(1.0, -ev(k) * angle);
    const ComplexVector evolved = v * c;
    return ComplexMatrix(evolved * evolved.adjoint());
  });
  ComplexMatrix avg = pairwise_sum(states) / static_cast<double>(samples);
  return 0.5 * (avg + avg.adjoint());
}

double measurement_record_entropy(const ComplexMatrix& rho_s, const ComplexMatrix& basis) {
  if (basis.rows() != rho_s.rows() || basis.cols() != rho_s.cols()) {
    throw ValidationError("measurement_record_entropy: basis and state dimensions differ");
  }
  if (!(unitarity_deviation(basis) < tol::kUnitary)) {
    throw ValidationError("measurement_record_entropy: measurement basis is not orthonormal");
  }
  require_density(rho_s, "measurement_record_entropy");
  const ComplexMatrix rotated = basis.adjoint() * rho_s * basis;
  std::vector<double> p(static_cast<std::size_t>(rotated.rows()));
  for (Eigen::Index k = 0; k < rotated.rows(); ++k) {
    p[k] = std::max(rotated(k, k).real(), 0.0);
  }
  return shannon(p);
}

std::vector<LevelPair> fq_pairwise(std::span<const double> p, std::span<const double> eigenvalues,
                                   double t) {
  require_distribution(p, eigenvalues, "fq_pairwise");
  require_finite(t, "fq_pairwise: t");
  std::vector<LevelPair> pairs;
  pairs.reserve(p.size() * (p.size() - 1) / 2);
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t b = a + 1; b < p.size(); ++b) {
      const double gap = eigenvalues[a] - eigenvalues[b];
      pairs.push_back({a, b, 4.0 * t * t * p[a] * p[b] * gap * gap});
    }
  }
  return pairs;
}

double weighted_fq(std::span<const double> p, std::span<const double> eigenvalues) {
  require_distribution(p, eigenvalues, "weighted_fq");
  const double degenerate = degeneracy_threshold(eigenvalues);
  double total = 0.0;
  for (std::size_t a = 0; a < p.size(); ++a) {
    if (p[a] <= 0.0) continue;
    for (std::size_t b = a + 1; b < p.size(); ++b) {
      const double w = p[a] * p[b];
      if (w <= 0.0) continue;
      if (std::abs(eigenvalues[a] - eigenvalues[b]) <= degenerate) continue;
      total += 2.0 * w * (std::numbers::ln2 - std::log(p[a] + p[b]));
    }
  }
  return total;
}

double heat_bound_local(double fq, double local_seminorm, double kbt) {
  require_fq(fq, "heat_bound_local");
  require_kbt(kbt, "heat_bound_local");
  if (!(local_seminorm > 0.0) || !std::isfinite(local_seminorm)) {
    throw ValidationError("heat_bound_local: generator seminorm must be positive");
  }
  return std::numbers::ln2 * kbt * std::max(fq, 0.0) / (local_seminorm * local_seminorm);
}

double heat_bound_average(double fq, double t, double kbt) {
  return heat_bound_local(fq, t, kbt);
}

ErasureBound heat_bound_erasure(double fq, double t, double kbt, double entropy_final) {
  require_fq(fq, "heat_bound_erasure");
  require_kbt(kbt, "heat_bound_erasure");
  if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("heat_bound_erasure: t must be positive");
  if (!std::isfinite(entropy_final) || entropy_final < -tol::kProbability) {
    throw ValidationError("heat_bound_erasure: final entropy must be non-negative");
  }
  const double deficit = std::numbers::ln2 * std::max(fq, 0.0) / (t * t) - entropy_final;
  return {kbt * deficit, deficit};
}

double corrected_heat_floor(double deficit, double kbt, const HeatCorrection& correction) {
  require_finite(deficit, "corrected_heat_floor: deficit");
  require_kbt(kbt, "corrected_heat_floor");
  const double plain = kbt * deficit;
  if (!correction) return plain;
  const double corrected = correction(deficit, kbt);
  if (!std::isfinite(corrected) || corrected < plain - 1e-12 * std::max(1.0, std::abs(plain))) {
    throw ValidationError("corrected_heat_floor: correction undercuts the Landauer floor");
  }
  return corrected;
}

double precision_floor(double t, double kbt, double heat) {
  if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("precision_floor: t must be positive");
  if (!(heat > 0.0)) throw ValidationError("precision_floor: heat must be positive");
  require_kbt(kbt, "precision_floor");
  return std::numbers::ln2 * kbt / (t * t * heat);
}

double crb(double fq) {
  if (!(fq > 0.0) || !std::isfinite(fq)) throw ValidationError("crb: QFI must be positive");
  return 1.0 / fq;
}

BoundReport ensemble_entropy_report(const StateVector& psi, const Generator& g, double kbt,
                                    double entropy_final) {
  require_kbt(kbt, "ensemble_entropy_report");
  BoundReport r;
  r.kbt = kbt;
  r.seminorm = g.seminorm();
  r.fq = qfi_pure(psi, g);
  r.fq_over_t2 = r.fq / (g.time() * g.time());
  r.entropy_rho_s = vn_entropy(rho_s_dephase(psi.projector(), g));
  r.entropy_final = entropy_final;

  if (g.seminorm() > 0.0) {
    const Generator unit = g.normalized();
    const double fq_unit = qfi_pure(psi, unit);
    r.entropy_floor = std::numbers::ln2 * fq_unit / (unit.time() * unit.time());
    const ErasureBound erasure = heat_bound_erasure(fq_unit, unit.time(), kbt, entropy_final);
    r.deficit = erasure.deficit;
    r.heat_floor = erasure.heat_floor;
  } else {
    // h proportional to identity: nothing is encoded.
    r.entropy_floor = 0.0;
    r.deficit = -entropy_final;
    r.heat_floor = -kbt * entropy_final;
  }

  if (r.entropy_rho_s < r.entropy_floor - kEntropyFloorSlack) {
    throw NumericalError("ensemble_entropy_report: ensemble entropy " + std::to_string(r.entropy_rho_s) +
                         " below its QFI floor " + std::to_string(r.entropy_floor));
  }
  return r;
}

}  // namespace qfithermo
