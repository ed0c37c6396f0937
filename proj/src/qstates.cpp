#include "qfithermo/qstates.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qfithermo {

namespace {

using namespace std::complex_literals;

void require_qubits(int qubits, const char* where) {
  if (qubits < 1) {
    throw ValidationError(std::string(where) + ": qubit count must be at least 1, got " +
                          std::to_string(qubits));
  }
}

std::vector<double> normalize(std::vector<double> w, const char* where) {
  double total = 0.0;
  for (double x : w) total += x;
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw NumericalError(std::string(where) + ": distribution has no weight");
  }
  for (double& x : w) x /= total;
  return w;
}

std::vector<double> binomial_distribution(int n) {
  std::vector<double> p(n + 1);
  const double log_norm = std::lgamma(n + 1.0) - n * std::numbers::ln2;
  for (int k = 0; k <= n; ++k) {
    p[k] = std::exp(log_norm - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
  }
  return normalize(std::move(p), "product");
}

std::vector<double> squeezed_distribution(int n, double gamma) {
  if (!std::isfinite(gamma) || gamma <= 0.0) {
    throw ValidationError("squeezed: width exponent gamma must be positive");
  }
  const double sigma = std::pow(static_cast<double>(n), gamma) / 2.0;
  const double centre = n / 2.0;
  std::vector<double> w(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double d = k - centre;
    w[k] = std::exp(-d * d / (2.0 * sigma * sigma));
  }
  return normalize(std::move(w), "squeezed");
}

std::vector<double> twin_fock_distribution(int n) {
  if (n % 2 != 0) {
    throw ValidationError("twin_fock: qubit count must be even, got " + std::to_string(n));
  }
  // Jy = Rz Jx Rz^dag with Rz = exp(-i pi Jz / 2) diagonal, so the populations
  // of exp(-i pi Jy / 2)|D^{N/2}> equal those of exp(-i pi Jx / 2)|D^{N/2}>.
  // Jx is real symmetric tridiagonal in the Dicke basis.
  const SpinRep rep{n};
  const double j = rep.total_spin();
  const RealVector m = rep.jz_spectrum();
  RealVector diag = RealVector::Zero(n + 1);
  RealVector sub(n);
  for (int k = 0; k < n; ++k) sub(k) = 0.5 * std::sqrt(j * (j + 1.0) - m(k) * (m(k) + 1.0));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw NumericalError("twin_fock: eigensolver failed");
  const Eigen::MatrixXd& v = solver.eigenvectors();
  const double theta = std::numbers::pi / 2.0;
  ComplexVector weights(n + 1);
  for (int c = 0; c <= n; ++c) weights(c) = std::polar(v(n / 2, c), -theta * solver.eigenvalues()(c));
  const ComplexVector rotated = v.cast<std::complex<double>>() * weights;
  std::vector<double> p(n + 1);
  for (int k = 0; k <= n; ++k) p[k] = std::norm(rotated(k));
  return normalize(std::move(p), "twin_fock");
}

std::vector<double> ghz_like_distribution(int n, double nu) {
  if (!std::isfinite(nu) || nu <= 0.0) {
    throw ValidationError("ghz_like: width nu must be positive");
  }
  const double two_nu2 = 2.0 * nu * nu;
  std::vector<double> w(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double low = static_cast<double>(k);
    const double high = static_cast<double>(n - k);
    w[k] = std::exp(-low * low / two_nu2) + std::exp(-high * high / two_nu2);
  }
  return normalize(std::move(w), "ghz_like");
}

}  // namespace

Pauli pauli() {
  ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -1i, 1i, 0;
  z << 1, 0, 0, -1;
  return {x, y, z};
}

RealVector SpinRep::jz_spectrum() const {
  RealVector m(dim());
  for (Eigen::Index k = 0; k < m.size(); ++k) m(k) = static_cast<double>(k) - total_spin();
  return m;
}

SpinOps spin_ops(int qubits) {
  require_qubits(qubits, "spin_ops");
  const SpinRep rep{qubits};
  const double j = rep.total_spin();
  const RealVector m = rep.jz_spectrum();
  const Eigen::Index d = rep.dim();

  // J+ |k> = sqrt(J(J+1) - m(m+1)) |k+1>
  ComplexMatrix raise = ComplexMatrix::Zero(d, d);
  for (Eigen::Index k = 0; k + 1 < d; ++k) {
    raise(k + 1, k) = std::sqrt(j * (j + 1.0) - m(k) * (m(k) + 1.0));
  }
  const ComplexMatrix lower = raise.adjoint();
  SpinOps ops;
  ops.jx = 0.5 * (raise + lower);
  ops.jy = -0.5i * (raise - lower);
  ops.jz = m.cast<std::complex<double>>().asDiagonal();
  return ops;
}

FockOps fock_ops(int nmax) {
  if (nmax < 1) throw ValidationError("fock_ops: nmax must be at least 1");
  const Eigen::Index d = nmax + 1;
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (Eigen::Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  ComplexMatrix number = ComplexMatrix::Zero(d, d);
  for (Eigen::Index n = 0; n < d; ++n) number(n, n) = static_cast<double>(n);
  return {a, a.adjoint(), number};
}

ComplexMatrix thermal_state(double omega, double temperature, int nmax) {
  if (!(temperature >= 0.0) || !std::isfinite(temperature)) {
    throw ValidationError("thermal_state: temperature must be finite and non-negative");
  }
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw ValidationError("thermal_state: mode frequency must be positive");
  }
  if (nmax < 0) throw ValidationError("thermal_state: nmax must be non-negative");

  const Eigen::Index d = nmax + 1;
  ComplexMatrix rho = ComplexMatrix::Zero(d, d);
  if (temperature == 0.0) {
    rho(0, 0) = 1.0;
    return rho;
  }
  std::vector<double> w(d);
  for (Eigen::Index n = 0; n < d; ++n) w[n] = std::exp(-static_cast<double>(n) * omega / temperature);
  w = normalize(std::move(w), "thermal_state");
  for (Eigen::Index n = 0; n < d; ++n) rho(n, n) = w[n];
  return rho;
}

std::string_view to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::product: return "product";
    case FamilyKind::squeezed: return "squeezed";
    case FamilyKind::twin_fock: return "twin_fock";
    case FamilyKind::ghz_like: return "ghz_like";
  }
  return "unknown";
}

std::optional<FamilyKind> parse_family(std::string_view name) {
  for (FamilyKind k : {FamilyKind::product, FamilyKind::squeezed, FamilyKind::twin_fock,
                       FamilyKind::ghz_like}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

std::vector<double> family_distribution(const DickeFamily& family, int qubits) {
  require_qubits(qubits, "family_distribution");
  switch (family.kind) {
    case FamilyKind::product: return binomial_distribution(qubits);
    case FamilyKind::squeezed: return squeezed_distribution(qubits, family.gamma);
    case FamilyKind::twin_fock: return twin_fock_distribution(qubits);
    case FamilyKind::ghz_like: return ghz_like_distribution(qubits, family.nu);
  }
  throw ValidationError("family_distribution: unknown family");
}

StateVector dicke_state(const ComplexVector& coefficients) {
  if (coefficients.size() < 2) {
    throw ValidationError("dicke_state: need at least two coefficients (N >= 1)");
  }
  return StateVector(coefficients);
}

StateVector dicke_state_from_distribution(std::span<const double> p) {
  ComplexVector c(static_cast<Eigen::Index>(p.size()));
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (!(p[k] >= -tol::kProbability)) throw ValidationError("dicke_state: negative probability");
    c(static_cast<Eigen::Index>(k)) = std::sqrt(std::max(p[k], 0.0));
  }
  return dicke_state(c);
}

}  // namespace qfithermo
