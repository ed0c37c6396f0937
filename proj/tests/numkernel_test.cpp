#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qfithermo/numkernel.hpp"
#include "support.hpp"

namespace qfithermo {
namespace {

using namespace std::complex_literals;
using testing::max_abs;

TEST(HermEig, PauliXSpectrum) {
  ComplexMatrix x(2, 2);
  x << 0, 1, 1, 0;
  const Eig e = herm_eig(x);
  EXPECT_NEAR(e.values(0), -1.0, 1e-14);
  EXPECT_NEAR(e.values(1), 1.0, 1e-14);
}

TEST(HermEig, IdentitySpectrum) {
  const Eig e = herm_eig<double>(ComplexMatrix::Identity(4, 4));
  for (Eigen::Index k = 0; k < 4; ++k) EXPECT_NEAR(e.values(k), 1.0, 1e-14);
}

TEST(HermEig, ReconstructionAndOrthonormality) {
  std::mt19937_64 rng(7);
  for (Eigen::Index dim : {1, 2, 8, 33, 128, 256}) {
    const ComplexMatrix h = testing::random_hermitian(dim, rng);
    const Eig e = herm_eig(h);
    const ComplexMatrix rebuilt = e.vectors * e.values.cast<std::complex<double>>().asDiagonal() *
                                  e.vectors.adjoint();
    EXPECT_LT(max_abs(rebuilt - h), 1e-10) << "dim " << dim;
    EXPECT_LT(max_abs(e.vectors.adjoint() * e.vectors - ComplexMatrix::Identity(dim, dim)), 1e-10);
    for (Eigen::Index k = 1; k < dim; ++k) EXPECT_LE(e.values(k - 1), e.values(k));
  }
}

TEST(HermEig, Deterministic) {
  std::mt19937_64 rng(11);
  const ComplexMatrix h = testing::random_hermitian(20, rng);
  const Eig a = herm_eig(h);
  const Eig b = herm_eig(h);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.vectors, b.vectors);
}

TEST(HermEig, RejectsNonHermitian) {
  ComplexMatrix a(2, 2);
  a << 0, 1, 0, 0;
  EXPECT_THROW(herm_eig(a), ValidationError);
  EXPECT_THROW(herm_eig<double>(ComplexMatrix::Zero(2, 3)), ValidationError);
}

TEST(HermEig, LongDoubleScalar) {
  CMatrix<long double> h(2, 2);
  h << 0.0L, 1.0L, 1.0L, 0.0L;
  const auto e = herm_eig(h);
  EXPECT_NEAR(static_cast<double>(e.values(0)), -1.0, 1e-18);
}

TEST(UnitaryFrom, DiagonalCase) {
  ComplexMatrix h(2, 2);
  h << 0.5, 0, 0, -0.5;
  const ComplexMatrix u = unitary_from(h, std::numbers::pi);
  EXPECT_LT(std::abs(u(0, 0) - std::exp(-0.5i * std::numbers::pi)), 1e-14);
  EXPECT_LT(std::abs(u(1, 1) - std::exp(0.5i * std::numbers::pi)), 1e-14);
  EXPECT_LT(std::abs(u(0, 1)), 1e-14);
}

TEST(UnitaryFrom, ZeroTimeIsIdentity) {
  std::mt19937_64 rng(3);
  const ComplexMatrix h = testing::random_hermitian(6, rng);
  EXPECT_LT(max_abs(unitary_from(h, 0.0) - ComplexMatrix::Identity(6, 6)), 1e-13);
}

TEST(UnitaryFrom, UnitarityAndNormConservation) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix h = testing::random_hermitian(12, rng);
    const ComplexMatrix u = unitary_from(h, 0.7);
    EXPECT_LT(unitarity_deviation(u), 1e-10);
    const ComplexVector v = testing::random_ket(12, rng);
    EXPECT_NEAR((u * v).norm(), 1.0, 1e-12);
  }
}

TEST(UnitaryFrom, MatchesTaylorSeriesOracle) {
  std::mt19937_64 rng(9);
  const ComplexMatrix h = testing::random_hermitian(5, rng) * 0.2;
  const double t = 0.3;
  // e^{-iHt} by a long Taylor series; |Ht| is small so 40 terms are plenty.
  ComplexMatrix term = ComplexMatrix::Identity(5, 5);
  ComplexMatrix sum = term;
  for (int k = 1; k < 40; ++k) {
    term = term * (-1i * t * h) / static_cast<double>(k);
    sum += term;
  }
  EXPECT_LT(max_abs(unitary_from(h, t) - sum), 1e-13);
}

TEST(PartialTrace, ProductState) {
  std::mt19937_64 rng(13);
  const ComplexMatrix a = testing::random_density(3, rng);
  const ComplexMatrix b = testing::random_density(4, rng);
  const ComplexMatrix ab = kron(a, b);
  EXPECT_LT(max_abs(partial_trace(ab, {3, 4}, {0}) - a), 1e-12);
  EXPECT_LT(max_abs(partial_trace(ab, {3, 4}, {1}) - b), 1e-12);
}

TEST(PartialTrace, BellStateGivesMaximallyMixed) {
  ComplexVector bell = ComplexVector::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const ComplexMatrix rho = bell * bell.adjoint();
  EXPECT_LT(max_abs(partial_trace(rho, {2, 2}, {0}) - 0.5 * ComplexMatrix::Identity(2, 2)), 1e-15);
}

TEST(PartialTrace, SchmidtSpectraAgree) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexVector psi = testing::random_ket(4, rng);
    const ComplexMatrix rho = psi * psi.adjoint();
    const RealVector left = herm_eigenvalues<double>(partial_trace(rho, {2, 2}, {0}));
    const RealVector right = herm_eigenvalues<double>(partial_trace(rho, {2, 2}, {1}));
    EXPECT_LT((left - right).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(PartialTrace, ThreePartiesTracePreservingAndPositive) {
  std::mt19937_64 rng(19);
  const ComplexMatrix rho = testing::random_density(2 * 3 * 2, rng);
  for (const auto& keep : std::vector<std::vector<std::size_t>>{{0}, {1}, {2}, {0, 2}, {1, 2}}) {
    const std::vector<std::size_t> dims{2, 3, 2};
    const ComplexMatrix r = partial_trace<double>(rho, dims, keep);
    EXPECT_NEAR(r.trace().real(), 1.0, 1e-12);
    EXPECT_GE(herm_eigenvalues(r).minCoeff(), -1e-10);
  }
  // Tracing out the middle factor of a product matches the direct product.
  const ComplexMatrix a = testing::random_density(2, rng);
  const ComplexMatrix b = testing::random_density(3, rng);
  const ComplexMatrix c = testing::random_density(2, rng);
  const ComplexMatrix abc = kron<double>(kron(a, b), c);
  EXPECT_LT(max_abs(partial_trace(abc, {2, 3, 2}, {0, 2}) - kron(a, c)), 1e-12);
}

TEST(PartialTrace, DimensionMismatch) {
  const ComplexMatrix rho = ComplexMatrix::Identity(4, 4) / 4.0;
  EXPECT_THROW(partial_trace(rho, {2, 3}, {0}), ValidationError);
  EXPECT_THROW(partial_trace(rho, {2, 2}, {2}), ValidationError);
}

TEST(VnEntropy, Examples) {
  ComplexVector psi(2);
  psi << 0.6, 0.8i;
  EXPECT_NEAR(vn_entropy<double>(psi * psi.adjoint()), 0.0, 1e-12);
  EXPECT_NEAR(vn_entropy<double>(0.5 * ComplexMatrix::Identity(2, 2)), std::numbers::ln2, 1e-15);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 0.9;
  d(1, 1) = 0.1;
  EXPECT_NEAR(vn_entropy(d), -0.9 * std::log(0.9) - 0.1 * std::log(0.1), 1e-14);
}

TEST(VnEntropy, BoundedByLogDimension) {
  std::mt19937_64 rng(23);
  for (Eigen::Index dim : {2, 3, 7, 16}) {
    const ComplexMatrix rho = testing::random_density(dim, rng);
    const double s = vn_entropy(rho);
    EXPECT_GE(s, -1e-12);
    EXPECT_LE(s, std::log(static_cast<double>(dim)) + 1e-12);
  }
}

TEST(VnEntropy, RejectsInvalidDensity) {
  EXPECT_THROW(vn_entropy<double>(ComplexMatrix::Identity(2, 2)), ValidationError);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(vn_entropy(neg), ValidationError);
}

TEST(Shannon, Examples) {
  EXPECT_NEAR(shannon(std::vector<double>{0.5, 0.5}), std::numbers::ln2, 1e-15);
  EXPECT_EQ(shannon(std::vector<double>{1.0, 0.0}), 0.0);
  const std::vector<double> b = testing::pascal_binomial(4);
  double direct = 0.0;
  for (double p : {1.0 / 16, 4.0 / 16, 6.0 / 16, 4.0 / 16, 1.0 / 16}) direct -= p * std::log(p);
  EXPECT_NEAR(shannon(b), direct, 1e-14);
}

TEST(Shannon, NormalizationErrors) {
  EXPECT_THROW(shannon(std::vector<double>{0.5, 0.6}), ValidationError);
  EXPECT_THROW(shannon(std::vector<double>{1.1, -0.1}), ValidationError);
  EXPECT_THROW(shannon(std::vector<double>{}), ValidationError);
}

TEST(Shannon, DiagonalMajorizesSpectrum) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix rho = testing::random_density(5, rng);
    const ComplexMatrix basis = testing::random_unitary(5, rng);
    const ComplexMatrix rotated = basis.adjoint() * rho * basis;
    std::vector<double> diag(5);
    for (int k = 0; k < 5; ++k) diag[k] = rotated(k, k).real();
    EXPECT_GE(shannon(diag), vn_entropy(rho) - 1e-12);
  }
}

TEST(TraceDistance, Examples) {
  std::mt19937_64 rng(31);
  const ComplexMatrix rho = testing::random_density(3, rng);
  EXPECT_NEAR(trace_distance(rho, rho), 0.0, 1e-14);

  ComplexMatrix zero = ComplexMatrix::Zero(2, 2), one = ComplexMatrix::Zero(2, 2);
  zero(0, 0) = 1.0;
  one(1, 1) = 1.0;
  EXPECT_NEAR(trace_distance(zero, one), 1.0, 1e-14);

  ComplexMatrix a = ComplexMatrix::Zero(2, 2), b = 0.5 * ComplexMatrix::Identity(2, 2);
  a(0, 0) = 0.7;
  a(1, 1) = 0.3;
  EXPECT_NEAR(trace_distance(a, b), 0.2, 1e-14);
}

TEST(TraceDistance, PureStateClosedForm) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexVector u = testing::random_ket(4, rng);
    const ComplexVector v = testing::random_ket(4, rng);
    const double expected = std::sqrt(1.0 - std::norm(u.dot(v)));
    const double d = trace_distance<double>(u * u.adjoint(), v * v.adjoint());
    EXPECT_NEAR(d, expected, 1e-12);
    EXPECT_LE(d, 1.0 + 1e-12);
  }
}

TEST(TraceDistance, DimensionMismatch) {
  EXPECT_THROW(trace_distance<double>(ComplexMatrix::Identity(2, 2) / 2.0, ComplexMatrix::Identity(3, 3) / 3.0),
               ValidationError);
}

TEST(StateVector, NormalizationContract) {
  ComplexVector v(2);
  v << 1.0, 1.0;
  EXPECT_THROW(StateVector{v}, ValidationError);
  const StateVector s = StateVector::normalized(v);
  EXPECT_NEAR(s.amplitudes().squaredNorm(), 1.0, 1e-15);
  EXPECT_THROW(StateVector::normalized(ComplexVector::Zero(3)), ValidationError);
}

TEST(Kron, DimensionsAndEntries) {
  ComplexMatrix a(1, 2), b(2, 1);
  a << 1, 2;
  b << 3, 1i;
  const ComplexMatrix k = kron(a, b);
  ASSERT_EQ(k.rows(), 2);
  ASSERT_EQ(k.cols(), 2);
  EXPECT_EQ(k(0, 0), std::complex<double>(3));
  EXPECT_EQ(k(1, 1), std::complex<double>(0, 2));
  EXPECT_THROW(apply<double>(a, ComplexVector::Zero(3)), ValidationError);
}

}  // namespace
}  // namespace qfithermo
