#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qck/ambient_fields.hpp"

using namespace qck;

namespace {

const AmbientSpace kL3(3, Signature::Lorentz);
const PotentialFamily kHyperbolic = LogFamily{-1.0, 1.0};

RVector at_point(std::initializer_list<cplx> z) { return complex_to_real(std::vector<cplx>(z)); }

std::vector<RVector> sample(const PotentialFamily& fam, int count, std::uint64_t seed) {
  std::vector<RVector> out;
  for (const auto& z : sample_points(kL3, {count, seed, 1.2, 3.0}, &fam)) out.push_back(complex_to_real(z.z));
  return out;
}

RVector random_unit(std::mt19937_64& rng, const Eigen::MatrixXd& g) {
  std::normal_distribution<double> N;
  RVector x(g.rows());
  for (int i = 0; i < x.size(); ++i) x(i) = N(rng);
  return x / std::sqrt(x.dot(g * x));
}

}  // namespace

TEST(Christoffel, FlatIsZero) {
  auto c = christoffel(flat_metric_field(kL3), at_point({0.3, 0, cplx(0, 2)}));
  for (double v : c.data) EXPECT_EQ(v, 0.0);
}

TEST(Christoffel, ConstantCurvatureMetricIsCompatible) {
  auto c = christoffel(potential_metric_field(kHyperbolic, kL3), at_point({0, 0, cplx(0, 2)}));
  EXPECT_EQ(c.symmetry_defect, 0.0);
  EXPECT_LT(c.compatibility_defect, 1e-8);
  double mx = 0.0;
  for (double v : c.data) mx = std::max(mx, std::abs(v));
  EXPECT_GT(mx, 0.1);
}

TEST(Christoffel, ScaleInvariant) {
  MetricField g = potential_metric_field(kHyperbolic, kL3);
  RVector p = at_point({0.4, cplx(0, -0.2), cplx(1, 2)});
  auto a = christoffel(g, p), b = christoffel(scaled(g, 7.0), p);
  for (std::size_t k = 0; k < a.data.size(); ++k) EXPECT_NEAR(a.data[k], b.data[k], 1e-13 * (1 + std::abs(a.data[k])));
}

TEST(Christoffel, DegenerateMetricThrows) {
  MetricField zero(4, [](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    return Mat<T>(4, 4);
  });
  EXPECT_THROW(christoffel(zero, RVector::Zero(4)), DegenerateMetric);
}

TEST(Riemann, FlatSpacesAreFlat) {
  RVector p = at_point({0.3, 0, cplx(0, 2)});
  RVector xi = p / 2.0;
  xi /= std::sqrt(-xi.dot(kL3.real_flat() * xi));
  auto b = riemann(flat_metric_field(kL3), p, &xi);
  EXPECT_EQ(b.riemann.max_abs(), 0.0);
  EXPECT_EQ(*b.sigma, 0.0);
  EXPECT_EQ(*b.kappa, 0.0);
  EXPECT_EQ(b.scalar, 0.0);
  AmbientSpace def(3, Signature::Definite);
  EXPECT_EQ(riemann(flat_metric_field(def), p).riemann.max_abs(), 0.0);
}

TEST(Riemann, ConstantHolomorphicCurvatureMinusOne) {
  MetricField g = potential_metric_field(kHyperbolic, kL3);
  std::mt19937_64 rng(21);
  for (const RVector& p : sample(kHyperbolic, 5, 3)) {
    auto b = riemann(g, p);
    for (int t = 0; t < 20; ++t) EXPECT_NEAR(holomorphic_sectional_curvature(b, random_unit(rng, b.g)), -1.0, 1e-7);
    // ξ itself
    RVector xi = p / std::sqrt(p.dot(b.g * p));
    EXPECT_NEAR(holomorphic_sectional_curvature(b, xi), -1.0, 1e-7);
  }
}

TEST(Riemann, ScaledLogFamilyHasCurvatureA) {
  PotentialFamily fam = LogFamily{-2.0, 1.0};
  MetricField g = potential_metric_field(fam, kL3);
  std::mt19937_64 rng(22);
  for (const RVector& p : sample(fam, 3, 4)) {
    auto b = riemann(g, p);
    for (int t = 0; t < 10; ++t) EXPECT_NEAR(holomorphic_sectional_curvature(b, random_unit(rng, b.g)), -2.0, 1e-7);
    // complex space form: ρ = a(n+1)/2 · g, τ = a·n(n+1)
    EXPECT_LT((b.ricci + 4.0 * b.g).cwiseAbs().maxCoeff(), 1e-7 * b.g.cwiseAbs().maxCoeff());
    EXPECT_NEAR(b.scalar, -24.0, 1e-6);
  }
}

TEST(Riemann, AlgebraicIdentitiesOnPotentialMetrics) {
  for (const PotentialFamily& fam : {kHyperbolic, PotentialFamily(InverseFamily{})}) {
    MetricField g = potential_metric_field(fam, kL3);
    for (const RVector& p : sample(fam, 4, 5)) {
      auto b = riemann(g, p);
      EXPECT_LT(b.symmetry_defect, 1e-9);
      EXPECT_LT(b.bianchi_defect, 1e-9);
      EXPECT_LT(j_invariance_defect(b.riemann, j0_matrix(3)), 1e-8);
    }
  }
}

TEST(Riemann, ExactAndFiniteDifferencePathsAgree) {
  for (const PotentialFamily& fam : {kHyperbolic, PotentialFamily(InverseFamily{})}) {
    MetricField g = potential_metric_field(fam, kL3);
    for (const RVector& p : sample(fam, 3, 6)) {
      auto a = riemann(g, p);
      auto f = riemann(g, p, nullptr, DerivativePath::FiniteDifference);
      EXPECT_LT((a.riemann - f.riemann).max_abs(), 1e-6 * a.riemann.max_abs());
    }
  }
}

TEST(Riemann, InverseFamilyFrameInvariants) {
  PotentialFamily fam = InverseFamily{};
  MetricField g = potential_metric_field(fam, kL3);
  VectorField xi = radial_unit_field(kL3, &fam);
  RVector p = at_point({0, 0, cplx(0, 1.5)});
  RVector x = xi.at(p);
  auto b = riemann(g, p, &x);
  ASSERT_TRUE(b.sigma && b.kappa);
  EXPECT_NEAR(*b.kappa, holomorphic_sectional_curvature(b, x), 1e-12);
  EXPECT_NEAR(*b.sigma, x.dot(b.ricci * x), 1e-10);
}

TEST(HolomorphicSectionalCurvature, RejectsNullVectors) {
  auto b = riemann(flat_metric_field(kL3), at_point({0, 0, cplx(0, 2)}));
  EXPECT_EQ(holomorphic_sectional_curvature(b, at_point({1, 0, 0})), 0.0);
  EXPECT_THROW(holomorphic_sectional_curvature(b, at_point({1, 0, 1})), DomainError);
  EXPECT_THROW(holomorphic_sectional_curvature(b, at_point({0, 0, 1})), DomainError);
}

TEST(KahlerDefect, PotentialMetricsAreKahler) {
  for (const PotentialFamily& fam : {kHyperbolic, PotentialFamily(InverseFamily{})})
    for (const RVector& p : sample(fam, 5, 7)) EXPECT_LT(kahler_defect(potential_metric_field(fam, kL3), p), 1e-9);
  EXPECT_LT(kahler_defect(flat_metric_field(kL3), at_point({0.1, 0, 2})), 1e-14);
}

TEST(KahlerDefect, ConformalPairWithZeroProfilesIsNotKahler) {
  UnivariateFn zero([](const auto& r) { return 0.0 * r; });
  EXPECT_GT(kahler_defect(conformal_metric_field(kL3, zero, zero), at_point({0, 0, cplx(0, 2)})), 1e-3);
}

TEST(KahlerDefect, ConformalProfilesOfPotentialAreKahler) {
  auto [u, v] = conformal_profiles(kHyperbolic);
  EXPECT_LT(kahler_defect(conformal_metric_field(kL3, u, v), at_point({0.2, 0, cplx(0, 2)})), 1e-9);
}

TEST(CovariantJacobian, FlatRadialField) {
  // ∇_X (Z/r) = X/r − (X·Z) Z / r³ in flat coordinates
  VectorField xi = radial_unit_field(kL3);
  RVector p = at_point({0.5, 0, cplx(0, 2)});
  Eigen::MatrixXd a = covariant_jacobian(flat_metric_field(kL3), xi, p);
  Eigen::MatrixXd h = kL3.real_flat();
  const double r = std::sqrt(-p.dot(h * p));
  Eigen::MatrixXd expect = Eigen::MatrixXd::Identity(6, 6) / r + p * (h * p).transpose() / (r * r * r);
  EXPECT_LT((a - expect).cwiseAbs().maxCoeff(), 1e-14);
}
