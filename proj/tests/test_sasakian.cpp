#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qck/ambient_fields.hpp"
#include "qck/sasakian.hpp"

using namespace qck;

namespace {

const AmbientSpace kL3(3, Signature::Lorentz);
const AmbientSpace kD3(3, Signature::Definite);
const PotentialFamily kHyperbolic = LogFamily{-1.0, 1.0};
const PotentialFamily kInverse = InverseFamily{};

// random points of the radius-r sphere through the global Lorentz chart
std::vector<RVector> lorentz_sphere(double r, int count, std::uint64_t seed) {
  SphereChart chart(kL3, r);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-0.8, 0.8), A(-3.0, 3.0);
  std::vector<RVector> out;
  for (int s = 0; s < count; ++s) {
    Vec<double> u{U(rng), U(rng), U(rng), U(rng), A(rng)};
    Vec<double> z = chart.embed(u);
    out.push_back(Eigen::Map<RVector>(z.data(), static_cast<Eigen::Index>(z.size())));
  }
  return out;
}

}  // namespace

TEST(SphereChart, LorentzRoundTrip) {
  SphereChart chart(kL3, 1.7);
  RVector u(5);
  u << 0.3, -0.4, 0.1, 0.6, 1.2;
  Vec<double> z = chart.embed(Vec<double>(u.data(), u.data() + 5));
  RVector zr = Eigen::Map<RVector>(z.data(), 6);
  EXPECT_NEAR(square_norm(kL3, CPoint{real_to_complex(zr)}), -1.7 * 1.7, 1e-12);
  EXPECT_LT((chart.coordinates(zr) - u).cwiseAbs().maxCoeff(), 1e-12);
  // Jacobian columns are tangent: h′(Z, ∂Z) = 0
  Eigen::MatrixXd e = chart.jacobian(u);
  EXPECT_LT((zr.transpose() * kL3.real_flat() * e).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(SphereChart, RejectsOffSphereAndBoundary) {
  SphereChart chart(kL3, 1.0);
  RVector z = RVector::Zero(6);
  z(4) = 1.5;
  EXPECT_THROW(chart.coordinates(z), ChartError);
  RVector w = RVector::Zero(6);
  w(0) = 2.0 * std::cos(0.1);
  w(2) = 2.0 * std::sin(0.1);
  SphereChart graph(kD3, 2.0, 2, 1.0);
  EXPECT_THROW(graph.coordinates(w), ChartError);
  EXPECT_NO_THROW(SphereChart::around(kD3, w).coordinates(w));
}

TEST(InducedContact, IdentitiesOnHyperbolicSphere) {
  MetricField g = potential_metric_field(kHyperbolic, kL3);
  for (const RVector& z : lorentz_sphere(2.0, 4, 1)) {
    ContactStructure cs = induced_contact(g, kL3, z, 2.0);
    EXPECT_LT(cs.identity_defect, 1e-10);
    EXPECT_NEAR(cs.xi.dot(cs.g * cs.xi), 1.0, 1e-12);
    EXPECT_NEAR(cs.eta_t.dot(cs.xi_t), 1.0, 1e-12);
  }
  EXPECT_THROW(induced_contact(g, kL3, lorentz_sphere(2.0, 1, 2)[0], 2.5), DomainError);
}

TEST(AlphaSasakian, HyperbolicSphereRadiusTwo) {
  MetricField g = potential_metric_field(kHyperbolic, kL3);
  SasakianOptions opt;
  opt.gauss_check = true;
  for (const RVector& z : lorentz_sphere(2.0, 3, 3)) {
    SasakianReport rep = alpha_sasakian_check(g, kL3, z, 2.0, opt);
    EXPECT_NEAR(rep.alpha, 0.25, 1e-8);
    EXPECT_NEAR(rep.c, -15.0 / 16.0, 1e-7);
    EXPECT_NEAR(rep.c_plus_3a2, -0.75, 1e-7);
    EXPECT_LT(rep.alpha_defect, 1e-8);
    EXPECT_LT(rep.phi_defect, 1e-8);
    EXPECT_LT(rep.model_defect, 1e-7);
    EXPECT_LT(*rep.gauss_defect, 1e-5);
    EXPECT_EQ(rep.type, SasakianType::III);
  }
}

TEST(AlphaSasakian, HyperbolicRadiusScan) {
  MetricField g = potential_metric_field(kHyperbolic, kL3);
  for (double r : {1.5, 2.0, 3.0}) {
    RVector z = lorentz_sphere(r, 1, 4)[0];
    SasakianReport rep = alpha_sasakian_check(g, kL3, z, r);
    EXPECT_NEAR(rep.alpha, 1.0 / (2.0 * r), 1e-8) << r;
    EXPECT_NEAR(rep.c_plus_3a2, -(r * r - 1.0) / (r * r), 1e-7) << r;
  }
}

TEST(AlphaSasakian, OutwardNormalFlipsAlpha) {
  MetricField g = potential_metric_field(kHyperbolic, kL3);
  RVector z = lorentz_sphere(2.0, 1, 5)[0];
  auto in = alpha_sasakian_check(g, kL3, z, 2.0);
  auto out = alpha_sasakian_check(g, kL3, z, 2.0, {}, NormalOrientation::Outward);
  EXPECT_NEAR(out.alpha, -in.alpha, 1e-9);
  EXPECT_NEAR(out.c, in.c, 1e-7);
}

TEST(AlphaSasakian, RoundSphereIsTypeOne) {
  MetricField g = flat_metric_field(kD3);
  RVector z(6);
  z << 1.0, 0.5, -0.7, 0.2, 1.1, 0.4;
  const double r = z.norm();
  SasakianOptions opt;
  opt.gauss_check = true;
  auto rep = alpha_sasakian_check(g, kD3, z, r, opt);
  EXPECT_NEAR(std::abs(rep.alpha), 1.0 / r, 1e-9);
  EXPECT_NEAR(rep.c, 1.0 / (r * r), 1e-8);
  EXPECT_EQ(rep.type, SasakianType::I);
  EXPECT_LT(*rep.gauss_defect, 1e-5);
}

TEST(AlphaSasakian, AlphaIsHalfK) {
  for (const PotentialFamily& fam : {kHyperbolic, kInverse}) {
    MetricField g = potential_metric_field(fam, kL3);
    VectorField xi = sphere_normal_field(g, kL3);
    for (const RVector& z : lorentz_sphere(1.6, 3, 6)) {
      auto b0 = extract_b0_data(g, xi, z);
      auto rep = alpha_sasakian_check(g, kL3, z, 1.6);
      EXPECT_GT(b0.k, 0.0);
      EXPECT_NEAR(rep.alpha, b0.k / 2.0, 1e-7);
    }
  }
}

TEST(AlphaSasakian, InverseFamilyMatchesDecomposition) {
  MetricField g = potential_metric_field(kInverse, kL3);
  VectorField radial = radial_unit_field(kL3, &kInverse);
  SasakianOptions opt;
  opt.gauss_check = true;
  for (const RVector& z : lorentz_sphere(1.4, 3, 7)) {
    auto rep = alpha_sasakian_check(g, kL3, z, 1.4, opt);
    auto qp = analyse_point(g, radial, z);
    const double a2 = rep.alpha * rep.alpha;
    EXPECT_NEAR(rep.c + 3.0 * a2, qp.decomposition.a_plus_k2, 1e-6 * std::max(1.0, std::abs(qp.decomposition.a)));
    EXPECT_NEAR(rep.c - a2, qp.decomposition.a, 1e-6 * std::max(1.0, std::abs(qp.decomposition.a)));
    EXPECT_EQ(rep.type, SasakianType::III);
    EXPECT_LT(rep.model_defect, 1e-6);
    EXPECT_LT(*rep.gauss_defect, 1e-5);
  }
}

TEST(AlphaSasakian, PhiHscAndJson) {
  MetricField g = potential_metric_field(kHyperbolic, kL3);
  RVector z = lorentz_sphere(2.0, 1, 8)[0];
  auto [c, spread] = phi_hsc(g, kL3, z, 2.0);
  EXPECT_NEAR(c, -15.0 / 16.0, 1e-7);
  EXPECT_LT(spread, 1e-7);
  auto j = alpha_sasakian_check(g, kL3, z, 2.0).to_json();
  EXPECT_EQ(j["type"], "III");
  EXPECT_FALSE(j.contains("gauss_defect"));
}

TEST(SasakianFamily, ConstantPhiCurvature) {
  SasakianOptions opt;
  for (double q : {1.0, 2.0, 0.7}) {
    for (const RVector& z : lorentz_sphere(1.0, 3, 9)) {
      auto rep = sasakian_family_report(q, z, opt);
      EXPECT_NEAR(rep.alpha, 1.0, 1e-7) << q;
      EXPECT_LT(rep.alpha_defect, 1e-6);
      EXPECT_LT(rep.phi_defect, 1e-6);
      EXPECT_LT(rep.identity_defect, 1e-10);
      EXPECT_NEAR(rep.c, -4.0 / (q * q) - 3.0, 1e-6) << q;
      EXPECT_LT(rep.model_defect, 1e-6);
      EXPECT_EQ(rep.type, SasakianType::III);
    }
  }
}

TEST(SasakianFamily, RejectsBadInput) {
  EXPECT_THROW(sasakian_family_h1(0.0), DomainError);
  EXPECT_THROW(sasakian_family_report(1.0, lorentz_sphere(2.0, 1, 1)[0]), DomainError);
}

TEST(SasakianFamily, NonSasakianPerturbationDetected) {
  // rescaling g alone breaks the normalisation of ξ̄ and the α-condition
  IntrinsicContact s = sasakian_family_h1(2.0);
  s.g = scaled(s.g, 1.5);
  SphereChart chart(kL3, 1.0);
  RVector u = chart.coordinates(lorentz_sphere(1.0, 1, 10)[0]);
  SasakianOptions opt;
  EXPECT_THROW(analyse_intrinsic(s, u, opt), NotSasakian);
}
