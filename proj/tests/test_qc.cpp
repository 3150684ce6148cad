#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qck/ambient_fields.hpp"
#include "qck/qc.hpp"

using namespace qck;

namespace {

const AmbientSpace kL3(3, Signature::Lorentz);
const PotentialFamily kHyperbolic = LogFamily{-1.0, 1.0};
const PotentialFamily kInverse = InverseFamily{};

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

// A J₀-invariant positive metric and a unit vector: the data of a
// synthetic quasi-constant curvature tensor.
struct Synthetic {
  Eigen::MatrixXd g;
  RVector xi;
  BasisTensors basis;
};

Synthetic synthetic(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  Eigen::MatrixXcd a(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) a(i, k) = cplx(N(rng), N(rng));
  Eigen::MatrixXcd h = a.adjoint() * a + Eigen::MatrixXcd::Identity(3, 3);
  Synthetic s;
  s.g = hermitian_to_real_metric(HermitianMatrix::from_upper(h));
  s.xi = random_unit(rng, s.g);
  s.basis = build_basis_tensors(s.g, s.xi);
  return s;
}

}  // namespace

TEST(JAdaptedFrame, OrthonormalAndPaired) {
  auto s = synthetic(1);
  Eigen::MatrixXd j = j0_matrix(3);
  Eigen::MatrixXd e = j_adapted_frame(s.g, j, {s.xi});
  EXPECT_LT((e.transpose() * s.g * e - Eigen::MatrixXd::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((e.col(0) - s.xi).norm(), 1e-12);
  for (int a = 0; a < 3; ++a) EXPECT_LT((e.col(2 * a + 1) - j * e.col(2 * a)).norm(), 1e-15);
  // Lorentz: ξ′ is time-like, the frame stays pseudo-orthonormal
  Eigen::MatrixXd h = kL3.real_flat();
  RVector xi = at_point({0, 0, cplx(0, 1)});
  Eigen::MatrixXd f = j_adapted_frame(h, j, {xi});
  Eigen::MatrixXd gram = f.transpose() * h * f;
  EXPECT_LT((gram - Eigen::MatrixXd(Eigen::VectorXd(gram.diagonal()).asDiagonal())).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_EQ(gram(0, 0), -1.0);
}

TEST(BasisTensors, ContractionsOnUnitVectors) {
  auto s = synthetic(2);
  std::mt19937_64 rng(3);
  Eigen::MatrixXd j = j0_matrix(3);
  RVector eta = s.g * s.xi, etat = s.g * (j * s.xi);
  for (int t = 0; t < 30; ++t) {
    RVector x = random_unit(rng, s.g), jx = j * x;
    const double cos2 = std::pow(eta.dot(x), 2) + std::pow(etat.dot(x), 2);
    EXPECT_NEAR(s.basis.pi.contract(x, jx, jx, x), 1.0, 1e-12);
    EXPECT_NEAR(s.basis.phi.contract(x, jx, jx, x), cos2, 1e-12);
    EXPECT_NEAR(s.basis.psi.contract(x, jx, jx, x), cos2 * cos2, 1e-12);
  }
  RVector jxi = j * s.xi;
  EXPECT_NEAR(s.basis.psi.contract(s.xi, jxi, jxi, s.xi), 1.0, 1e-12);
}

TEST(BasisTensors, PsiVanishesOnD) {
  auto s = synthetic(4);
  Eigen::MatrixXd e = j_adapted_frame(s.g, j0_matrix(3), {s.xi});
  Tensor4 on_d = s.basis.psi.transformed(Eigen::MatrixXd(e.rightCols(4)));
  EXPECT_LT(on_d.max_abs(), 1e-14);
  EXPECT_GT(s.basis.psi.max_abs(), 1e-3);
}

TEST(BasisTensors, SymmetryClasses) {
  auto s = synthetic(5);
  EXPECT_LT(curvature_symmetry_defect(s.basis.pi), 1e-12);
  EXPECT_LT(curvature_symmetry_defect(s.basis.phi), 1e-12);
  EXPECT_LT(curvature_symmetry_defect(s.basis.psi), 1e-12);
  EXPECT_LT(bianchi_defect(s.basis.phi), 1e-12);
  EXPECT_LT((s.basis.phi1 + s.basis.phi2 - s.basis.phi).max_abs(), 1e-14);
  // the halves are antisymmetric in the first pair but not curvature-like on their own
  double anti = 0.0;
  for (const Tensor4* t : {&s.basis.phi1, &s.basis.phi2})
    for (int i = 0; i < 6; ++i)
      for (int jj = 0; jj < 6; ++jj)
        for (int k = 0; k < 6; ++k)
          for (int l = 0; l < 6; ++l) anti = std::max(anti, std::abs((*t)(i, jj, k, l) + (*t)(jj, i, k, l)));
  EXPECT_LT(anti, 1e-14);
  EXPECT_GT(curvature_symmetry_defect(s.basis.phi1), 1e-3);
}

TEST(BasisTensors, NonUnitFrameRejected) {
  auto s = synthetic(6);
  EXPECT_THROW(build_basis_tensors(s.g, 2.0 * s.xi), FrameError);
}

TEST(B0Data, FlatLorentzRadialField) {
  RVector p = at_point({0, 0, cplx(0, 2)});
  auto b = extract_b0_data(flat_metric_field(kL3), radial_unit_field(kL3), p, B0Variant::Lorentz);
  EXPECT_NEAR(b.k, -1.0, 1e-12);
  EXPECT_LT(b.spread, 1e-12);
  // off the axis as well: k′ = −2/r
  RVector q = at_point({0.5, cplx(0.2, 0.1), cplx(1, 2.5)});
  const double r = std::sqrt(-q.dot(kL3.real_flat() * q));
  EXPECT_NEAR(extract_b0_data(flat_metric_field(kL3), radial_unit_field(kL3), q, B0Variant::Lorentz).k, -2.0 / r,
              1e-12);
}

TEST(B0Data, FlatDefiniteRadialField) {
  AmbientSpace def(3, Signature::Definite);
  RVector p = at_point({0, cplx(0, 2), 0});
  auto b = extract_b0_data(flat_metric_field(def), radial_unit_field(def), p);
  EXPECT_NEAR(b.k, 1.0, 1e-12);
  // ∇_{Jξ}ξ = Jξ/r, and p* = −(ξ(k) + k²)/k with ξ(k) = −2/r²
  EXPECT_NEAR(b.p_star, -0.5, 1e-12);
}

TEST(B0Data, NonB0FieldRejected) {
  // a constant field has ∇ξ = 0, so k = 0
  AmbientSpace def(2, Signature::Definite);
  VectorField cst(4, [](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    return Vec<T>{T(1.0), T(0.0), T(0.0), T(0.0)};
  });
  EXPECT_THROW(extract_b0_data(flat_metric_field(def), cst, at_point({1, 1})), NotB0);
}

TEST(B0Data, StructureEquationOnInverseFamily) {
  MetricField g = potential_metric_field(kInverse, kL3);
  VectorField xi = radial_unit_field(kL3, &kInverse);
  for (const RVector& p : sample(kInverse, 3, 8)) {
    auto b = extract_b0_data(g, xi, p);
    const double xk = xi_derivative_of_k(g, xi, p);
    EXPECT_NEAR(b.p_star, -(xk + b.k * b.k) / b.k, 1e-8 * std::max(1.0, std::abs(b.p_star)));
  }
}

TEST(Decompose, ConstantCurvatureMetric) {
  MetricField g = potential_metric_field(kHyperbolic, kL3);
  VectorField xi = radial_unit_field(kL3, &kHyperbolic);
  for (const RVector& p : sample(kHyperbolic, 5, 9)) {
    auto qp = analyse_point(g, xi, p);
    EXPECT_NEAR(qp.decomposition.a, -1.0, 1e-6);
    EXPECT_NEAR(qp.decomposition.b, 0.0, 1e-6);
    EXPECT_NEAR(qp.decomposition.c, 0.0, 1e-6);
    EXPECT_LT(qp.decomposition.residual, 1e-6);
    EXPECT_LT(qp.decomposition.a_plus_k2, 0.0);
    EXPECT_EQ(qp.decomposition.cls, QCClass::Negative);
    EXPECT_LT(bochner(qp.bundle).norm(), 1e-7);
  }
}

TEST(Decompose, FlatIsZero) {
  AmbientSpace def(3, Signature::Definite);
  RVector p = at_point({0.3, cplx(0, 2), 1});
  auto qp = analyse_point(flat_metric_field(def), radial_unit_field(def), p);
  EXPECT_EQ(qp.decomposition.a, 0.0);
  EXPECT_EQ(qp.decomposition.b, 0.0);
  EXPECT_EQ(qp.decomposition.c, 0.0);
  EXPECT_EQ(qp.decomposition.cls, QCClass::Positive);
  EXPECT_EQ(bochner(qp.bundle).max_abs(), 0.0);
}

TEST(Decompose, InverseFamilyIsQuasiConstant) {
  MetricField g = potential_metric_field(kInverse, kL3);
  VectorField xi = radial_unit_field(kL3, &kInverse);
  std::mt19937_64 rng(10);
  for (const RVector& p : sample(kInverse, 10, 11)) {
    auto qp = analyse_point(g, xi, p);
    const auto& d = qp.decomposition;
    EXPECT_LT(d.residual, 1e-6);
    EXPECT_LT(d.a_plus_k2, 0.0);
    // H depends on the angle only, through a + b cos²θ + c cos⁴θ
    std::vector<RVector> xs;
    for (int t = 0; t < 20; ++t) xs.push_back(random_unit(rng, qp.bundle.g));
    auto prof = hsc_angle_profile(qp.bundle, qp.b0.xi, xs);
    EXPECT_LT(hsc_model_defect(prof, d.a, d.b, d.c), 1e-7 * std::max(1.0, std::abs(d.a)));
    Eigen::MatrixXd e = j_adapted_frame(qp.bundle.g, j0_matrix(3), {qp.b0.xi});
    EXPECT_NEAR(holomorphic_sectional_curvature(qp.bundle, e.col(0)), d.a + d.b + d.c, 1e-7);
    EXPECT_NEAR(holomorphic_sectional_curvature(qp.bundle, e.col(4)), d.a, 1e-7);
  }
}

TEST(Decompose, JsonReport) {
  QCDecomposition d;
  d.a = -1;
  d.k = 0.5;
  d.a_plus_k2 = -0.75;
  d.cls = QCClass::Negative;
  auto j = d.to_json();
  EXPECT_EQ(j["class"], "negative");
  EXPECT_EQ(j["a_plus_k2"], -0.75);
  for (const char* key : {"a", "b", "c", "residual", "k", "a_plus_k2", "class"}) EXPECT_TRUE(j.contains(key));
}

TEST(Bochner, SyntheticQuasiConstantTensor) {
  auto s = synthetic(12);
  Tensor4 r = 2.0 * s.basis.pi - 1.0 * s.basis.phi + 3.0 * s.basis.psi;
  Tensor4 b = bochner(r, s.g, j0_matrix(3));
  Tensor4 model = bochner_of_qc_model(s.basis, 3.0, 3);
  EXPECT_LT((b - model).max_abs(), 1e-9);
  EXPECT_LT(curvature_symmetry_defect(b), 1e-9);
  EXPECT_LT(ricci_trace(b, s.g), 1e-8);
}

TEST(Bochner, FlatnessEquivalence) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  int exceptions = 0;
  for (int t = 0; t < 50; ++t) {
    auto s = synthetic(100 + t);
    const double a = U(rng), b = U(rng);
    const double c = (t % 3 == 0) ? 0.0 : (U(rng) > 0 ? 1.0 : -1.0) * (0.1 + std::abs(U(rng)));
    Tensor4 r = a * s.basis.pi + b * s.basis.phi + c * s.basis.psi;
    auto d = decompose(r, s.basis, 1.0);
    auto f = bochner_flat(bochner(r, s.g, j0_matrix(3)), d);
    EXPECT_EQ(f.flat, c == 0.0);
    if (!f.consistent) ++exceptions;
  }
  EXPECT_EQ(exceptions, 0);
}

TEST(Bochner, RejectsNonKahlerTensor) {
  auto s = synthetic(14);
  std::mt19937_64 rng(15);
  std::normal_distribution<double> N;
  Tensor4 r(6);
  for (double& v : r.data()) v = N(rng);
  EXPECT_THROW(bochner(r, s.g, j0_matrix(3)), NotKahler);
}

TEST(RadialLaw, DerivativeOfAAlongTheRay) {
  for (const PotentialFamily& fam : {kHyperbolic, kInverse}) {
    MetricField g = potential_metric_field(fam, kL3);
    VectorField xi = radial_unit_field(kL3, &fam);
    for (const RVector& p : sample(fam, 3, 12)) {
      auto law = radial_derivative_law(g, xi, p);
      EXPECT_NEAR(law.da, law.predicted, 1e-4 * std::max(std::abs(law.da), std::abs(law.predicted)) + 1e-8);
    }
  }
  // on the inverse family the law is not trivially 0 = 0
  MetricField g = potential_metric_field(kInverse, kL3);
  auto law = radial_derivative_law(g, radial_unit_field(kL3, &kInverse), sample(kInverse, 1, 13)[0]);
  EXPECT_GT(std::abs(law.da), 1e-2);
}
