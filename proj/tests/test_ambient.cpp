#include <gtest/gtest.h>

#include <cmath>

#include "qck/ambient.hpp"

using namespace qck;

namespace {

const AmbientSpace kLorentz3(3, Signature::Lorentz);
const PotentialFamily kLog = LogFamily{-1.0, 1.0};

CPoint pt(std::initializer_list<cplx> z) { return CPoint{std::vector<cplx>(z)}; }

// The constant-curvature metric 4/(r²−1)·(h′ + r²/(r²−1)(η′⊗η′ + η̃′⊗η̃′)),
// written out directly in real coordinates.
Eigen::MatrixXd reference_metric(const AmbientSpace& s, const CPoint& z) {
  RVector x = complex_to_real(z.z);
  Eigen::MatrixXd h = s.real_flat();
  const double r2 = -square_norm(s, z);
  const double r = std::sqrt(r2);
  RVector eta = h * x / r, eta_t = h * apply_J0(x) / r;
  return 4.0 / (r2 - 1.0) * (h + r2 / (r2 - 1.0) * (eta * eta.transpose() + eta_t * eta_t.transpose()));
}

}  // namespace

TEST(SquareNorm, Examples) {
  EXPECT_EQ(square_norm(kLorentz3, pt({0, 0, cplx(0, 1)})), -1.0);
  EXPECT_EQ(square_norm(kLorentz3, pt({1, 0, 2})), -3.0);
  EXPECT_EQ(square_norm(AmbientSpace(2, Signature::Definite), pt({cplx(0, 3), 4})), 25.0);
}

TEST(TimelikeDomain, Examples) {
  EXPECT_TRUE(in_timelike_domain(kLorentz3, pt({0, 0, cplx(0, 1)})));
  EXPECT_FALSE(in_timelike_domain(kLorentz3, pt({1, 0, 1})));
  EXPECT_FALSE(in_timelike_domain(kLorentz3, pt({2, 0, 1})));
}

TEST(RadialFrame, AmbientNormalisation) {
  auto fr = radial_frame(kLorentz3, pt({0, 0, cplx(0, 2)}), FrameMetric::Ambient);
  EXPECT_EQ(fr.r, 2.0);
  EXPECT_EQ(fr.xi, complex_to_real({0, 0, cplx(0, 1)}));
  EXPECT_NEAR(fr.eta.dot(fr.xi), -1.0, 1e-15);
  EXPECT_THROW(radial_frame(kLorentz3, pt({1, 0, 1}), FrameMetric::Ambient), DomainError);
}

TEST(RadialFrame, PotentialNormalisation) {
  auto fr = radial_frame(kLorentz3, pt({0, 0, cplx(0, 2)}), FrameMetric::Potential, &kLog);
  // g(ξ′, ξ′) = 4/9, so ξ = (3/2) ξ′
  RVector expect = 1.5 * complex_to_real({0, 0, cplx(0, 1)});
  EXPECT_LT((fr.xi - expect).norm(), 1e-14);
  EXPECT_NEAR(fr.eta.dot(fr.xi), 1.0, 1e-12);
  EXPECT_NEAR(fr.eta_tilde.dot(fr.j_xi), 1.0, 1e-12);
  EXPECT_NEAR(fr.eta.dot(fr.j_xi), 0.0, 1e-12);
}

TEST(Admissibility, Examples) {
  auto inv = admissibility(InverseFamily{}, kLorentz3, -1.0);
  EXPECT_DOUBLE_EQ(inv.f_prime, 1.0);
  EXPECT_DOUBLE_EQ(inv.f_prime_plus_w_f_second, -1.0);
  EXPECT_TRUE(inv.ok);

  auto lg = admissibility(kLog, kLorentz3, -4.0);
  EXPECT_NEAR(lg.f_prime, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(lg.f_prime_plus_w_f_second, -2.0 / 9.0, 1e-15);
  EXPECT_TRUE(lg.ok);

  // −ln(−w): the scale-invariant borderline
  PotentialFamily border = LogFamily{-2.0, 0.0};
  for (double w : {-0.5, -2.0, -7.0}) {
    auto rep = admissibility(border, kLorentz3, w);
    EXPECT_FALSE(rep.ok);
    EXPECT_TRUE(rep.degenerate);
    EXPECT_NEAR(rep.f_prime_plus_w_f_second, 0.0, 1e-15);
  }
  EXPECT_THROW(admissibility(kLog, kLorentz3, -0.5), DomainError);
}

TEST(Admissibility, ClosedFormDerivativesMatchDuals) {
  // series families differentiate through nested duals; compare against
  // the closed forms of the log and inverse families at the same w
  PotentialFamily inv = InverseFamily{};
  UnivariateFn f_inv([](const auto& w) { return -1.0 / w; });
  UnivariateFn f_log([](const auto& w) { return -2.0 * log(-w - 1.0); });
  for (double w : {-1.3, -2.0, -5.5})
    for (int k = 0; k <= 4; ++k) {
      EXPECT_NEAR(inv.derivative(w, k), derivative(f_inv, w, k), 1e-12 * std::abs(derivative(f_inv, w, k)));
      EXPECT_NEAR(kLog.derivative(w, k), derivative(f_log, w, k), 1e-12 * std::abs(derivative(f_log, w, k)));
    }
  PotentialFamily series = SeriesFamily{{0.3, 1.0, -0.5, 0.25}};
  EXPECT_NEAR(series.derivative(-2.0, 1), 1.0 + 2.0 + 0.75 * 4.0, 1e-13);
  EXPECT_NEAR(series.derivative(-2.0, 3), 1.5, 1e-13);
  EXPECT_EQ(series.derivative(-2.0, 4), 0.0);
}

TEST(PotentialMetric, ConstantCurvatureExample) {
  CPoint z = pt({0, 0, cplx(0, 2)});
  Eigen::MatrixXd g = hermitian_to_real_metric(potential_metric(kLog, kLorentz3, z));
  Eigen::MatrixXd h = kLorentz3.real_flat();
  // restriction to D is 2f′·h′ = (4/3) h′
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(g(i, j), 4.0 / 3.0 * h(i, j), 1e-14);
  RVector xi = complex_to_real({0, 0, cplx(0, 1)});
  EXPECT_NEAR(xi.dot(g * xi), 4.0 / 9.0, 1e-14);
  EXPECT_LT((g - reference_metric(kLorentz3, z)).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(PotentialMetric, ClosedFormMatchesDualDifferentiation) {
  SampleSpec spec{20, 11, 1.2, 3.0};
  for (const PotentialFamily& fam : {kLog, PotentialFamily(InverseFamily{})}) {
    for (const CPoint& z : sample_points(kLorentz3, spec, &fam)) {
      Eigen::MatrixXcd a = potential_metric(fam, kLorentz3, z).matrix();
      Eigen::MatrixXcd b = potential_metric_by_differentiation(fam, kLorentz3, z).matrix();
      EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, a.cwiseAbs().maxCoeff()));
      Eigen::MatrixXd g = hermitian_to_real_metric(potential_metric(fam, kLorentz3, z));
      EXPECT_GT(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(g).eigenvalues().minCoeff(), 0.0);
      Eigen::MatrixXd j = j0_matrix(3);
      EXPECT_LT((j.transpose() * g * j - g).cwiseAbs().maxCoeff(), 1e-12 * g.cwiseAbs().maxCoeff());
    }
  }
}

TEST(PotentialMetric, FlatDefiniteFromHalfW) {
  AmbientSpace def(3, Signature::Definite);
  PotentialFamily half = SeriesFamily{{0.0, 0.5}};
  CPoint z = pt({cplx(0.3, -1), 2, cplx(0, 0.5)});
  Eigen::MatrixXd g = hermitian_to_real_metric(potential_metric(half, def, z));
  EXPECT_EQ(g, Eigen::MatrixXd::Identity(6, 6));
}

TEST(PotentialMetric, InadmissibleThrows) {
  PotentialFamily border = LogFamily{-2.0, 0.0};
  EXPECT_THROW(potential_metric(border, kLorentz3, pt({0, 0, 2})), AdmissibilityError);
  try {
    potential_metric(border, kLorentz3, pt({0, 0, 2}));
  } catch (const InadmissiblePotential& e) {
    EXPECT_TRUE(e.degenerate());
    EXPECT_EQ(e.kind(), "AdmissibilityError");
  }
  PotentialFamily flat_rescale = SeriesFamily{{0.0, -0.5}};
  EXPECT_THROW(potential_metric(flat_rescale, kLorentz3, pt({0, 0, 2})), AdmissibilityError);
}

TEST(ConformalFactors, LogFamilyAtTwo) {
  auto cf = conformal_factors(kLog, 2.0);
  EXPECT_NEAR(cf.u, -0.5 * std::log(4.0 / 3.0), 1e-15);
  // e^{−2v} = r₀²/(r² − r₀²) = 1/3
  EXPECT_NEAR(std::exp(-2.0 * cf.v), 1.0 / 3.0, 1e-14);
}

TEST(ConformalFactors, InverseFamilyAtOne) {
  auto cf = conformal_factors(InverseFamily{}, 1.0);
  EXPECT_NEAR(std::exp(-2.0 * cf.v), 1.0, 1e-14);
  EXPECT_NEAR(std::exp(-2.0 * cf.u), 2.0, 1e-14);
}

TEST(ConformalFactors, OutsideConformalDomain) {
  // f = w + w²: r²f″/f′ = 2r²/(1 − 2r²) < 0 for r > 1/√2
  PotentialFamily p = SeriesFamily{{0.0, 1.0, 1.0}};
  EXPECT_THROW(conformal_factors(p, 0.3), Error);
}

TEST(ConformalPair, ReproducesPotentialMetric) {
  SampleSpec spec{10, 5, 1.1, 3.0};
  for (const PotentialFamily& fam : {kLog, PotentialFamily(InverseFamily{})}) {
    auto [u, v] = conformal_profiles(fam);
    for (const CPoint& z : sample_points(kLorentz3, spec, &fam)) {
      Eigen::MatrixXcd a = metric_from_conformal_pair(kLorentz3, u, v, z).matrix();
      Eigen::MatrixXcd b = potential_metric(fam, kLorentz3, z).matrix();
      EXPECT_LT((a - b).cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff()));
      if (std::holds_alternative<LogFamily>(fam.kind())) {
        Eigen::MatrixXd ref = reference_metric(kLorentz3, z);
        EXPECT_LT((hermitian_to_real_metric(HermitianMatrix::from_upper(a)) - ref).cwiseAbs().maxCoeff(),
                  1e-12 * std::max(1.0, ref.cwiseAbs().maxCoeff()));
      }
    }
  }
}

TEST(ConformalPair, ZeroProfiles) {
  UnivariateFn zero([](const auto& r) { return 0.0 * r; });
  CPoint z = pt({0.2, 0, cplx(0, 2)});
  Eigen::MatrixXd g = hermitian_to_real_metric(metric_from_conformal_pair(kLorentz3, zero, zero, z));
  Eigen::MatrixXd h = kLorentz3.real_flat();
  RVector x = complex_to_real(z.z);
  const double r = std::sqrt(-square_norm(kLorentz3, z));
  RVector eta = h * x / r, eta_t = h * apply_J0(x) / r;
  Eigen::MatrixXd expect = h + 2.0 * (eta * eta.transpose() + eta_t * eta_t.transpose());
  EXPECT_LT((g - expect).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(PotentialFamilyJson, RoundTrip) {
  for (const PotentialFamily& f : {kLog, PotentialFamily(InverseFamily{}), PotentialFamily(SeriesFamily{{0, -0.5}}),
                                   PotentialFamily(Log1pFamily{2.0})}) {
    auto j = f.to_json();
    EXPECT_EQ(PotentialFamily::from_json(j).to_json(), j);
  }
  EXPECT_EQ(kLog.to_json(), nlohmann::json::parse(R"({"kind":"log","a":-1.0,"r0":1.0})"));
  EXPECT_THROW(PotentialFamily::from_json(nlohmann::json::parse(R"({"kind":"cubic"})")), ConfigError);
}

TEST(Sampling, DeterministicAndInDomain) {
  SampleSpec spec{25, 42, 1.1, 3.0};
  auto a = sample_points(kLorentz3, spec, &kLog);
  auto b = sample_points(kLorentz3, spec, &kLog);
  ASSERT_EQ(a.size(), 25u);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].z, b[i].z);
    const double r = std::sqrt(-square_norm(kLorentz3, a[i]));
    EXPECT_GE(r, 1.1 - 1e-12);
    EXPECT_LE(r, 3.0 + 1e-12);
  }
}
