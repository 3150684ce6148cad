#include "qck/qc.hpp"

#include <algorithm>
#include <cmath>

namespace qck {

Eigen::MatrixXd j_adapted_frame(const Eigen::MatrixXd& g, const Eigen::MatrixXd& j, const std::vector<RVector>& lead) {
  const int m = static_cast<int>(g.rows());
  const double scale = std::max(1.0, g.cwiseAbs().maxCoeff());
  std::vector<RVector> cand = lead;
  for (int i = 0; i < m; ++i) cand.push_back(RVector::Unit(m, i));
  Eigen::MatrixXd out(m, m);
  int have = 0;
  auto orthogonalise = [&](RVector v) {
    for (int c = 0; c < have; ++c) {
      RVector e = out.col(c);
      v -= (e.dot(g * v) / e.dot(g * e)) * e;
    }
    return v;
  };
  for (const RVector& c : cand) {
    if (have >= m) break;
    RVector v = orthogonalise(orthogonalise(c));
    const double n2 = v.dot(g * v);
    if (std::abs(n2) < 1e-10 * scale * v.squaredNorm() || v.norm() < 1e-8) continue;
    v /= std::sqrt(std::abs(n2));
    out.col(have++) = v;
    out.col(have++) = j * v;
  }
  if (have != m) throw DegenerateBasis("could not complete a J-adapted frame");
  return out;
}

namespace {

void require_unit(const Eigen::MatrixXd& g, const RVector& xi) {
  const double n2 = xi.dot(g * xi);
  if (std::abs(std::abs(n2) - 1.0) > 1e-10)
    throw FrameError("frame vector is not unit (g(xi,xi) = " + std::to_string(n2) + ")");
}

Tensor4 symmetrised_check(Tensor4 t, bool curvature_like) {
  if (curvature_like) {
    t.set_symmetry(Symmetry::CurvatureLike);
    check_claimed_symmetries(t);
  }
  return t;
}

}  // namespace

BasisTensors build_basis_tensors(const Eigen::MatrixXd& g, const RVector& xi, const Eigen::MatrixXd& j) {
  require_unit(g, xi);
  const int m = static_cast<int>(g.rows());
  Eigen::MatrixXd om = j.transpose() * g;  // Ω(X,Y) = g(JX,Y)
  RVector eta = g * xi, etat = g * (j * xi);
  Tensor4 pi(m), phi1(m), phi2(m), psi(m);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      for (int z = 0; z < m; ++z)
        for (int u = 0; u < m; ++u) {
          pi(x, y, z, u) = 0.25 * (g(y, z) * g(x, u) - g(x, z) * g(y, u) - 2.0 * om(x, y) * om(z, u) +
                                   om(y, z) * om(x, u) - om(x, z) * om(y, u));
          phi1(x, y, z, u) =
              0.125 * (g(y, z) * (eta(x) * eta(u) + etat(x) * etat(u)) - g(x, z) * (eta(y) * eta(u) + etat(y) * etat(u)) +
                       om(y, z) * (eta(x) * etat(u) - etat(x) * eta(u)) -
                       om(x, z) * (eta(y) * etat(u) - etat(y) * eta(u)) -
                       2.0 * om(x, y) * (eta(z) * etat(u) - etat(z) * eta(u)));
          phi2(x, y, z, u) =
              0.125 * ((eta(y) * eta(z) + etat(y) * etat(z)) * g(x, u) - (eta(x) * eta(z) + etat(x) * etat(z)) * g(y, u) +
                       (eta(y) * etat(z) - etat(y) * eta(z)) * om(x, u) -
                       (eta(x) * etat(z) - etat(x) * eta(z)) * om(y, u) -
                       2.0 * (eta(x) * etat(y) - etat(x) * eta(y)) * om(z, u));
          psi(x, y, z, u) = (eta(x) * etat(y) - etat(x) * eta(y)) * (etat(z) * eta(u) - eta(z) * etat(u));
        }
  BasisTensors b;
  b.pi = symmetrised_check(pi, true);
  b.phi1 = phi1;
  b.phi2 = phi2;
  b.phi = symmetrised_check(phi1 + phi2, true);
  b.psi = symmetrised_check(psi, true);
  return b;
}

BasisTensors build_basis_tensors(const Eigen::MatrixXd& g, const RVector& xi) {
  return build_basis_tensors(g, xi, j0_matrix(static_cast<int>(g.rows() / 2)));
}

// ---------------------------------------------------------------------------

B0Data extract_b0_data(const MetricField& metric, const VectorField& xi, const RVector& p, B0Variant variant,
                       const Eigen::MatrixXd* jp) {
  const int m = metric.dim();
  Eigen::MatrixXd j = jp ? *jp : j0_matrix(m / 2);
  Christoffel gam = christoffel(metric, p);
  Eigen::MatrixXd a = covariant_jacobian(gam, xi, p);
  Eigen::MatrixXd g = metric.at(p);
  B0Data out;
  out.variant = variant;
  out.xi = xi.at(p);
  require_unit(g, out.xi);
  RVector jxi = j * out.xi;
  Eigen::MatrixXd frame = j_adapted_frame(g, j, {out.xi});
  const double sgn = variant == B0Variant::Riemannian ? 1.0 : -1.0;
  for (int c = 2; c < m; ++c) {
    RVector x = frame.col(c);
    out.per_direction.push_back(sgn * 2.0 * x.dot(g * (a * x)) / x.dot(g * x));
  }
  double lo = *std::min_element(out.per_direction.begin(), out.per_direction.end());
  double hi = *std::max_element(out.per_direction.begin(), out.per_direction.end());
  out.k = 0.0;
  for (double v : out.per_direction) out.k += v;
  out.k /= static_cast<double>(out.per_direction.size());
  out.spread = hi - lo;
  for (int c = 2; c < m; ++c) {
    RVector x = frame.col(c);
    out.shape_defect = std::max(out.shape_defect, (a * x - sgn * 0.5 * out.k * x).cwiseAbs().maxCoeff());
  }
  const double scale = std::max(1.0, std::abs(out.k));
  out.shape_defect /= scale;
  out.p_star = -jxi.dot(g * (a * jxi)) / jxi.dot(g * jxi);
  if (!(std::abs(out.k) > 1e-12)) throw NotB0("k vanishes");
  if (out.spread > 1e-6 * scale || out.shape_defect > 1e-6)
    throw NotB0("field is not a B0 frame: k spread " + std::to_string(out.spread) + ", shape defect " +
                std::to_string(out.shape_defect));
  return out;
}

double xi_derivative_of_k(const MetricField& metric, const VectorField& xi, const RVector& p, double h) {
  RVector dir = xi.at(p);
  static constexpr double kOffsets[4] = {-2.0, -1.0, 1.0, 2.0};
  static constexpr double kWeights[4] = {1.0, -8.0, 8.0, -1.0};
  double s = 0.0;
  for (int q = 0; q < 4; ++q) s += kWeights[q] * extract_b0_data(metric, xi, p + kOffsets[q] * h * dir).k;
  return s / (12.0 * h);
}

// ---------------------------------------------------------------------------

std::string to_string(QCClass c) {
  switch (c) {
    case QCClass::Positive: return "positive";
    case QCClass::Negative: return "negative";
    default: return "zero";
  }
}

nlohmann::json QCDecomposition::to_json() const {
  return {{"a", a}, {"b", b}, {"c", c}, {"residual", residual}, {"k", k}, {"a_plus_k2", a_plus_k2},
          {"class", to_string(cls)}};
}

QCDecomposition decompose(const Tensor4& r, const BasisTensors& basis, double k) {
  FitResult fit = tensor4_fit(r, {basis.pi, basis.phi, basis.psi});
  QCDecomposition d;
  d.a = fit.coefficients[0];
  d.b = fit.coefficients[1];
  d.c = fit.coefficients[2];
  d.residual = fit.residual;
  d.k = k;
  d.a_plus_k2 = d.a + k * k;
  d.cls = std::abs(d.a_plus_k2) < 1e-8 ? QCClass::Zero : (d.a_plus_k2 > 0.0 ? QCClass::Positive : QCClass::Negative);
  return d;
}

QCPoint analyse_point(const MetricField& metric, const VectorField& xi, const RVector& p, B0Variant variant,
                      const Eigen::MatrixXd* j) {
  QCPoint out;
  out.b0 = extract_b0_data(metric, xi, p, variant, j);
  out.bundle = riemann(metric, p, &out.b0.xi);
  Eigen::MatrixXd jm = j ? *j : j0_matrix(metric.dim() / 2);
  out.basis = build_basis_tensors(out.bundle.g, out.b0.xi, jm);
  out.decomposition = decompose(out.bundle.riemann, out.basis, out.b0.k);
  return out;
}

RadialLaw radial_derivative_law(const MetricField& metric, const VectorField& xi, const RVector& p, double h) {
  auto a_at = [&](double lam) { return analyse_point(metric, xi, p * (1.0 + lam)).decomposition.a; };
  RadialLaw out;
  QCPoint qp = analyse_point(metric, xi, p);
  out.a = qp.decomposition.a;
  out.b = qp.decomposition.b;
  out.k = qp.decomposition.k;
  out.eta_radial = qp.b0.xi.dot(qp.bundle.g * p);
  out.da = (a_at(-2 * h) - 8 * a_at(-h) + 8 * a_at(h) - a_at(2 * h)) / (12 * h);
  out.predicted = out.k * out.b / 2.0 * out.eta_radial;
  return out;
}

std::vector<AngleSample> hsc_angle_profile(const CurvatureBundle& b, const RVector& xi,
                                           const std::vector<RVector>& samples, const Eigen::MatrixXd& j) {
  std::vector<AngleSample> out;
  RVector eta = b.g * xi, etat = b.g * (j * xi);
  for (const RVector& x : samples) {
    AngleSample s;
    s.cos2 = std::clamp(std::pow(eta.dot(x), 2) + std::pow(etat.dot(x), 2), 0.0, 1.0);
    s.theta = std::acos(std::sqrt(s.cos2));
    s.hsc = holomorphic_sectional_curvature(b, x, j);
    out.push_back(s);
  }
  return out;
}

std::vector<AngleSample> hsc_angle_profile(const CurvatureBundle& b, const RVector& xi,
                                           const std::vector<RVector>& samples) {
  return hsc_angle_profile(b, xi, samples, j0_matrix(static_cast<int>(xi.size() / 2)));
}

double hsc_model_defect(const std::vector<AngleSample>& profile, double a, double b, double c) {
  double worst = 0.0;
  for (const auto& s : profile) worst = std::max(worst, std::abs(s.hsc - (a + b * s.cos2 + c * s.cos2 * s.cos2)));
  return worst;
}

// ---------------------------------------------------------------------------

Eigen::MatrixXd ricci_of(const Tensor4& r, const Eigen::MatrixXd& g) {
  const int m = r.dim();
  Eigen::MatrixXd ginv = g.inverse();
  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(m, m);
  for (int jj = 0; jj < m; ++jj)
    for (int k = 0; k < m; ++k)
      for (int i = 0; i < m; ++i)
        for (int l = 0; l < m; ++l) rho(jj, k) += ginv(i, l) * r(i, jj, k, l);
  return rho;
}

double ricci_trace(const Tensor4& t, const Eigen::MatrixXd& g) { return ricci_of(t, g).cwiseAbs().maxCoeff(); }

Tensor4 bochner(const Tensor4& r, const Eigen::MatrixXd& g, const Eigen::MatrixXd& j) {
  const int m = r.dim();
  const int n = m / 2;
  const double jdef = j_invariance_defect(r, j);
  if (jdef > 1e-6) throw NotKahler("curvature tensor is not J-invariant (defect " + std::to_string(jdef) + ")");

  Eigen::MatrixXd rho = ricci_of(r, g);
  const double tau = (g.inverse().cwiseProduct(rho)).sum();

  // work in a J-adapted frame e, then in Z_a = ½(e_{2a} − i Je_{2a}) and conjugates
  Eigen::MatrixXd e = j_adapted_frame(g, j);
  const cplx I(0.0, 1.0);
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(m, m);  // columns: Z_1..Z_n, Z̄_1..Z̄_n in the e-frame
  Eigen::MatrixXcd back = Eigen::MatrixXcd::Zero(m, m);  // columns: e_i in the Z-frame
  for (int a = 0; a < n; ++a) {
    w(2 * a, a) = 0.5;
    w(2 * a + 1, a) = -0.5 * I;
    w(2 * a, n + a) = 0.5;
    w(2 * a + 1, n + a) = 0.5 * I;
    back(a, 2 * a) = 1.0;
    back(n + a, 2 * a) = 1.0;
    back(a, 2 * a + 1) = I;
    back(n + a, 2 * a + 1) = -I;
  }
  Tensor4 re = r.transformed(e);
  CTensor4 rc(m);
  for (std::size_t k = 0; k < re.data().size(); ++k) rc.data()[k] = re.data()[k];
  rc = rc.transformed(w);
  Eigen::MatrixXcd gc = w.transpose() * (e.transpose() * g * e).cast<cplx>() * w;
  Eigen::MatrixXcd pc = w.transpose() * (e.transpose() * rho * e).cast<cplx>() * w;

  CTensor4 bc(m);
  const double c1 = 1.0 / (n + 2.0);
  const double c2 = tau / (2.0 * (n + 1.0) * (n + 2.0));
  for (int al = 0; al < n; ++al)
    for (int be = 0; be < n; ++be)
      for (int ga = 0; ga < n; ++ga)
        for (int de = 0; de < n; ++de) {
          const int B = n + be, D = n + de;
          cplx v = rc(al, B, ga, D) -
                   c1 * (gc(al, B) * pc(ga, D) + gc(ga, B) * pc(al, D) + gc(ga, D) * pc(al, B) + gc(al, D) * pc(ga, B)) +
                   c2 * (gc(al, B) * gc(ga, D) + gc(ga, B) * gc(al, D));
          bc(al, B, ga, D) = v;
          bc(B, al, ga, D) = -v;
          bc(al, B, D, ga) = -v;
          bc(B, al, D, ga) = v;
        }
  CTensor4 be_frame = bc.transformed(back);
  Tensor4 out(m);
  for (std::size_t k = 0; k < out.data().size(); ++k) out.data()[k] = be_frame.data()[k].real();
  return out.transformed(Eigen::MatrixXd(e.inverse()));
}

Tensor4 bochner(const CurvatureBundle& b) {
  return bochner(b.riemann, b.g, j0_matrix(static_cast<int>(b.g.rows() / 2)));
}

Tensor4 bochner_of_qc_model(const BasisTensors& basis, double c, int n) {
  return c * (2.0 / ((n + 1.0) * (n + 2.0)) * basis.pi - 4.0 / (n + 2.0) * basis.phi + basis.psi);
}

BochnerFlatness bochner_flat(const Tensor4& bochner_tensor, const QCDecomposition& d) {
  BochnerFlatness f;
  f.norm = bochner_tensor.norm();
  f.flat = f.norm < 1e-6;
  f.c_vanishes = std::abs(d.c) < 1e-6;
  f.consistent = f.flat == f.c_vanishes;
  return f;
}

}  // namespace qck
