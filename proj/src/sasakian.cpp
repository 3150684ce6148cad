#include "qck/sasakian.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace qck {

namespace {

Vec<double> as_vec(const RVector& v) { return Vec<double>(v.data(), v.data() + v.size()); }

// Everything the α-Sasakian and space-form tests need, in some basis of
// the (2n−1)-dimensional tangent space.
struct TangentData {
  Eigen::MatrixXd g;
  RVector xi;
  Eigen::MatrixXd phi;
  Eigen::MatrixXd dxi;                // column i: D_{e_i} ξ
  std::vector<Eigen::MatrixXd> dphi;  // dphi[i]: the endomorphism D_{e_i} φ
  Tensor4 k;
};

double gnorm(const Eigen::MatrixXd& g, const RVector& v) { return std::sqrt(std::max(0.0, v.dot(g * v))); }

SasakianReport evaluate(const TangentData& t, const SasakianOptions& opt) {
  const int d = static_cast<int>(t.g.rows());
  RVector eta = t.g * t.xi;
  SasakianReport rep;

  for (int i = 0; i < d; ++i) {
    RVector ei = RVector::Unit(d, i);
    rep.identity_defect = std::max(rep.identity_defect, (t.phi * (t.phi * ei) + ei - eta(i) * t.xi).cwiseAbs().maxCoeff());
    for (int j = 0; j < d; ++j) {
      RVector ej = RVector::Unit(d, j);
      double lhs = (t.phi * ei).dot(t.g * (t.phi * ej));
      rep.identity_defect = std::max(rep.identity_defect, std::abs(lhs - t.g(i, j) + eta(i) * eta(j)));
    }
  }
  rep.identity_defect = std::max(rep.identity_defect, (t.phi * t.xi).cwiseAbs().maxCoeff());

  rep.alpha = (t.dxi.transpose() * t.g * t.phi).trace() / (t.phi.transpose() * t.g * t.phi).trace();
  for (int i = 0; i < d; ++i) {
    rep.alpha_defect = std::max(rep.alpha_defect, gnorm(t.g, t.dxi.col(i) - rep.alpha * t.phi.col(i)));
    for (int j = 0; j < d; ++j) {
      RVector expect = rep.alpha * (eta(j) * RVector::Unit(d, i) - t.g(i, j) * t.xi);
      rep.phi_defect = std::max(rep.phi_defect, gnorm(t.g, t.dphi[i].col(j) - expect));
    }
  }

  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> N;
  std::vector<double> cs;
  for (int s = 0; s < std::max(2, opt.samples); ++s) {
    RVector x(d);
    for (int i = 0; i < d; ++i) x(i) = N(rng);
    x -= eta.dot(x) * t.xi;
    RVector px = t.phi * x;
    const double n2 = x.dot(t.g * x);
    cs.push_back(t.k.contract(x, px, px, x) / (n2 * n2));
  }
  double sum = 0.0;
  for (double v : cs) sum += v;
  rep.c = sum / static_cast<double>(cs.size());
  rep.c_spread = *std::max_element(cs.begin(), cs.end()) - *std::min_element(cs.begin(), cs.end());
  rep.c_plus_3a2 = rep.c + 3.0 * rep.alpha * rep.alpha;

  // space-form model with (c + 3α²)/4 and (c − α²)/4
  const double A = rep.c_plus_3a2 / 4.0, B = (rep.c - rep.alpha * rep.alpha) / 4.0;
  Eigen::MatrixXd om = t.phi.transpose() * t.g;  // g(φx, y)
  const Eigen::MatrixXd& g = t.g;
  double worst = 0.0;
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int z = 0; z < d; ++z)
        for (int u = 0; u < d; ++u) {
          double m = A * (g(y, z) * g(x, u) - g(x, z) * g(y, u)) +
                     B * (om(y, z) * om(x, u) - om(x, z) * om(y, u) - 2.0 * om(x, y) * om(z, u) -
                          g(y, z) * eta(x) * eta(u) - g(x, u) * eta(y) * eta(z) + g(x, z) * eta(y) * eta(u) +
                          g(y, u) * eta(x) * eta(z));
          worst = std::max(worst, std::abs(t.k(x, y, z, u) - m));
        }
  rep.model_defect = worst / std::max(1.0, t.k.max_abs());
  rep.type = std::abs(rep.c_plus_3a2) < 1e-8 ? SasakianType::II
                                              : (rep.c_plus_3a2 > 0.0 ? SasakianType::I : SasakianType::III);

  if (opt.throw_on_failure) {
    if (!(rep.alpha_defect <= 1e-5) || !(rep.phi_defect <= 1e-5))
      throw NotSasakian("structure is not alpha-Sasakian: alpha defect " + std::to_string(rep.alpha_defect) +
                        ", phi defect " + std::to_string(rep.phi_defect));
    if (!(rep.c_spread <= 1e-6))
      throw NotSpaceForm("phi-holomorphic sectional curvature varies by " + std::to_string(rep.c_spread));
  }
  return rep;
}

}  // namespace

VectorField sphere_normal_field(const MetricField& metric, const AmbientSpace& space, NormalOrientation orientation) {
  Eigen::MatrixXd h = space.real_flat();
  const double s = space.signature == Signature::Lorentz ? -1.0 : 1.0;
  const double o = orientation == NormalOrientation::Inward ? -1.0 : 1.0;
  return VectorField(metric.dim(), [metric, h, s, o](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    // outward normal covector of the radius function, raised with g
    Vec<T> c = lift<T>(s * h) * x;
    Mat<T> g = metric(x);
    Vec<T> nv = solve(g, c);
    T len = sqrt(bilinear(g, nv, nv));
    for (auto& v : nv) v = o * v / len;
    return nv;
  });
}

ContactStructure induced_contact(const MetricField& metric, const AmbientSpace& space, const RVector& z, double r,
                                 NormalOrientation orientation) {
  const double w = square_norm(space, CPoint{real_to_complex(z)});
  if (space.signature == Signature::Lorentz && !(w < 0.0)) throw DomainError("point is not time-like");
  if (std::abs(std::sqrt(std::abs(w)) - r) > 1e-9 * std::max(1.0, r))
    throw DomainError("point is not on the sphere of radius " + std::to_string(r));
  ContactStructure cs;
  cs.point = z;
  cs.r = r;
  cs.g = metric.at(z);
  cs.xi = sphere_normal_field(metric, space, orientation).at(z);
  Eigen::MatrixXd j = j0_matrix(space.n);
  cs.xi_t = j * cs.xi;
  cs.eta_t = cs.g * cs.xi_t;
  const int m = 2 * space.n;
  cs.phi = j + cs.xi * cs.eta_t.transpose();
  Eigen::MatrixXd frame = j_adapted_frame(cs.g, j, {cs.xi});
  cs.tangent = frame.rightCols(m - 1);
  // contact-metric identities on the tangent frame
  for (int a = 0; a < m - 1; ++a) {
    RVector x = cs.tangent.col(a);
    RVector px = cs.phi * x;
    cs.identity_defect = std::max(cs.identity_defect, std::abs(px.dot(cs.g * cs.xi)));
    cs.identity_defect = std::max(
        cs.identity_defect, (cs.phi * px + x - cs.eta_t.dot(x) * cs.xi_t).cwiseAbs().maxCoeff());
    for (int b = 0; b < m - 1; ++b) {
      RVector y = cs.tangent.col(b);
      cs.identity_defect = std::max(cs.identity_defect, std::abs(px.dot(cs.g * (cs.phi * y)) - x.dot(cs.g * y) +
                                                                  cs.eta_t.dot(x) * cs.eta_t.dot(y)));
    }
  }
  cs.identity_defect = std::max(cs.identity_defect, (cs.phi * cs.xi_t).cwiseAbs().maxCoeff());
  return cs;
}

std::string to_string(SasakianType t) {
  switch (t) {
    case SasakianType::I: return "I";
    case SasakianType::II: return "II";
    default: return "III";
  }
}

nlohmann::json SasakianReport::to_json() const {
  nlohmann::json j = {{"alpha", alpha},           {"alpha_defect", alpha_defect}, {"phi_defect", phi_defect},
                      {"identity_defect", identity_defect}, {"c", c},        {"c_spread", c_spread},
                      {"c_plus_3a2", c_plus_3a2}, {"model_defect", model_defect}, {"type", to_string(type)}};
  if (gauss_defect) j["gauss_defect"] = *gauss_defect;
  return j;
}

SasakianReport alpha_sasakian_check(const MetricField& metric, const AmbientSpace& space, const RVector& z, double r,
                                    const SasakianOptions& opt, NormalOrientation orientation) {
  ContactStructure cs = induced_contact(metric, space, z, r, orientation);
  const int m = 2 * space.n, d = m - 1;
  Eigen::MatrixXd j = j0_matrix(space.n);
  Eigen::MatrixXd a = covariant_jacobian(metric, sphere_normal_field(metric, space, orientation), z);
  const Eigen::MatrixXd& tb = cs.tangent;
  auto coords = [&](const RVector& v) -> RVector { return tb.transpose() * (cs.g * v); };

  TangentData t;
  t.g = Eigen::MatrixXd::Identity(d, d);
  t.xi = RVector::Unit(d, 0);
  t.phi.resize(d, d);
  t.dxi.resize(d, d);
  Eigen::MatrixXd h(d, d);
  for (int i = 0; i < d; ++i) {
    t.phi.col(i) = coords(cs.phi * tb.col(i));
    t.dxi.col(i) = coords(j * (a * tb.col(i)));
    for (int k = 0; k < d; ++k) h(i, k) = -(a * tb.col(i)).dot(cs.g * tb.col(k));
  }
  for (int i = 0; i < d; ++i) {
    Eigen::MatrixXd dp(d, d);
    RVector ai = coords(a * tb.col(i));
    for (int k = 0; k < d; ++k) dp.col(k) = (k == 0 ? 1.0 : 0.0) * ai + h(i, k) * t.xi;
    t.dphi.push_back(dp);
  }
  CurvatureBundle b = riemann(metric, z);
  t.k = b.riemann.transformed(tb);
  for (int x = 0; x < d; ++x)
    for (int y = 0; y < d; ++y)
      for (int zz = 0; zz < d; ++zz)
        for (int u = 0; u < d; ++u) t.k(x, y, zz, u) += h(x, u) * h(y, zz) - h(x, zz) * h(y, u);

  SasakianReport rep = evaluate(t, opt);
  if (opt.gauss_check) {
    SphereChart chart = space.signature == Signature::Lorentz ? SphereChart(space, r) : SphereChart::around(space, z);
    RVector u = chart.coordinates(z);
    Tensor4 intrinsic = riemann(pullback(metric, chart), u).riemann;
    Eigen::MatrixXd to_chart = tb.transpose() * cs.g * chart.jacobian(u);
    Tensor4 extrinsic = t.k.transformed(to_chart);
    rep.gauss_defect = (intrinsic - extrinsic).max_abs() / std::max(1.0, intrinsic.max_abs());
  }
  return rep;
}

std::pair<double, double> phi_hsc(const MetricField& metric, const AmbientSpace& space, const RVector& z, double r,
                                  int samples, std::uint64_t seed) {
  SasakianOptions opt;
  opt.samples = samples;
  opt.seed = seed;
  opt.throw_on_failure = false;
  SasakianReport rep = alpha_sasakian_check(metric, space, z, r, opt);
  if (rep.c_spread > 1e-6)
    throw NotSpaceForm("phi-holomorphic sectional curvature varies by " + std::to_string(rep.c_spread));
  return {rep.c, rep.c_spread};
}

SasakianReport analyse_intrinsic(const IntrinsicContact& s, const RVector& u, const SasakianOptions& opt) {
  const int d = s.g.dim();
  Christoffel gam = christoffel(s.g, u);
  TangentData t;
  t.g = s.g.at(u);
  t.xi = s.xi.at(u);
  t.phi = s.phi.at(u);
  t.dxi = covariant_jacobian(gam, s.xi, u);
  Vec<double> uv = as_vec(u);
  for (int i = 0; i < d; ++i) {
    // (D_i φ)^k_l = ∂_i φ^k_l + Γ^k_{im} φ^m_l − Γ^m_{il} φ^k_m
    Mat<D1> pd = s.phi(seed_direction(uv, i));
    Eigen::MatrixXd dp(d, d), gi(d, d);
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        dp(k, l) = pd(k, l).d;
        gi(k, l) = gam(k, i, l);
      }
    t.dphi.push_back(dp + gi * t.phi - t.phi * gi);
  }
  t.k = riemann(s.g, u).riemann;
  return evaluate(t, opt);
}

IntrinsicContact sasakian_family_h1(double q, int n) {
  if (!(q > 0.0)) throw DomainError("family parameter q must be positive");
  AmbientSpace space(n, Signature::Lorentz);
  SphereChart chart(space, 1.0);
  Eigen::MatrixXd h = space.real_flat();
  Eigen::MatrixXd j = j0_matrix(n);
  const int m = 2 * n, d = chart.dim();

  // chart Jacobian, Z, J₀Z and η̃ = h′(J₀Z, ·) at any dual depth
  auto frame = [chart, m, d](const auto& u) {
    using T = typename std::decay_t<decltype(u)>::value_type;
    Mat<T> e(m, d);
    for (int a = 0; a < d; ++a) {
      Vec<Dual<T>> z = chart.embed(seed_direction(u, a));
      for (int i = 0; i < m; ++i) e(i, a) = z[i].d;
    }
    return e;
  };

  IntrinsicContact out;
  out.g = MetricField(d, [=](const auto& u) {
    using T = typename std::decay_t<decltype(u)>::value_type;
    Mat<T> e = frame(u);
    Vec<T> jz = lift<T>(j) * chart.embed(u);
    Vec<T> eta = e.transpose() * (lift<T>(h) * jz);
    Mat<T> g = e.transpose() * lift<T>(h) * e;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) g(a, b) = q * q * (g(a, b) + (1.0 + q * q) * eta[a] * eta[b]);
    return g;
  });
  out.xi = VectorField(d, [=](const auto& u) {
    using T = typename std::decay_t<decltype(u)>::value_type;
    Mat<T> e = frame(u);
    Vec<T> jz = lift<T>(j) * chart.embed(u);
    Vec<T> c = solve(e.transpose() * e, e.transpose() * jz);
    // base ξ̃ = −J₀Z: the orientation in which the h′ structure on the
    // unit hyperboloid is (−1)-Sasakian
    for (auto& v : c) v = -1.0 * v / (q * q);
    return c;
  });
  out.phi = EndomorphismField(d, [=](const auto& u) {
    using T = typename std::decay_t<decltype(u)>::value_type;
    Mat<T> e = frame(u);
    Vec<T> z = chart.embed(u);
    Vec<T> jz = lift<T>(j) * z;
    Vec<T> eta = e.transpose() * (lift<T>(h) * jz);
    // columns: J₀E_a − η̃(E_a)Z, then back to chart components
    Mat<T> img = lift<T>(j) * e;
    for (int a = 0; a < d; ++a)
      for (int i = 0; i < m; ++i) img(i, a) = img(i, a) - eta[a] * z[i];
    return solve(e.transpose() * e, e.transpose() * img);
  });
  return out;
}

SasakianReport sasakian_family_report(double q, const RVector& z, const SasakianOptions& opt) {
  const int n = static_cast<int>(z.size() / 2);
  AmbientSpace space(n, Signature::Lorentz);
  const double w = square_norm(space, CPoint{real_to_complex(z)});
  if (std::abs(w + 1.0) > 1e-9) throw DomainError("point is not on the unit Lorentz hypersphere");
  SphereChart chart(space, 1.0);
  return analyse_intrinsic(sasakian_family_h1(q, n), chart.coordinates(z), opt);
}

}  // namespace qck
