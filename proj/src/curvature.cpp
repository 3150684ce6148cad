#include "qck/curvature.hpp"

#include <algorithm>
#include <cmath>

namespace qck {

namespace {

Vec<double> as_vec(const RVector& v) { return Vec<double>(v.data(), v.data() + v.size()); }

template <class T>
Vec<Dual<T>> seed(const Vec<T>& p, int dir) {
  Vec<Dual<T>> x(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) x[j] = Dual<T>(p[j], T(static_cast<int>(j) == dir ? 1.0 : 0.0));
  return x;
}

template <class T>
Mat<T> tangent_part(const Mat<Dual<T>>& m) {
  Mat<T> r(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).d;
  return r;
}

// Γ^k_ij = ½ g^{kl}(∂_i g_jl + ∂_j g_il − ∂_l g_ij), flattened as in Christoffel.
template <class T>
std::vector<T> gamma_at(const MetricField& metric, const Vec<T>& p, Mat<T>* g_out = nullptr,
                        std::vector<Mat<T>>* dg_out = nullptr) {
  const int m = metric.dim();
  Mat<T> g = metric(p);
  Mat<T> ginv = inverse(g);
  std::vector<Mat<T>> dg;
  dg.reserve(static_cast<std::size_t>(m));
  for (int l = 0; l < m; ++l) dg.push_back(tangent_part(metric(seed(p, l))));
  std::vector<T> out(static_cast<std::size_t>(m * m * m), T(0.0));
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      for (int l = 0; l < m; ++l) {
        T lower = 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        for (int k = 0; k < m; ++k) {
          T v = ginv(k, l) * lower;
          out[static_cast<std::size_t>((k * m + i) * m + j)] += v;
          if (j != i) out[static_cast<std::size_t>((k * m + j) * m + i)] += v;
        }
      }
  if (g_out) *g_out = g;
  if (dg_out) *dg_out = std::move(dg);
  return out;
}

void require_nondegenerate(const Eigen::MatrixXd& g) {
  if (!g.allFinite()) throw NumericalBreakdown("metric has non-finite components");
  const double det = g.determinant();
  if (!(std::abs(det) > 1e-12)) throw DegenerateMetric("metric is degenerate (|det| = " + std::to_string(std::abs(det)) + ")");
}

// Γ at p by plain double evaluation (first derivatives of g still exact).
std::vector<double> gamma_double(const MetricField& metric, const RVector& p) {
  return gamma_at<double>(metric, as_vec(p));
}

std::vector<std::vector<double>> gamma_derivatives_exact(const MetricField& metric, const RVector& p) {
  const int m = metric.dim();
  Vec<double> pv = as_vec(p);
  std::vector<std::vector<double>> out;
  for (int i = 0; i < m; ++i) {
    std::vector<D1> gi = gamma_at<D1>(metric, seed(pv, i));
    std::vector<double> d(gi.size());
    for (std::size_t k = 0; k < gi.size(); ++k) d[k] = gi[k].d;
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<std::vector<double>> gamma_derivatives_fd(const MetricField& metric, const RVector& p, double h) {
  const int m = metric.dim();
  static constexpr double kOffsets[4] = {-2.0, -1.0, 1.0, 2.0};
  static constexpr double kWeights[4] = {1.0, -8.0, 8.0, -1.0};
  auto stencil = [&](int i, double step) {
    std::vector<double> acc(static_cast<std::size_t>(m * m * m), 0.0);
    for (int q = 0; q < 4; ++q) {
      RVector x = p;
      x(i) += kOffsets[q] * step;
      std::vector<double> gq = gamma_double(metric, x);
      for (std::size_t k = 0; k < acc.size(); ++k) acc[k] += kWeights[q] * gq[k];
    }
    for (double& v : acc) v /= 12.0 * step;
    return acc;
  };
  std::vector<std::vector<double>> out;
  for (int i = 0; i < m; ++i) {
    std::vector<double> coarse = stencil(i, h), fine = stencil(i, 0.5 * h);
    for (std::size_t k = 0; k < fine.size(); ++k) fine[k] = (16.0 * fine[k] - coarse[k]) / 15.0;
    out.push_back(std::move(fine));
  }
  return out;
}

}  // namespace

Eigen::MatrixXd MetricField::at(const RVector& p) const { return values((*this)(as_vec(p))); }

RVector VectorField::at(const RVector& p) const {
  Vec<double> v = (*this)(as_vec(p));
  return Eigen::Map<const RVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::MatrixXd EndomorphismField::at(const RVector& p) const { return values((*this)(as_vec(p))); }

EndomorphismField constant_j0(int n) {
  Eigen::MatrixXd j = j0_matrix(n);
  return EndomorphismField(2 * n, [j](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    return lift<T>(j);
  });
}

std::vector<Eigen::MatrixXd> metric_gradient(const MetricField& metric, const RVector& p) {
  Vec<double> pv = as_vec(p);
  std::vector<Eigen::MatrixXd> out;
  for (int i = 0; i < metric.dim(); ++i) out.push_back(values(tangent_part(metric(seed(pv, i)))));
  return out;
}

Christoffel christoffel(const MetricField& metric, const RVector& p) {
  const int m = metric.dim();
  Mat<double> g;
  std::vector<Mat<double>> dg;
  require_nondegenerate(metric.at(p));
  Christoffel c;
  c.dim = m;
  c.data = gamma_at<double>(metric, as_vec(p), &g, &dg);
  double dmax = 1.0, worst = 0.0, sym = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) {
        dmax = std::max(dmax, std::abs(dg[i](j, k)));
        double cov = dg[i](j, k);
        for (int l = 0; l < m; ++l) cov -= c(l, i, j) * g(l, k) + c(l, i, k) * g(j, l);
        worst = std::max(worst, std::abs(cov));
        sym = std::max(sym, std::abs(c(k, i, j) - c(k, j, i)));
      }
  c.compatibility_defect = worst / dmax;
  c.symmetry_defect = sym;
  if (!std::isfinite(c.compatibility_defect) || c.compatibility_defect > 1e-8)
    throw NumericalBreakdown("metric compatibility fails: defect " + std::to_string(c.compatibility_defect));
  return c;
}

CurvatureBundle riemann(const MetricField& metric, const RVector& p, const RVector* xi, DerivativePath path,
                        double fd_step) {
  const int m = metric.dim();
  CurvatureBundle b;
  b.g = metric.at(p);
  require_nondegenerate(b.g);
  Christoffel gam = christoffel(metric, p);
  std::vector<std::vector<double>> dgam =
      path == DerivativePath::Exact ? gamma_derivatives_exact(metric, p) : gamma_derivatives_fd(metric, p, fd_step);
  auto dG = [&](int i, int l, int j, int k) { return dgam[i][static_cast<std::size_t>((l * m + j) * m + k)]; };

  // R^l_ijk, then lower the last index
  std::vector<double> up(static_cast<std::size_t>(m * m * m * m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          double v = dG(i, l, j, k) - dG(j, l, i, k);
          for (int s = 0; s < m; ++s) v += gam(s, j, k) * gam(l, i, s) - gam(s, i, k) * gam(l, j, s);
          up[static_cast<std::size_t>(((i * m + j) * m + k) * m + l)] = v;
        }
  b.riemann = Tensor4(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l) {
          double v = 0.0;
          for (int s = 0; s < m; ++s) v += b.g(l, s) * up[static_cast<std::size_t>(((i * m + j) * m + k) * m + s)];
          b.riemann(i, j, k, l) = v;
        }
  b.symmetry_defect = curvature_symmetry_defect(b.riemann);
  b.bianchi_defect = bianchi_defect(b.riemann);
  if (!std::isfinite(b.symmetry_defect) || b.symmetry_defect > 1e-6)
    throw NumericalBreakdown("curvature symmetry defect " + std::to_string(b.symmetry_defect));

  Eigen::MatrixXd ginv = b.g.inverse();
  b.ricci = Eigen::MatrixXd::Zero(m, m);
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < m; ++k) {
      double v = 0.0;
      for (int i = 0; i < m; ++i)
        for (int l = 0; l < m; ++l) v += ginv(i, l) * b.riemann(i, j, k, l);
      b.ricci(j, k) = v;
    }
  b.scalar = (ginv.cwiseProduct(b.ricci)).sum();

  if (xi) {
    const double n2 = xi->dot(b.g * *xi);
    if (n2 == 0.0) throw DomainError("frame vector is null");
    RVector jxi = apply_J0(*xi);
    b.sigma = xi->dot(b.ricci * *xi) / n2;
    b.kappa = b.riemann.contract(*xi, jxi, jxi, *xi) / (n2 * n2);
  }
  return b;
}

double holomorphic_sectional_curvature(const CurvatureBundle& b, const RVector& x, const Eigen::MatrixXd& j) {
  const double n2 = x.dot(b.g * x);
  if (!(n2 > 0.0)) throw DomainError("holomorphic sectional curvature needs g(X,X) > 0");
  RVector jx = j * x;
  return b.riemann.contract(x, jx, jx, x) / (n2 * n2);
}

double holomorphic_sectional_curvature(const CurvatureBundle& b, const RVector& x) {
  return holomorphic_sectional_curvature(b, x, j0_matrix(static_cast<int>(x.size() / 2)));
}

double kahler_defect(const MetricField& metric, const EndomorphismField& j, const RVector& p) {
  const int m = metric.dim();
  Vec<double> pv = as_vec(p);
  // ∂_i Ω with Ω = Jᵀ g
  std::vector<Eigen::MatrixXd> dOmega;
  for (int i = 0; i < m; ++i) {
    Vec<D1> x = seed(pv, i);
    Mat<D1> om = j(x).transpose() * metric(x);
    dOmega.push_back(values(tangent_part(om)));
  }
  double worst = 0.0, scale = 1.0;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        scale = std::max(scale, std::abs(dOmega[a](b, c)));
        worst = std::max(worst, std::abs(dOmega[a](b, c) + dOmega[b](c, a) + dOmega[c](a, b)));
      }
  return worst / scale;
}

double kahler_defect(const MetricField& metric, const RVector& p) {
  return kahler_defect(metric, constant_j0(metric.dim() / 2), p);
}

double j_invariance_defect(const Tensor4& r, const Eigen::MatrixXd& j) {
  Tensor4 t(r.dim());
  // R(Je_a, Je_b, e_c, e_d) via a change of basis on the first two slots only
  const int m = r.dim();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          double v = 0.0;
          for (int i = 0; i < m; ++i) {
            if (j(i, a) == 0.0) continue;
            for (int k = 0; k < m; ++k) v += j(i, a) * j(k, b) * r(i, k, c, d);
          }
          t(a, b, c, d) = v;
        }
  const double scale = r.max_abs();
  return (t - r).max_abs() / (scale > 0.0 ? scale : 1.0);
}

Eigen::MatrixXd covariant_jacobian(const Christoffel& gamma, const VectorField& v, const RVector& p) {
  const int m = gamma.dim;
  Vec<double> pv = as_vec(p);
  Vec<double> v0 = v(pv);
  Eigen::MatrixXd a(m, m);
  for (int i = 0; i < m; ++i) {
    Vec<D1> dv = v(seed(pv, i));
    for (int k = 0; k < m; ++k) {
      double s = dv[k].d;
      for (int j = 0; j < m; ++j) s += gamma(k, i, j) * v0[j];
      a(k, i) = s;
    }
  }
  return a;
}

Eigen::MatrixXd covariant_jacobian(const MetricField& metric, const VectorField& v, const RVector& p) {
  return covariant_jacobian(christoffel(metric, p), v, p);
}

}  // namespace qck
