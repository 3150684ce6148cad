#include "qck/charts.hpp"

#include <cmath>

namespace qck {

SphereChart::SphereChart(const AmbientSpace& space, double r, int axis, double sign)
    : space_(space), r_(r), axis_(axis), sign_(sign) {
  if (!(r > 0.0)) throw DomainError("sphere radius must be positive");
  if (space.signature == Signature::Definite && (axis < 0 || axis >= 2 * space.n))
    throw ChartError("definite sphere chart needs a graph axis");
}

SphereChart SphereChart::around(const AmbientSpace& space, const RVector& z) {
  Eigen::Index axis = 0;
  z.cwiseAbs().maxCoeff(&axis);
  const double r = std::sqrt(std::abs(square_norm(space, CPoint{real_to_complex(z)})));
  return SphereChart(space, r, static_cast<int>(axis), z(axis) >= 0.0 ? 1.0 : -1.0);
}

RVector SphereChart::coordinates(const RVector& z) const {
  const int m = 2 * space_.n;
  const double w = square_norm(space_, CPoint{real_to_complex(z)});
  const double target = space_.signature == Signature::Lorentz ? -r_ * r_ : r_ * r_;
  if (std::abs(w - target) > 1e-9 * r_ * r_) throw ChartError("point is not on the chart's sphere");
  RVector n = z / r_;
  RVector u(m - 1);
  if (space_.signature == Signature::Lorentz) {
    u.head(m - 2) = n.head(m - 2);
    u(m - 2) = std::atan2(n(m - 1), n(m - 2));
    return u;
  }
  if (!(sign_ * n(axis_) > std::sin(0.2))) throw ChartError("point too close to the chart boundary");
  for (int i = 0, k = 0; i < m; ++i)
    if (i != axis_) u(k++) = n(i);
  return u;
}

Eigen::MatrixXd SphereChart::jacobian(const RVector& u) const {
  Vec<double> uv(u.data(), u.data() + u.size());
  Eigen::MatrixXd e(2 * space_.n, dim());
  for (int a = 0; a < dim(); ++a) {
    Vec<D1> z = embed(seed_direction(uv, a));
    for (int i = 0; i < e.rows(); ++i) e(i, a) = z[i].d;
  }
  return e;
}

MetricField pullback(const MetricField& ambient, const SphereChart& chart) {
  return MetricField(chart.dim(), [ambient, chart](const auto& u) {
    using T = typename std::decay_t<decltype(u)>::value_type;
    const int m = 2 * chart.space().n, d = chart.dim();
    Mat<T> g = ambient(chart.embed(u));
    Mat<T> e(m, d);
    for (int a = 0; a < d; ++a) {
      Vec<Dual<T>> z = chart.embed(seed_direction(u, a));
      for (int i = 0; i < m; ++i) e(i, a) = z[i].d;
    }
    return e.transpose() * g * e;
  });
}

}  // namespace qck
