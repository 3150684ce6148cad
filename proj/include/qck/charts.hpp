#pragma once

#include "qck/ambient.hpp"
#include "qck/curvature.hpp"

namespace qck {

/// u lifted to duals with unit tangent along coordinate `dir`.
template <class T>
Vec<Dual<T>> seed_direction(const Vec<T>& u, int dir) {
  Vec<Dual<T>> x(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) x[j] = Dual<T>(u[j], T(static_cast<int>(j) == dir ? 1.0 : 0.0));
  return x;
}

/// Coordinates on the hypersphere {h′(Z,Z) = −r²} (Lorentz) or
/// {g′(Z,Z) = r²} (definite), 2n−1 of them.
///
/// Lorentz: u = (D-coordinates, θ) with z^n = √(1 + |u_D|²)·e^{iθ}; this
/// covers the whole hyperboloid. Definite: graph chart over the hemisphere
/// where real coordinate `axis` has sign `sign`.
class SphereChart {
 public:
  SphereChart(const AmbientSpace& space, double r, int axis = -1, double sign = 1.0);

  /// Definite chart centred on the hemisphere containing z.
  static SphereChart around(const AmbientSpace& space, const RVector& z);

  const AmbientSpace& space() const { return space_; }
  double radius() const { return r_; }
  int dim() const { return 2 * space_.n - 1; }

  template <class T>
  Vec<T> embed(const Vec<T>& u) const {
    const int m = 2 * space_.n;
    Vec<T> z(static_cast<std::size_t>(m), T(0.0));
    if (space_.signature == Signature::Lorentz) {
      T rho2(1.0);
      for (int i = 0; i < m - 2; ++i) {
        z[i] = u[i];
        rho2 += u[i] * u[i];
      }
      T rho = sqrt(rho2);
      z[m - 2] = rho * cos(u[m - 2]);
      z[m - 1] = rho * sin(u[m - 2]);
    } else {
      T s(1.0);
      for (int i = 0, k = 0; i < m; ++i) {
        if (i == axis_) continue;
        z[i] = u[k];
        s -= u[k] * u[k];
        ++k;
      }
      z[axis_] = sign_ * sqrt(s);
    }
    for (auto& c : z) c = r_ * c;
    return z;
  }

  /// Chart coordinates of a point on the sphere. Throws ChartError near
  /// the chart boundary (angular distance ≤ 0.2 rad) or off the sphere.
  RVector coordinates(const RVector& z) const;

  /// ∂Z/∂u as an m × (2n−1) matrix.
  Eigen::MatrixXd jacobian(const RVector& u) const;

 private:
  AmbientSpace space_;
  double r_;
  int axis_;
  double sign_;
};

/// Chart components Eᵀ g(Z(u)) E of an ambient metric on the sphere.
MetricField pullback(const MetricField& ambient, const SphereChart& chart);

}  // namespace qck
