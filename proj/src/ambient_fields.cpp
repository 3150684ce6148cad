#include "qck/ambient_fields.hpp"

namespace qck {

MetricField flat_metric_field(const AmbientSpace& space) {
  Eigen::MatrixXd h = space.real_flat();
  return MetricField(2 * space.n, [h](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    return lift<T>(h);
  }, to_string(space.signature));
}

MetricField potential_metric_field(const PotentialFamily& family, const AmbientSpace& space) {
  return MetricField(2 * space.n, [family, space](const auto& x) { return potential_metric_real(family, space, x); },
                     "riemannian");
}

MetricField conformal_metric_field(const AmbientSpace& space, const UnivariateFn& u, const UnivariateFn& v) {
  return MetricField(2 * space.n, [space, u, v](const auto& x) { return conformal_metric_real(space, u, v, x); },
                     "riemannian");
}

MetricField scaled(const MetricField& g, double c) {
  return MetricField(g.dim(), [g, c](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    return T(c) * g(x);
  }, g.signature());
}

VectorField radial_unit_field(const AmbientSpace& space, const PotentialFamily* family) {
  std::optional<PotentialFamily> fam;
  if (family) fam = *family;
  Eigen::MatrixXd h = space.real_flat();
  return VectorField(2 * space.n, [space, fam, h](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    Mat<T> g = fam ? potential_metric_real(*fam, space, x) : lift<T>(h);
    T n2 = bilinear(g, x, x);
    T s = sqrt(value_of(n2) < 0.0 ? -n2 : n2);
    Vec<T> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] / s;
    return out;
  });
}

}  // namespace qck
