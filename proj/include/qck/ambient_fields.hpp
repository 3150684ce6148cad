#pragma once

#include "qck/ambient.hpp"
#include "qck/curvature.hpp"

namespace qck {

/// h′ (Lorentz) or g′ (definite) as a constant metric field.
MetricField flat_metric_field(const AmbientSpace& space);

/// g = ∂∂̄f(w) as a differentiable field. Admissibility is the caller's
/// responsibility at each evaluation point.
MetricField potential_metric_field(const PotentialFamily& family, const AmbientSpace& space);

/// e^{−2u}(h′ + (e^{−2v}+1)(η′⊗η′ + η̃′⊗η̃′)) with profiles of r.
MetricField conformal_metric_field(const AmbientSpace& space, const UnivariateFn& u, const UnivariateFn& v);

/// c·g for a constant c.
MetricField scaled(const MetricField& g, double c);

/// Z/|Z| normalised in the flat metric (family == nullptr) or in ∂∂̄f.
VectorField radial_unit_field(const AmbientSpace& space, const PotentialFamily* family = nullptr);

}  // namespace qck
