#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "qck/charts.hpp"
#include "qck/qc.hpp"

namespace qck {

enum class NormalOrientation { Inward, Outward };

/// g-unit normal of the hyperspheres √|h′(Z,Z)| = const (or g′). Inward
/// is the default: it makes k > 0 and α = k/2 positive on the examples.
VectorField sphere_normal_field(const MetricField& metric, const AmbientSpace& space,
                                NormalOrientation orientation = NormalOrientation::Inward);

/// Induced almost-contact structure at a sphere point, in ambient
/// coordinates. ξ̃ = Jξ, η̃ = g(ξ̃, ·), φx = Jx + η̃(x)ξ.
struct ContactStructure {
  RVector point;
  double r = 0.0;
  Eigen::MatrixXd g;
  RVector xi, xi_t, eta_t;
  Eigen::MatrixXd phi;
  Eigen::MatrixXd tangent;  // g-orthonormal basis of ξ^⊥, first column ξ̃
  double identity_defect = 0.0;
};

/// Throws DomainError if z is not on the sphere of radius r.
ContactStructure induced_contact(const MetricField& metric, const AmbientSpace& space, const RVector& z, double r,
                                 NormalOrientation orientation = NormalOrientation::Inward);

enum class SasakianType { I, II, III };
std::string to_string(SasakianType t);

struct SasakianReport {
  double alpha = 0.0;
  double alpha_defect = 0.0;   // max ‖D_xξ̃ − αφx‖
  double phi_defect = 0.0;     // max ‖(D_xφ)y − α(η̃(y)x − g(x,y)ξ̃)‖
  double identity_defect = 0.0;
  double c = 0.0;
  double c_spread = 0.0;
  double c_plus_3a2 = 0.0;
  double model_defect = 0.0;   // space-form curvature model, relative
  SasakianType type = SasakianType::II;
  std::optional<double> gauss_defect;

  nlohmann::json to_json() const;
};

struct SasakianOptions {
  int samples = 20;
  std::uint64_t seed = 7;
  bool gauss_check = false;
  bool throw_on_failure = true;  // NotSasakian above 1e-5, NotSpaceForm above 1e-6 spread
};

/// Extrinsic check at z on the sphere of radius r: D is the tangential
/// part of ∇, h(x,y) = −g(∇_xξ, y), K = R + h(x,u)h(y,z) − h(x,z)h(y,u).
/// With gauss_check, K is also computed intrinsically in a sphere chart.
SasakianReport alpha_sasakian_check(const MetricField& metric, const AmbientSpace& space, const RVector& z,
                                    double r, const SasakianOptions& opt = {},
                                    NormalOrientation orientation = NormalOrientation::Inward);

/// (c, spread) of K(x,φx,φx,x)/g(x,x)² over random x ⊥ ξ̃.
std::pair<double, double> phi_hsc(const MetricField& metric, const AmbientSpace& space, const RVector& z, double r,
                                  int samples = 20, std::uint64_t seed = 7);

/// An almost-contact metric structure given intrinsically in coordinates.
struct IntrinsicContact {
  MetricField g;
  VectorField xi;
  EndomorphismField phi;
};

SasakianReport analyse_intrinsic(const IntrinsicContact& s, const RVector& u, const SasakianOptions& opt = {});

/// The metrics q²(h′ + (1+q²)η̃⊗η̃) on the unit Lorentz hypersphere, with
/// ξ̄ = ξ̃/q², ξ̃ = −J₀Z (so that the h′ structure is (−1)-Sasakian) and
/// φx = J₀x − η̃(x)Z, in the global hyperboloid chart. Sasakian, α = 1.
IntrinsicContact sasakian_family_h1(double q, int n = 3);

/// Report at the point z (h′(z,z) = −1) of the family member q.
SasakianReport sasakian_family_report(double q, const RVector& z, const SasakianOptions& opt = {});

}  // namespace qck
