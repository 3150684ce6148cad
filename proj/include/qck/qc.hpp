#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "qck/curvature.hpp"

namespace qck {

/// g-orthonormal frame (e₁, Je₁, e₂, Je₂, …) as matrix columns. The
/// vectors in `lead` are used first (after orthogonalisation), then the
/// coordinate axes. Works for indefinite g as long as J-pairs are non-null.
Eigen::MatrixXd j_adapted_frame(const Eigen::MatrixXd& g, const Eigen::MatrixXd& j,
                                const std::vector<RVector>& lead = {});

struct BasisTensors {
  Tensor4 pi, phi1, phi2, phi, psi;
};

/// π, Φ₁, Φ₂, Φ = Φ₁ + Φ₂ and Ψ in (0,4) form for the unit field ξ (ξ and
/// Jξ span D⊥). Throws FrameError unless |g(ξ,ξ)| = 1 to 1e-10.
BasisTensors build_basis_tensors(const Eigen::MatrixXd& g, const RVector& xi, const Eigen::MatrixXd& j);
BasisTensors build_basis_tensors(const Eigen::MatrixXd& g, const RVector& xi);

enum class B0Variant { Riemannian, Lorentz };

struct B0Data {
  double k = 0.0;
  double p_star = 0.0;
  double spread = 0.0;        // max − min of the per-direction k values
  double shape_defect = 0.0;  // max ‖∇_x ξ − (k/2)·x‖ over the D-frame, relative
  RVector xi;
  B0Variant variant = B0Variant::Riemannian;
  std::vector<double> per_direction;
};

/// k from ∇_x ξ over a g-orthonormal frame x of D = {ξ, Jξ}^⊥:
/// Riemannian k = 2g(∇_xξ, x)/g(x,x); Lorentz k′ = −2h′(∇_xξ′, x)/h′(x,x).
/// p* = −g(∇_{Jξ}ξ, Jξ)/g(Jξ, Jξ), i.e. ∇_{Jξ}ξ = −p*·Jξ.
/// Throws NotB0 if spread or shape defect > 1e-6, or if k = 0.
/// `j` defaults to J₀.
B0Data extract_b0_data(const MetricField& metric, const VectorField& xi, const RVector& p,
                       B0Variant variant = B0Variant::Riemannian, const Eigen::MatrixXd* j = nullptr);

/// ξ(k) by a central difference of extract_b0_data along ξ.
double xi_derivative_of_k(const MetricField& metric, const VectorField& xi, const RVector& p, double h = 1e-3);

enum class QCClass { Positive, Zero, Negative };
std::string to_string(QCClass c);

struct QCDecomposition {
  double a = 0.0, b = 0.0, c = 0.0;
  double residual = 0.0;
  double k = 0.0;
  double a_plus_k2 = 0.0;
  QCClass cls = QCClass::Zero;

  nlohmann::json to_json() const;
};

/// Least squares R ≈ aπ + bΦ + cΨ; class from a + k² with zero band 1e-8.
QCDecomposition decompose(const Tensor4& r, const BasisTensors& basis, double k);

/// Everything at one point: curvature, ξ, basis tensors, B₀ data, fit.
struct QCPoint {
  CurvatureBundle bundle;
  BasisTensors basis;
  B0Data b0;
  QCDecomposition decomposition;
};
QCPoint analyse_point(const MetricField& metric, const VectorField& xi, const RVector& p,
                      B0Variant variant = B0Variant::Riemannian, const Eigen::MatrixXd* j = nullptr);

/// da along the ray through p against (kb/2)·η, both per unit change of the
/// scale factor λ in p(1 + λ); with r ∝ λ this is the radial law up to the
/// common factor r. da is a 4-point central difference with step h.
struct RadialLaw {
  double da = 0.0;
  double predicted = 0.0;
  double a = 0.0, b = 0.0, k = 0.0;
  double eta_radial = 0.0;  // η(p), p read as a coordinate vector
};
RadialLaw radial_derivative_law(const MetricField& metric, const VectorField& xi, const RVector& p,
                                double h = 1e-3);

struct AngleSample {
  double theta = 0.0;
  double cos2 = 0.0;
  double hsc = 0.0;
};

/// (θ, H) for each unit sample X; cos²θ = η(X)² + η̃(X)² clamped to [0,1].
std::vector<AngleSample> hsc_angle_profile(const CurvatureBundle& b, const RVector& xi,
                                           const std::vector<RVector>& samples);
std::vector<AngleSample> hsc_angle_profile(const CurvatureBundle& b, const RVector& xi,
                                           const std::vector<RVector>& samples, const Eigen::MatrixXd& j);

/// max |H − (a + b cos²θ + c cos⁴θ)| over the samples.
double hsc_model_defect(const std::vector<AngleSample>& profile, double a, double b, double c);

/// Bochner tensor of an algebraic Kähler curvature tensor R with respect to
/// g and J (Ricci and scalar curvature are traced from R). Throws NotKahler
/// if R is not J-invariant to 1e-6.
Tensor4 bochner(const Tensor4& r, const Eigen::MatrixXd& g, const Eigen::MatrixXd& j);
Tensor4 bochner(const CurvatureBundle& b);

/// ρ_jk = g^{il} R_ijkl of an algebraic curvature tensor.
Eigen::MatrixXd ricci_of(const Tensor4& r, const Eigen::MatrixXd& g);

/// c·(2/((n+1)(n+2))·π − 4/(n+2)·Φ + Ψ): the Bochner tensor of aπ + bΦ + cΨ.
Tensor4 bochner_of_qc_model(const BasisTensors& basis, double c, int n);

/// Ricci trace g^{il} B_ijkl, max |component|.
double ricci_trace(const Tensor4& t, const Eigen::MatrixXd& g);

struct BochnerFlatness {
  bool flat = false;          // ‖B‖ < 1e-6
  bool c_vanishes = false;    // |c| < 1e-6
  bool consistent = false;    // the two agree
  double norm = 0.0;
};
BochnerFlatness bochner_flat(const Tensor4& bochner_tensor, const QCDecomposition& d);

}  // namespace qck
