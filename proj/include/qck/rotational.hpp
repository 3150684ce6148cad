#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "qck/charts.hpp"
#include "qck/qc.hpp"

namespace qck {

/// I: definite ℂⁿ×ℝ with e² = +1, t′² + q′² = 1, 0 < t′ ≤ 1.
/// II: definite ℂⁿ with e² = −1, t′² − q′² = 1, t′ ≥ 1.
/// III: Lorentz ℂⁿ with e² = +1, −t′² + q′² = −1, t′ ≤ −1.
enum class RotationType { I, II, III };
std::string to_string(RotationType t);
RotationType rotation_type_from_string(const std::string& s);

/// Throws TypeConstraintError unless t > 0 and t′ lies in the type's band.
void check_type_constraint(RotationType type, double t, double tp);

struct CoefficientTriple {
  double a = 0.0, b = 0.0, c = 0.0;
  double k = 0.0;
  double a_plus_k2 = 0.0;
};

/// Closed-form a, b, c, k of the Kähler metric on a rotational hypersurface.
/// The type III c-term is used in expanded form (no division by t″).
CoefficientTriple qc_coefficients(RotationType type, double t, double tp, double tpp, double tppp);

/// One meridian sample. Derivatives are with respect to arc length s.
struct MeridianRow {
  double s = 0.0, t = 0.0, q = 0.0;
  double tp = 0.0, tpp = 0.0, tppp = 0.0;
  double qp = 0.0;
};

/// Meridian s ↦ (t(s), q(s)).
///
/// Analytic sources are parametrised by t: t′ = P(t) and dq/dt are dual
/// capable, so t″ = P′P and t‴ = (P″P + P′²)P are exact; s(t) and q(t)
/// come from adaptive Runge–Kutta quadrature where no closed form exists.
/// Tabulated sources hold samples on a uniform s grid and differentiate a
/// quintic B-spline.
class MeridianProfile {
 public:
  /// s(t) = ∫ dt / (c₁t⁴ + c₂t² + 1), t′ = sign·P(t). sign = −1 is the
  /// alternative orientation for type III.
  static MeridianProfile bochner(RotationType type, double c1, double c2, double t0, double t1, double sign = 1.0);

  /// Constant holomorphic sectional curvature a < 0 (types II, III).
  static MeridianProfile const_hsc(RotationType type, double a, double t0, double t1);

  /// Any slope function t′ = P(t) on [t0, t1].
  static MeridianProfile from_slope(RotationType type, UnivariateFn slope, double t0, double t1,
                                    std::string label = "slope");

  /// Samples on a uniform s grid (at least 8).
  static MeridianProfile tabulated(RotationType type, std::vector<double> s, std::vector<double> t,
                                   std::vector<double> q);

  RotationType type() const { return type_; }
  bool analytic() const { return !tp_.empty(); }
  double t0() const { return t0_; }
  double t1() const { return t1_; }

  /// Sign of q′ relative to the type's default orientation (q′ ≥ 0).
  double orientation() const { return orientation_; }
  MeridianProfile flipped() const;

  const UnivariateFn& tp_of_t() const { return tp_; }
  const UnivariateFn& dq_dt() const { return dqdt_; }

  /// Analytic sources only.
  MeridianRow at_t(double t) const;

  /// `steps` samples, uniform in t for analytic sources and in s for
  /// tabulated ones (steps = 0 keeps the table's own nodes).
  std::vector<MeridianRow> rows(int steps) const;

  nlohmann::json describe() const;

 private:
  MeridianProfile() = default;

  RotationType type_ = RotationType::II;
  std::string source_;
  nlohmann::json params_;
  double t0_ = 0.0, t1_ = 0.0;
  double orientation_ = 1.0;
  UnivariateFn tp_, dqdt_;
  UnivariateFn q_closed_;  // const-hsc only
  std::vector<double> tab_s_, tab_t_, tab_q_;
};

/// Closed forms q(t) with q₀ = 0 (type II: + branch). DomainError for
/// t ≤ 0, a ≥ 0, or type III with t ≤ 2√2/√(−a).
double const_hsc_meridian(RotationType type, double a, double t);

/// max |t′² ± q′² − target| over the samples.
double natural_parameter_defect(const MeridianProfile& profile, int steps = 200);

/// t″/(tt′) + 4(1 − t′)/t², constant (= −2c₂) exactly on Bochner meridians.
double bochner_condition(const MeridianRow& r);

/// Type III Bochner meridians: the two orientation candidates t′ = ±P(t).
/// A candidate is admissible where it satisfies t′ ≤ −1 on all of [t0, t1];
/// max_abs_c is the largest |c| of the closed form over the interval.
struct OrientationCandidate {
  double sign = 1.0;
  bool admissible = false;
  double max_abs_c = 0.0;
  std::string error;
};
std::vector<OrientationCandidate> type3_bochner_candidates(double c1, double c2, double t0, double t1,
                                                           int steps = 200);

/// Fill in a, b, c, k, a + k² for CSV output.
std::string meridian_csv(const MeridianProfile& profile, int steps);

struct EmbeddedSample {
  double t = 0.0;
  RVector point;  // chart coordinates (t, u)
  CoefficientTriple closed;
  QCDecomposition fitted;
  double min_eigenvalue = 0.0;
  double kahler_defect = 0.0;
  double bochner_norm = 0.0;
  double delta = 0.0;  // max over a, b, c, k, a + k² of |fitted − closed|
};

struct EmbeddingReport {
  RotationType type = RotationType::II;
  int n = 2;
  std::vector<EmbeddedSample> samples;
  double max_delta = 0.0;
  double min_eigenvalue = 0.0;
  double max_kahler_defect = 0.0;
  double max_bochner_norm = 0.0;

  nlohmann::json to_json() const;
};

/// The Kähler metric, complex structure and unit field of the type's
/// modification, in chart coordinates (t, u) of M ⊂ ℂⁿ × ℝ.
struct RotationalStructure {
  MetricField induced;  // ḡ or h̄
  MetricField g;
  EndomorphismField j;
  VectorField xi;
  SphereChart parallel;
};
RotationalStructure rotational_structure(const MeridianProfile& profile, int n);

/// Fits (a, b, c, k) at `count` seeded points with t spread over the
/// profile interval and compares with qc_coefficients. Runs in parallel.
EmbeddingReport embed_and_verify(const MeridianProfile& profile, int n, int count, std::uint64_t seed = 1);

}  // namespace qck
