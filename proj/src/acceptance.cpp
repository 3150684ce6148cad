#include "qck/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "qck/ambient_fields.hpp"
#include "qck/charts.hpp"
#include "qck/qc.hpp"
#include "qck/rotational.hpp"
#include "qck/sasakian.hpp"

namespace qck {

namespace {

// Collects named checks, keeping the worst value seen for each.
class Checks {
 public:
  explicit Checks(nlohmann::json& metrics) : m_(metrics) {}

  void below(const std::string& name, double v, double limit) { record(name, v, limit, v < limit, true); }
  void above(const std::string& name, double v, double limit) { record(name, v, limit, v > limit, false); }
  void near(const std::string& name, double v, double target, double tol) {
    below(name, std::abs(v - target), tol);
  }
  void truth(const std::string& name, bool ok) {
    auto& e = m_[name];
    if (e.is_null()) e = {{"ok", true}, {"failures", 0}};
    if (!ok) {
      e["ok"] = false;
      e["failures"] = e["failures"].get<int>() + 1;
      fail(name);
    }
  }

  bool ok() const { return ok_; }
  const std::string& first_failure() const { return first_; }

 private:
  void record(const std::string& name, double v, double limit, bool ok, bool upper) {
    auto& e = m_[name];
    if (e.is_null()) {
      e = {{"worst", v}, {"limit", limit}, {"ok", true}};
    } else {
      double w = e["worst"].get<double>();
      if (upper ? v > w : v < w) e["worst"] = v;
    }
    if (!ok || !std::isfinite(v)) {
      e["ok"] = false;
      char buf[160];
      std::snprintf(buf, sizeof buf, "%s = %.3e (limit %s %.1e)", name.c_str(), v, upper ? "<" : ">", limit);
      fail(buf);
    }
  }
  void fail(const std::string& what) {
    if (ok_) first_ = what;
    ok_ = false;
  }

  nlohmann::json& m_;
  bool ok_ = true;
  std::string first_;
};

using Body = std::function<void(Checks&)>;

struct Criterion {
  int id;
  const char* name;
  double budget;
  Body body;
};

const AmbientSpace kL3(3, Signature::Lorentz);
const AmbientSpace kD2(2, Signature::Definite);
const AmbientSpace kD3(3, Signature::Definite);
const PotentialFamily kHyperbolic = LogFamily{-1.0, 1.0};

std::vector<RVector> real_points(const AmbientSpace& space, const SampleSpec& spec, const PotentialFamily* fam) {
  std::vector<RVector> out;
  for (const auto& z : sample_points(space, spec, fam)) out.push_back(complex_to_real(z.z));
  return out;
}

RVector random_unit(std::mt19937_64& rng, const Eigen::MatrixXd& g) {
  std::normal_distribution<double> N;
  RVector x(g.rows());
  for (int i = 0; i < x.size(); ++i) x(i) = N(rng);
  return x / std::sqrt(x.dot(g * x));
}

// points of the Lorentz sphere of radius r through its global chart
std::vector<RVector> lorentz_sphere(double r, int count, std::uint64_t seed) {
  SphereChart chart(kL3, r);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-0.8, 0.8), A(-3.0, 3.0);
  std::vector<RVector> out;
  for (int s = 0; s < count; ++s) {
    Vec<double> u{U(rng), U(rng), U(rng), U(rng), A(rng)};
    Vec<double> z = chart.embed(u);
    out.push_back(Eigen::Map<RVector>(z.data(), static_cast<Eigen::Index>(z.size())));
  }
  return out;
}

// The point sets and metrics behind criteria 2–4 and 7; criterion 11
// revisits all of them.
struct PointSet {
  std::string label;
  MetricField metric;
  std::vector<RVector> points;
};

std::vector<PotentialFamily> negative_families() {
  return {LogFamily{-1.0, 1.0}, LogFamily{-1.0, 1.5}, LogFamily{-2.0, 1.0}, LogFamily{-2.0, 1.5},
          InverseFamily{}};
}

std::vector<PotentialFamily> definite_families() { return {Log1pFamily{1.0}, Log1pFamily{2.0}}; }

const SampleSpec kConstSpec{10, 42, 1.1, 3.0};
const SampleSpec kFamilySpec{10, 43, 1.2, 3.0};
const SampleSpec kDefiniteSpec{10, 44, 0.3, 3.0};
const std::vector<double> kSphereRadii{1.5, 2.0, 3.0};

MeridianProfile const_hsc_profile(RotationType type) {
  return type == RotationType::II ? MeridianProfile::const_hsc(type, -1.0, 0.5, 3.0)
                                  : MeridianProfile::const_hsc(type, -1.0, 3.0, 5.0);
}

// -- 1 ----------------------------------------------------------------------

void flat_baselines(Checks& ck) {
  struct Case {
    const char* label;
    AmbientSpace space;
  };
  for (const Case& c : {Case{"h'_n3", kL3}, Case{"g'_n2", kD2}, Case{"g'_n3", kD3}}) {
    MetricField g = flat_metric_field(c.space);
    VectorField xi = radial_unit_field(c.space);
    for (const RVector& p : real_points(c.space, {3, 1, 1.1, 3.0}, nullptr)) {
      RVector x = xi.at(p);
      auto b = riemann(g, p, &x);
      const std::string pre = c.label;
      ck.below(pre + ".max_abs_R", b.riemann.max_abs(), 1e-10);
      ck.below(pre + ".abs_sigma", std::abs(*b.sigma), 1e-10);
      ck.below(pre + ".abs_kappa", std::abs(*b.kappa), 1e-10);
      ck.below(pre + ".abs_tau", std::abs(b.scalar), 1e-10);
    }
  }
}

// -- 2 ----------------------------------------------------------------------

void constant_hsc(Checks& ck) {
  MetricField g = potential_metric_field(kHyperbolic, kL3);
  VectorField xi = radial_unit_field(kL3, &kHyperbolic);
  std::mt19937_64 rng(2);
  for (const RVector& p : real_points(kL3, kConstSpec, &kHyperbolic)) {
    auto qp = analyse_point(g, xi, p);
    const auto& d = qp.decomposition;
    ck.near("a", d.a, -1.0, 1e-6);
    ck.near("b", d.b, 0.0, 1e-6);
    ck.near("c", d.c, 0.0, 1e-6);
    ck.below("residual", d.residual, 1e-6);
    for (int t = 0; t < 20; ++t)
      ck.near("hsc", holomorphic_sectional_curvature(qp.bundle, random_unit(rng, qp.bundle.g)), -1.0, 1e-7);
    ck.below("bochner_norm", bochner(qp.bundle).norm(), 1e-6);
  }
}

// -- 3 ----------------------------------------------------------------------

void theorem_direct(Checks& ck) {
  for (const PotentialFamily& fam : negative_families()) {
    MetricField g = potential_metric_field(fam, kL3);
    VectorField xi = radial_unit_field(kL3, &fam);
    for (const RVector& p : real_points(kL3, kFamilySpec, &fam)) {
      auto d = analyse_point(g, xi, p).decomposition;
      ck.below("kahler_defect", kahler_defect(g, p), 1e-9);
      ck.below("residual", d.residual, 1e-6);
      ck.below("a_plus_k2", d.a_plus_k2, -1e-3);
      ck.truth("class_negative", d.cls == QCClass::Negative);
    }
  }
}

// -- 4 ----------------------------------------------------------------------

void definite_counterpart(Checks& ck) {
  for (const PotentialFamily& fam : definite_families()) {
    MetricField g = potential_metric_field(fam, kD3);
    VectorField xi = radial_unit_field(kD3, &fam);
    for (const RVector& p : real_points(kD3, kDefiniteSpec, &fam)) {
      auto d = analyse_point(g, xi, p).decomposition;
      ck.below("residual", d.residual, 1e-6);
      ck.above("a_plus_k2", d.a_plus_k2, 1e-3);
      ck.truth("class_positive", d.cls == QCClass::Positive);
    }
  }
}

// -- 5 ----------------------------------------------------------------------

// On the constant-curvature metric both sides vanish (b = 0, a = −1), so the
// law is also checked on the inverse family, where neither side is zero.
void radial_law(Checks& ck) {
  const PotentialFamily inverse = InverseFamily{};
  for (const PotentialFamily* fam : {&kHyperbolic, &inverse}) {
    MetricField g = potential_metric_field(*fam, kL3);
    VectorField xi = radial_unit_field(kL3, fam);
    RVector dir = real_points(kL3, {1, 5, 1.0, 1.0}, nullptr)[0];
    const std::string pre = fam == &kHyperbolic ? "log" : "inverse";
    for (double r : {1.3, 1.7, 2.0, 2.5, 3.0}) {
      auto law = radial_derivative_law(g, xi, dir * r);
      const double scale = std::max(std::abs(law.da), std::abs(law.predicted));
      ck.below(pre + ".relative_error", std::abs(law.da - law.predicted) / std::max(scale, 1e-4), 1e-4);
      if (fam == &inverse) ck.above("inverse.abs_da", std::abs(law.da), 1e-3);
    }
  }
}

// -- 6 ----------------------------------------------------------------------

void lemma_equivalence(Checks& ck) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> U(-3.0, 3.0);
  std::normal_distribution<double> N;
  const Eigen::MatrixXd j = j0_matrix(3);
  int exceptions = 0;
  for (int t = 0; t < 50; ++t) {
    Eigen::MatrixXcd m(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int k = 0; k < 3; ++k) m(i, k) = cplx(N(rng), N(rng));
    Eigen::MatrixXcd h = m.adjoint() * m + Eigen::MatrixXcd::Identity(3, 3);
    Eigen::MatrixXd g = hermitian_to_real_metric(HermitianMatrix::from_upper(h));
    RVector xi = random_unit(rng, g);
    BasisTensors basis = build_basis_tensors(g, xi);
    const double a = U(rng), b = U(rng);
    // a third of the samples are Bochner-flat, the rest have |c| ≥ 0.1
    const double c = (t % 3 == 0) ? 0.0 : (U(rng) > 0 ? 1.0 : -1.0) * (0.1 + std::abs(U(rng)));
    Tensor4 r = a * basis.pi + b * basis.phi + c * basis.psi;
    auto d = decompose(r, basis, 1.0);
    Tensor4 bt = bochner(r, g, j);
    auto f = bochner_flat(bt, d);
    if (!f.consistent || f.flat != (c == 0.0)) ++exceptions;
    ck.below("identity_defect", (bt - bochner_of_qc_model(basis, c, 3)).max_abs(), 1e-9);
  }
  ck.below("exceptions", exceptions, 0.5);
}

// -- 7 ----------------------------------------------------------------------

void sasakian_sphere(Checks& ck) {
  MetricField g = potential_metric_field(kHyperbolic, kL3);
  VectorField radial = radial_unit_field(kL3, &kHyperbolic);
  SasakianOptions opt;
  opt.throw_on_failure = false;
  for (double r : kSphereRadii) {
    for (const RVector& z : lorentz_sphere(r, 3, 7)) {
      auto rep = alpha_sasakian_check(g, kL3, z, r, opt);
      ck.near("alpha", rep.alpha, 1.0 / (2.0 * r), 1e-6);
      ck.below("alpha_defect", rep.alpha_defect, 1e-5);
      ck.below("phi_hsc_spread", rep.c_spread, 1e-6);
      ck.near("c_plus_3a2", rep.c_plus_3a2, -(r * r - 1.0) / (r * r), 1e-5);
      ck.truth("type_III", rep.type == SasakianType::III);
      auto d = analyse_point(g, radial, z).decomposition;
      const double a2 = rep.alpha * rep.alpha;
      ck.near("relation_a_plus_k2", rep.c + 3.0 * a2, d.a_plus_k2, 1e-5);
      ck.near("relation_a", rep.c - a2, d.a, 1e-5);
    }
  }
}

// -- 8 ----------------------------------------------------------------------

void sasakian_family(Checks& ck) {
  SasakianOptions opt;
  opt.throw_on_failure = false;
  for (double q : {1.0, 2.0}) {
    for (const RVector& z : lorentz_sphere(1.0, 3, 8)) {
      auto rep = sasakian_family_report(q, z, opt);
      ck.near("alpha", rep.alpha, 1.0, 1e-6);
      ck.near("c", rep.c, -4.0 / (q * q) - 3.0, 1e-5);
    }
  }
}

// -- 9 ----------------------------------------------------------------------

void meridian_identities(Checks& ck) {
  auto identity_d = [&ck](RotationType type, const MeridianRow& row) {
    auto c = qc_coefficients(type, row.t, row.tp, row.tpp, row.tppp);
    const double sign = type == RotationType::III ? -1.0 : 1.0;
    ck.below("d.a_plus_k2_identity", std::abs(c.a_plus_k2 - sign * 4.0 / (row.t * row.t)), 1e-10);
  };
  for (auto [c1, c2] : {std::pair{1.0, 0.0}, std::pair{0.5, 1.0}, std::pair{0.0, 0.0}}) {
    auto prof = MeridianProfile::bochner(RotationType::II, c1, c2, 0.5, 3.0);
    for (const auto& row : prof.rows(200)) {
      ck.below("a.bochner_condition", std::abs(bochner_condition(row) + 2.0 * c2), 1e-10);
      identity_d(RotationType::II, row);
    }
  }
  for (RotationType type : {RotationType::II, RotationType::III}) {
    const std::string pre = type == RotationType::II ? "b." : "c.";
    for (const auto& row : const_hsc_profile(type).rows(200)) {
      auto c = qc_coefficients(type, row.t, row.tp, row.tpp, row.tppp);
      ck.near(pre + "a", c.a, -1.0, 1e-6);
      ck.below(pre + "abs_b", std::abs(c.b), 1e-6);
      ck.below(pre + "abs_c", std::abs(c.c), 1e-6);
      identity_d(type, row);
    }
  }
  // (d) also on arbitrary admissible jets, type I included
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> T(0.2, 5.0), S(1.0, 6.0), D(-3.0, 3.0), E(0.05, 1.0);
  for (int i = 0; i < 200; ++i) {
    identity_d(RotationType::I, {0, T(rng), 0, E(rng), D(rng), D(rng), 0});
    identity_d(RotationType::II, {0, T(rng), 0, S(rng), D(rng), D(rng), 0});
    identity_d(RotationType::III, {0, T(rng), 0, -S(rng), D(rng), D(rng), 0});
  }
}

// -- 10 ---------------------------------------------------------------------

EmbeddingReport embedded_report(RotationType type) { return embed_and_verify(const_hsc_profile(type), 2, 6, 10); }

void embedded_cross_check(Checks& ck) {
  for (RotationType type : {RotationType::II, RotationType::III}) {
    auto rep = embedded_report(type);
    const std::string pre = to_string(type) + ".";
    ck.below(pre + "max_delta", rep.max_delta, 1e-4);
    ck.above(pre + "min_eigenvalue", rep.min_eigenvalue, 0.0);
    ck.below(pre + "kahler_defect", rep.max_kahler_defect, 1e-6);
    ck.truth(pre + "six_samples", rep.samples.size() == 6);
  }
}

// -- 11 ---------------------------------------------------------------------

void numerical_hygiene(Checks& ck) {
  MetricField g = potential_metric_field(kHyperbolic, kL3);
  for (const RVector& p : real_points(kL3, {5, 11, 1.1, 3.0}, &kHyperbolic)) {
    auto a = riemann(g, p);
    auto f = riemann(g, p, nullptr, DerivativePath::FiniteDifference);
    ck.below("exact_vs_fd_relative", (a.riemann - f.riemann).max_abs() / a.riemann.max_abs(), 1e-6);
  }

  std::vector<PointSet> sets;
  sets.push_back({"flat h'", flat_metric_field(kL3), real_points(kL3, {3, 1, 1.1, 3.0}, nullptr)});
  sets.push_back({"flat g' n2", flat_metric_field(kD2), real_points(kD2, {3, 1, 1.1, 3.0}, nullptr)});
  sets.push_back({"flat g' n3", flat_metric_field(kD3), real_points(kD3, {3, 1, 1.1, 3.0}, nullptr)});
  sets.push_back({"constant hsc", g, real_points(kL3, kConstSpec, &kHyperbolic)});
  for (const PotentialFamily& fam : negative_families())
    sets.push_back({fam.name(), potential_metric_field(fam, kL3), real_points(kL3, kFamilySpec, &fam)});
  for (const PotentialFamily& fam : definite_families())
    sets.push_back({fam.name(), potential_metric_field(fam, kD3), real_points(kD3, kDefiniteSpec, &fam)});
  PointSet spheres{"sasakian spheres", g, {}};
  for (double r : kSphereRadii)
    for (const RVector& z : lorentz_sphere(r, 3, 7)) spheres.points.push_back(z);
  sets.push_back(spheres);
  for (RotationType type : {RotationType::II, RotationType::III}) {
    PointSet s{"embedded " + to_string(type), rotational_structure(const_hsc_profile(type), 2).g, {}};
    for (const auto& sample : embedded_report(type).samples) s.points.push_back(sample.point);
    sets.push_back(s);
  }

  int count = 0;
  for (const PointSet& s : sets)
    for (const RVector& p : s.points) {
      auto b = riemann(s.metric, p);
      ck.below("symmetry_defect", b.symmetry_defect, 1e-9);
      ck.below("bianchi_defect", b.bianchi_defect, 1e-9);
      ++count;
    }
  ck.above("points_checked", count, 0.0);
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "flat baselines", 1.0, flat_baselines},
      {2, "constant holomorphic sectional curvature", 10.0, constant_hsc},
      {3, "a + k^2 < 0 on time-like potentials", 30.0, theorem_direct},
      {4, "a + k^2 > 0 on definite potentials", 10.0, definite_counterpart},
      {5, "radial derivative law", 5.0, radial_law},
      {6, "Bochner flatness iff c = 0", 5.0, lemma_equivalence},
      {7, "alpha-Sasakian hyperspheres", 20.0, sasakian_sphere},
      {8, "Sasakian space-form family", 10.0, sasakian_family},
      {9, "meridian identities", 5.0, meridian_identities},
      {10, "embedded rotational cross-check", 60.0, embedded_cross_check},
      {11, "numerical hygiene", 10.0, numerical_hygiene},
  };
  return all;
}

}  // namespace

nlohmann::json CriterionResult::to_json() const {
  return {{"id", id},           {"name", name},     {"pass", pass},       {"seconds", seconds},
          {"budget", budget},   {"detail", detail}, {"metrics", metrics}};
}

std::vector<int> suite_criteria(const std::string& suite) {
  if (suite == "all") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  if (suite == "flat") return {1};
  if (suite == "qch") return {2, 3, 4, 5};
  if (suite == "bochner") return {6, 9, 10};
  if (suite == "sasaki") return {7, 8};
  if (suite == "hygiene") return {11};
  throw ConfigError("unknown suite '" + suite + "' (all, flat, qch, bochner, sasaki, hygiene)");
}

CriterionResult run_criterion(int id) {
  const auto& all = criteria();
  if (id < 1 || id > static_cast<int>(all.size())) throw ConfigError("no criterion " + std::to_string(id));
  const Criterion& c = all[static_cast<std::size_t>(id - 1)];
  CriterionResult r;
  r.id = c.id;
  r.name = c.name;
  r.budget = c.budget;
  Checks ck(r.metrics);
  bool threw = false;
  const auto start = std::chrono::steady_clock::now();
  try {
    c.body(ck);
  } catch (const Error& e) {
    threw = true;
    r.detail = e.kind() + ": " + e.what();
  } catch (const std::exception& e) {
    threw = true;
    r.detail = e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.pass = !threw && ck.ok() && r.seconds < r.budget;
  if (!threw && !ck.ok()) r.detail = ck.first_failure();
  if (!threw && ck.ok() && !r.pass) r.detail = "over the runtime budget";
  return r;
}

std::vector<CriterionResult> run_suite(const std::string& suite) {
  std::vector<CriterionResult> out;
  for (int id : suite_criteria(suite)) out.push_back(run_criterion(id));
  return out;
}

std::string format_line(const CriterionResult& r) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "[%s] %2d  %-42s (%.2f s / %g s)", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds, r.budget);
  std::string s = buf;
  if (!r.detail.empty()) s += "  -- " + r.detail;
  return s;
}

}  // namespace qck
