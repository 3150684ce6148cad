#include "qck/ambient.hpp"

#include <cmath>
#include <random>

namespace qck {

std::string to_string(Signature s) { return s == Signature::Lorentz ? "lorentz" : "definite"; }

Signature signature_from_string(const std::string& s) {
  if (s == "lorentz") return Signature::Lorentz;
  if (s == "definite") return Signature::Definite;
  throw ConfigError("unknown space '" + s + "' (expected definite|lorentz)");
}

AmbientSpace::AmbientSpace(int n_, Signature s) : n(n_), signature(s) {
  if (n < 2) throw DomainError("complex dimension must be at least 2");
}

HermitianMatrix AmbientSpace::flat() const {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
  for (int a = 0; a < n; ++a) h(a, a) = 0.5 * eps(a);
  return HermitianMatrix::from_upper(h);
}

Eigen::MatrixXd AmbientSpace::real_flat() const { return hermitian_to_real_metric(flat()); }

double square_norm(const AmbientSpace& space, const CPoint& z) {
  double w = 0.0;
  for (int a = 0; a < space.n; ++a) w += space.eps(a) * std::norm(z.z[a]);
  return w;
}

bool in_timelike_domain(const AmbientSpace& space, const CPoint& z) { return square_norm(space, z) < 0.0; }

// ---------------------------------------------------------------------------

PotentialFamily::PotentialFamily(Kind k) : kind_(std::move(k)) {
  if (const auto* lf = std::get_if<LogFamily>(&kind_)) {
    if (!(lf->a < 0.0)) throw ConfigError("log family needs a < 0");
    if (lf->r0 < 0.0) throw ConfigError("log family needs r0 >= 0");
  }
  if (const auto* sf = std::get_if<SeriesFamily>(&kind_); sf && sf->coeffs.empty())
    throw ConfigError("series family needs at least one coefficient");
}

std::string PotentialFamily::name() const {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, LogFamily>) return "log";
        else if constexpr (std::is_same_v<K, InverseFamily>) return "inverse";
        else if constexpr (std::is_same_v<K, SeriesFamily>) return "series";
        else return "log1p";
      },
      kind_);
}

bool PotentialFamily::in_domain(double w, Signature s) const {
  if (!std::isfinite(w)) return false;
  if (s == Signature::Lorentz ? !(w < 0.0) : !(w > 0.0)) return false;
  if (const auto* lf = std::get_if<LogFamily>(&kind_)) return w < -lf->r0 * lf->r0;
  if (const auto* l1 = std::get_if<Log1pFamily>(&kind_)) return 1.0 + l1->c * w > 0.0;
  return true;
}

nlohmann::json PotentialFamily::to_json() const {
  nlohmann::json j;
  j["kind"] = name();
  if (const auto* lf = std::get_if<LogFamily>(&kind_)) {
    j["a"] = lf->a;
    j["r0"] = lf->r0;
  } else if (const auto* sf = std::get_if<SeriesFamily>(&kind_)) {
    j["coeffs"] = sf->coeffs;
  } else if (const auto* l1 = std::get_if<Log1pFamily>(&kind_)) {
    j["c"] = l1->c;
  }
  return j;
}

PotentialFamily PotentialFamily::from_json(const nlohmann::json& j) {
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "log") return LogFamily{j.value("a", -1.0), j.value("r0", 1.0)};
    if (kind == "inverse") return InverseFamily{};
    if (kind == "series") return SeriesFamily{j.at("coeffs").get<std::vector<double>>()};
    if (kind == "log1p") return Log1pFamily{j.value("c", 1.0)};
    throw ConfigError("unknown potential kind '" + kind + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed potential: ") + e.what());
  }
}

AdmissibilityReport admissibility(const PotentialFamily& family, const AmbientSpace& space, double w) {
  if (!family.in_domain(w, space.signature))
    throw DomainError("w = " + std::to_string(w) + " is outside the domain of the " + family.name() + " family");
  AdmissibilityReport rep;
  rep.f_prime = family.derivative(w, 1);
  rep.f_prime_plus_w_f_second = rep.f_prime + w * family.derivative(w, 2);
  const double scale = std::max(std::abs(rep.f_prime), std::abs(w * family.derivative(w, 2)));
  rep.degenerate = std::abs(rep.f_prime_plus_w_f_second) <= 1e-12 * scale;
  const bool second =
      space.signature == Signature::Lorentz ? rep.f_prime_plus_w_f_second < 0.0 : rep.f_prime_plus_w_f_second > 0.0;
  rep.ok = rep.f_prime > 0.0 && second && !rep.degenerate;
  return rep;
}

namespace {

Vec<double> as_vec(const RVector& v) { return Vec<double>(v.data(), v.data() + v.size()); }

void require_admissible(const PotentialFamily& family, const AmbientSpace& space, double w) {
  AdmissibilityReport rep = admissibility(family, space, w);
  if (rep.ok) return;
  if (rep.degenerate)
    throw InadmissiblePotential("degenerate potential: f' + w f'' = 0 at w = " + std::to_string(w), true);
  throw InadmissiblePotential("inadmissible potential at w = " + std::to_string(w) +
                                  ": f' = " + std::to_string(rep.f_prime) +
                                  ", f' + w f'' = " + std::to_string(rep.f_prime_plus_w_f_second),
                              false);
}

}  // namespace

HermitianMatrix potential_metric(const PotentialFamily& family, const AmbientSpace& space, const CPoint& z) {
  require_admissible(family, space, square_norm(space, z));
  Mat<double> g = potential_metric_real(family, space, as_vec(complex_to_real(z.z)));
  return real_to_hermitian(values(g));
}

HermitianMatrix potential_metric_by_differentiation(const PotentialFamily& family, const AmbientSpace& space,
                                                    const CPoint& z) {
  ScalarField f(2 * space.n, [family, space](const auto& x) { return family(square_norm(space, x)); });
  RVector x = complex_to_real(z.z);
  std::vector<double> p(x.data(), x.data() + x.size());
  Eigen::MatrixXcd h(space.n, space.n);
  for (int a = 0; a < space.n; ++a)
    for (int b = 0; b < space.n; ++b) {
      const int xa = 2 * a, ya = 2 * a + 1, xb = 2 * b, yb = 2 * b + 1;
      double re = differentiate(f, p, {xa, xb}) + differentiate(f, p, {ya, yb});
      double im = differentiate(f, p, {xa, yb}) - differentiate(f, p, {ya, xb});
      h(a, b) = 0.25 * cplx(re, im);
    }
  return HermitianMatrix::from_upper(h);
}

HermitianMatrix real_to_hermitian(const Eigen::MatrixXd& g) {
  const int n = static_cast<int>(g.rows() / 2);
  Eigen::MatrixXcd h(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) h(a, b) = 0.5 * cplx(g(2 * a, 2 * b), g(2 * a, 2 * b + 1));
  return HermitianMatrix::from_upper(h);
}

// ---------------------------------------------------------------------------

RadialFrame radial_frame(const AmbientSpace& space, const CPoint& z, FrameMetric tag, const PotentialFamily* family) {
  const double w = square_norm(space, z);
  if (space.signature == Signature::Lorentz ? !(w < 0.0) : !(w > 0.0))
    throw DomainError(space.signature == Signature::Lorentz ? "point is not in the time-like domain"
                                                            : "radial frame undefined at the origin");
  RadialFrame fr;
  fr.point = complex_to_real(z.z);
  fr.r = std::sqrt(std::abs(w));
  fr.tag = tag;
  RVector xi = fr.point / fr.r;
  Eigen::MatrixXd g;
  if (tag == FrameMetric::Ambient) {
    g = space.real_flat();
  } else {
    if (!family) throw DomainError("potential frame needs a potential family");
    require_admissible(*family, space, w);
    g = values(potential_metric_real(*family, space, as_vec(fr.point)));
    xi /= std::sqrt(xi.dot(g * xi));
  }
  fr.xi = xi;
  fr.j_xi = apply_J0(xi);
  fr.eta = g * fr.xi;
  fr.eta_tilde = g * fr.j_xi;
  return fr;
}

// ---------------------------------------------------------------------------

ConformalFactors conformal_factors(const PotentialFamily& family, double r) {
  AmbientSpace lorentz(2, Signature::Lorentz);
  const double w = -r * r;
  require_admissible(family, lorentz, w);
  const double fp = family.derivative(w, 1);
  const double ratio = r * r * family.derivative(w, 2) / fp;
  if (!(ratio > 1.0))
    throw ConformalDomainError("r^2 f''/f' = " + std::to_string(ratio) + " <= 1: e^{-2v} would not be positive");
  return {-0.5 * std::log(2.0 * fp), -0.5 * std::log(ratio - 1.0)};
}

HermitianMatrix metric_from_conformal_pair(const AmbientSpace& space, const UnivariateFn& u, const UnivariateFn& v,
                                           const CPoint& z) {
  if (!in_timelike_domain(space, z)) throw DomainError("point is not in the time-like domain");
  Mat<double> g = conformal_metric_real(space, u, v, as_vec(complex_to_real(z.z)));
  return real_to_hermitian(values(g));
}

std::pair<UnivariateFn, UnivariateFn> conformal_profiles(const PotentialFamily& family) {
  UnivariateFn u([family](const auto& r) { return -0.5 * log(2.0 * family.derivative(-(r * r), 1)); });
  UnivariateFn v([family](const auto& r) {
    auto w = -(r * r);
    return -0.5 * log(r * r * family.derivative(w, 2) / family.derivative(w, 1) - 1.0);
  });
  return {u, v};
}

// ---------------------------------------------------------------------------

std::vector<CPoint> sample_points(const AmbientSpace& space, const SampleSpec& spec, const PotentialFamily* family) {
  if (spec.count < 0 || !(spec.rmin > 0.0) || spec.rmax < spec.rmin) throw ConfigError("bad sampling range");
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> radius(spec.rmin, spec.rmax);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  std::normal_distribution<double> gauss;
  std::vector<CPoint> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < spec.count) {
    if (++attempts > 1000 * std::max(1, spec.count)) throw DomainError("sampling rejected too many points");
    const double r = radius(rng);
    CPoint z;
    z.z.resize(static_cast<std::size_t>(space.n));
    if (space.signature == Signature::Lorentz) {
      double d2 = 0.0;
      for (int a = 0; a + 1 < space.n; ++a) {
        z.z[a] = 0.3 * r * cplx(gauss(rng), gauss(rng));
        d2 += std::norm(z.z[a]);
      }
      z.z[space.n - 1] = std::polar(std::sqrt(r * r + d2), phase(rng));
    } else {
      double s = 0.0;
      for (auto& c : z.z) {
        c = cplx(gauss(rng), gauss(rng));
        s += std::norm(c);
      }
      for (auto& c : z.z) c *= r / std::sqrt(s);
    }
    if (family) {
      const double w = square_norm(space, z);
      if (!family->in_domain(w, space.signature) || !admissibility(*family, space, w).ok) continue;
    }
    out.push_back(std::move(z));
  }
  return out;
}

}  // namespace qck
