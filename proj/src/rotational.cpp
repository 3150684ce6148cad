#include "qck/rotational.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include <boost/math/interpolators/cardinal_quintic_b_spline.hpp>
#include <boost/numeric/odeint.hpp>

#include "qck/parallel.hpp"

namespace qck {

namespace {

constexpr double kBand = 1e-12;

// q′ from the natural-parameter constraint, as dq/dt = q′/t′:
// I: q′² = 1 − t′², II and III: q′² = t′² − 1.
UnivariateFn dq_dt_from(RotationType type, const UnivariateFn& tp, double orientation) {
  const double e = type == RotationType::I ? -1.0 : 1.0;
  return UnivariateFn([type, tp, e, orientation](const auto& t) {
    using T = std::decay_t<decltype(t)>;
    (void)type;
    T p = tp(t);
    T arg = e * (p * p - 1.0);
    if (!(value_of(arg) > 0.0)) return T(0.0);
    return orientation * sqrt(arg) / p;
  });
}

void check_interval(double t0, double t1) {
  if (!(t0 > 0.0) || !(t1 > t0)) throw DomainError("meridian interval must satisfy 0 < t0 < t1");
}

void check_band(RotationType type, const UnivariateFn& tp, double t0, double t1) {
  for (int i = 0; i <= 1000; ++i) {
    const double t = t0 + (t1 - t0) * i / 1000.0;
    check_type_constraint(type, t, tp(t));
  }
}

using State = std::array<double, 2>;  // (s, q) as functions of t

}  // namespace

std::string to_string(RotationType t) {
  switch (t) {
    case RotationType::I: return "I";
    case RotationType::II: return "II";
    default: return "III";
  }
}

RotationType rotation_type_from_string(const std::string& s) {
  if (s == "I") return RotationType::I;
  if (s == "II") return RotationType::II;
  if (s == "III") return RotationType::III;
  throw ConfigError("unknown rotation type '" + s + "' (expected I, II or III)");
}

void check_type_constraint(RotationType type, double t, double tp) {
  if (!(t > 0.0)) throw TypeConstraintError("meridian radius t must be positive");
  bool ok = false;
  switch (type) {
    case RotationType::I: ok = tp > 0.0 && tp <= 1.0 + kBand; break;
    case RotationType::II: ok = tp >= 1.0 - kBand; break;
    case RotationType::III: ok = tp <= -1.0 + kBand; break;
  }
  if (!ok) {
    std::ostringstream os;
    os << "type " << to_string(type) << " needs "
       << (type == RotationType::I ? "0 < t' <= 1" : type == RotationType::II ? "t' >= 1" : "t' <= -1")
       << ", got t' = " << tp << " at t = " << t;
    throw TypeConstraintError(os.str());
  }
}

CoefficientTriple qc_coefficients(RotationType type, double t, double tp, double tpp, double tppp) {
  check_type_constraint(type, t, tp);
  const double t2 = t * t;
  CoefficientTriple r;
  // c for III: the (tt′/t″)′ factor expanded, which gives the negative of
  // the I/II expression
  const double a = 4.0 * (1.0 - tp) / t2;
  const double b = 8.0 * ((tp - 1.0) / t2 - tpp / (2.0 * t * tp));
  const double c = a + 5.0 * tpp / (2.0 * t * tp) + (tpp * tpp - tp * tppp) / (2.0 * tp * tp * tp);
  if (type == RotationType::III) {
    r.a = -a;
    r.b = -b;
    r.c = -c;
    r.k = 2.0 * tp / (t * std::sqrt(-tp));
  } else {
    r.a = a;
    r.b = b;
    r.c = c;
    r.k = 2.0 * std::sqrt(tp) / t;
  }
  r.a_plus_k2 = r.a + r.k * r.k;
  return r;
}

double const_hsc_meridian(RotationType type, double a, double t) {
  if (!(a < 0.0)) throw DomainError("constant holomorphic sectional curvature must be negative");
  if (!(t > 0.0)) throw DomainError("t must be positive");
  const double sa = std::sqrt(-a);
  if (type == RotationType::II) {
    const double u = std::sqrt(8.0 - a * t * t);
    return (u + std::log((u - 2.0) / (u + 2.0))) / sa;
  }
  if (type == RotationType::III) {
    if (!(t > 2.0 * std::sqrt(2.0) / sa)) throw DomainError("type III needs t > 2*sqrt(2)/sqrt(-a)");
    const double w = 8.0 + a * t * t;
    return (std::sqrt(a * w) - 2.0 * sa * std::atan(0.5 * std::sqrt(-w))) / (-a);
  }
  throw DomainError("constant holomorphic sectional curvature meridians exist for types II and III");
}

MeridianProfile MeridianProfile::bochner(RotationType type, double c1, double c2, double t0, double t1, double sign) {
  check_interval(t0, t1);
  MeridianProfile p;
  p.type_ = type;
  p.source_ = "bochner";
  p.params_ = {{"c1", c1}, {"c2", c2}, {"sign", sign}};
  p.t0_ = t0;
  p.t1_ = t1;
  p.tp_ = UnivariateFn([c1, c2, sign](const auto& t) {
    auto t2 = t * t;
    return sign * (c1 * t2 * t2 + c2 * t2 + 1.0);
  });
  check_band(type, p.tp_, t0, t1);
  p.dqdt_ = dq_dt_from(type, p.tp_, 1.0);
  return p;
}

MeridianProfile MeridianProfile::const_hsc(RotationType type, double a, double t0, double t1) {
  check_interval(t0, t1);
  if (type == RotationType::I) throw DomainError("constant holomorphic sectional curvature meridians exist for types II and III");
  if (!(a < 0.0)) throw DomainError("constant holomorphic sectional curvature must be negative");
  if (type == RotationType::III && !(t0 > 2.0 * std::sqrt(2.0 / -a)))
    throw DomainError("type III needs t > 2*sqrt(2)/sqrt(-a)");
  MeridianProfile p;
  p.type_ = type;
  p.source_ = "const-hsc";
  p.params_ = {{"a", a}};
  p.t0_ = t0;
  p.t1_ = t1;
  // b = 0 integrates to t′ = 1 ∓ a t²/4
  const double c2 = type == RotationType::II ? -a / 4.0 : a / 4.0;
  p.tp_ = UnivariateFn([c2](const auto& t) { return c2 * t * t + 1.0; });
  check_band(type, p.tp_, t0, t1);
  p.dqdt_ = dq_dt_from(type, p.tp_, 1.0);
  // closed form; its + branch increases with t, so for III (t′ < 0) the
  // default orientation q′ ≥ 0 takes the opposite sign
  const double sa = std::sqrt(-a);
  const double branch = type == RotationType::II ? 1.0 : -1.0;
  p.params_["q_branch"] = branch;
  p.q_closed_ = UnivariateFn([type, a, sa, branch](const auto& t) {
    using T = std::decay_t<decltype(t)>;
    if (type == RotationType::II) {
      T u = sqrt(8.0 - a * t * t);
      return branch * (u + log((u - 2.0) / (u + 2.0))) / sa;
    }
    T w = 8.0 + a * t * t;
    return branch * (sqrt(a * w) - 2.0 * sa * atan(0.5 * sqrt(-1.0 * w))) / (-a);
  });
  return p;
}

MeridianProfile MeridianProfile::from_slope(RotationType type, UnivariateFn slope, double t0, double t1,
                                            std::string label) {
  check_interval(t0, t1);
  MeridianProfile p;
  p.type_ = type;
  p.source_ = std::move(label);
  p.params_ = nlohmann::json::object();
  p.t0_ = t0;
  p.t1_ = t1;
  p.tp_ = std::move(slope);
  check_band(type, p.tp_, t0, t1);
  p.dqdt_ = dq_dt_from(type, p.tp_, 1.0);
  return p;
}

MeridianProfile MeridianProfile::tabulated(RotationType type, std::vector<double> s, std::vector<double> t,
                                           std::vector<double> q) {
  if (s.size() < 8 || s.size() != t.size() || s.size() != q.size())
    throw DomainError("tabulated meridian needs at least 8 aligned (s, t, q) samples");
  const double h = (s.back() - s.front()) / static_cast<double>(s.size() - 1);
  if (!(h > 0.0)) throw DomainError("tabulated s must increase");
  for (std::size_t i = 0; i < s.size(); ++i)
    if (std::abs(s[i] - (s.front() + h * static_cast<double>(i))) > 1e-9 * std::max(1.0, std::abs(s.back())))
      throw DomainError("tabulated s grid must be uniform");
  MeridianProfile p;
  p.type_ = type;
  p.source_ = "tabulated";
  p.params_ = {{"samples", s.size()}};
  p.t0_ = *std::min_element(t.begin(), t.end());
  p.t1_ = *std::max_element(t.begin(), t.end());
  p.tab_s_ = std::move(s);
  p.tab_t_ = std::move(t);
  p.tab_q_ = std::move(q);
  return p;
}

MeridianProfile MeridianProfile::flipped() const {
  if (!analytic()) throw DomainError("orientation flip is defined for analytic profiles");
  MeridianProfile p = *this;
  p.orientation_ = -orientation_;
  p.params_["orientation"] = p.orientation_;
  p.dqdt_ = dq_dt_from(type_, tp_, p.orientation_);
  if (!q_closed_.empty()) {
    UnivariateFn base = q_closed_;
    p.q_closed_ = UnivariateFn([base](const auto& t) { return -1.0 * base(t); });
  }
  return p;
}

namespace {

MeridianRow analytic_row(const UnivariateFn& tp, const UnivariateFn& dqdt, const UnivariateFn& q_closed, double t,
                         double s, double q_quad) {
  MeridianRow r;
  r.t = t;
  r.s = s;
  const double p = tp(t), p1 = derivative(tp, t, 1), p2 = derivative(tp, t, 2);
  r.tp = p;
  r.tpp = p1 * p;
  r.tppp = (p2 * p + p1 * p1) * p;
  if (!q_closed.empty()) {
    r.q = q_closed(t);
    r.qp = derivative(q_closed, t, 1) * p;
  } else {
    r.q = q_quad;
    r.qp = dqdt(t) * p;
  }
  return r;
}

}  // namespace

MeridianRow MeridianProfile::at_t(double t) const {
  if (!analytic()) throw DomainError("at_t needs an analytic profile");
  namespace ode = boost::numeric::odeint;
  State x{0.0, 0.0};
  if (t != t0_) {
    auto sys = [this](const State& y, State& dy, double tt) {
      (void)y;
      dy[0] = 1.0 / tp_(tt);
      dy[1] = dqdt_(tt);
    };
    ode::integrate_adaptive(ode::make_controlled(1e-12, 1e-10, ode::runge_kutta_dopri5<State>()), sys, x, t0_, t,
                            (t - t0_) / 100.0);
  }
  return analytic_row(tp_, dqdt_, q_closed_, t, x[0], x[1]);
}

std::vector<MeridianRow> MeridianProfile::rows(int steps) const {
  std::vector<MeridianRow> out;
  if (analytic()) {
    if (steps < 2) throw DomainError("need at least 2 steps");
    namespace ode = boost::numeric::odeint;
    std::vector<double> ts(static_cast<std::size_t>(steps));
    for (int i = 0; i < steps; ++i) ts[i] = t0_ + (t1_ - t0_) * i / (steps - 1.0);
    ts.back() = t1_;
    auto sys = [this](const State& y, State& dy, double tt) {
      (void)y;
      dy[0] = 1.0 / tp_(tt);
      dy[1] = dqdt_(tt);
    };
    State x{0.0, 0.0};
    ode::integrate_times(ode::make_dense_output(1e-12, 1e-10, ode::runge_kutta_dopri5<State>()), sys, x,
                         ts.begin(), ts.end(), (t1_ - t0_) / 1000.0, [&](const State& y, double tt) {
                           out.push_back(analytic_row(tp_, dqdt_, q_closed_, tt, y[0], y[1]));
                         });
    return out;
  }
  const double s0 = tab_s_.front(), s1 = tab_s_.back();
  const double h = (s1 - s0) / static_cast<double>(tab_s_.size() - 1);
  boost::math::interpolators::cardinal_quintic_b_spline<double> ts(tab_t_, s0, h), qs(tab_q_, s0, h);
  std::vector<double> grid;
  if (steps <= 0) {
    grid = tab_s_;
  } else {
    for (int i = 0; i < steps; ++i) grid.push_back(s0 + (s1 - s0) * i / std::max(1.0, steps - 1.0));
  }
  const double d = h / 4.0;
  for (double s : grid) {
    MeridianRow r;
    r.s = s;
    r.t = ts(s);
    r.q = qs(s);
    r.tp = ts.prime(s);
    r.tpp = ts.double_prime(s);
    const double lo = std::max(s0, s - d), hi = std::min(s1, s + d);
    r.tppp = (ts.double_prime(hi) - ts.double_prime(lo)) / (hi - lo);
    r.qp = qs.prime(s);
    out.push_back(r);
  }
  return out;
}

nlohmann::json MeridianProfile::describe() const {
  return {{"type", to_string(type_)}, {"source", source_}, {"params", params_},
          {"t0", t0_},                {"t1", t1_},         {"orientation", orientation_}};
}

double natural_parameter_defect(const MeridianProfile& profile, int steps) {
  std::vector<MeridianRow> rows = profile.rows(profile.analytic() ? steps : 0);
  std::size_t lo = 0, hi = rows.size();
  if (!profile.analytic() && rows.size() > 8) {
    // spline end conditions are estimated; stay off the first and last nodes
    lo = 3;
    hi = rows.size() - 3;
  }
  double worst = 0.0;
  for (std::size_t i = lo; i < hi; ++i) {
    const auto& r = rows[i];
    double v = 0.0;
    switch (profile.type()) {
      case RotationType::I: v = r.tp * r.tp + r.qp * r.qp - 1.0; break;
      case RotationType::II: v = r.tp * r.tp - r.qp * r.qp - 1.0; break;
      case RotationType::III: v = -r.tp * r.tp + r.qp * r.qp + 1.0; break;
    }
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

double bochner_condition(const MeridianRow& r) {
  return r.tpp / (r.t * r.tp) + 4.0 * (1.0 - r.tp) / (r.t * r.t);
}

std::vector<OrientationCandidate> type3_bochner_candidates(double c1, double c2, double t0, double t1, int steps) {
  std::vector<OrientationCandidate> out;
  for (double sign : {1.0, -1.0}) {
    OrientationCandidate c;
    c.sign = sign;
    try {
      MeridianProfile p = MeridianProfile::bochner(RotationType::III, c1, c2, t0, t1, sign);
      c.admissible = true;
      for (const MeridianRow& r : p.rows(steps))
        c.max_abs_c = std::max(c.max_abs_c, std::abs(qc_coefficients(RotationType::III, r.t, r.tp, r.tpp, r.tppp).c));
    } catch (const Error& e) {
      c.error = e.what();
    }
    out.push_back(c);
  }
  return out;
}

std::string meridian_csv(const MeridianProfile& profile, int steps) {
  std::ostringstream os;
  os << "s,t,q,tp,tpp,a,b,c,k,a_plus_k2\n";
  char buf[32];
  auto put = [&](double v, char sep) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    os << buf << sep;
  };
  for (const MeridianRow& r : profile.rows(steps)) {
    CoefficientTriple c = qc_coefficients(profile.type(), r.t, r.tp, r.tpp, r.tppp);
    for (double v : {r.s, r.t, r.q, r.tp, r.tpp, c.a, c.b, c.c, c.k}) put(v, ',');
    put(c.a_plus_k2, '\n');
  }
  return os.str();
}

RotationalStructure rotational_structure(const MeridianProfile& profile, int n) {
  if (!profile.analytic()) throw DomainError("embedding needs an analytic profile");
  if (n < 2) throw DomainError("embedding needs n >= 2");
  const RotationType type = profile.type();
  AmbientSpace space(n, type == RotationType::III ? Signature::Lorentz : Signature::Definite);
  SphereChart chart = type == RotationType::III ? SphereChart(space, 1.0) : SphereChart(space, 1.0, 0, 1.0);
  const Eigen::MatrixXd h = space.real_flat();
  const Eigen::MatrixXd j0 = j0_matrix(n);
  const double e2 = type == RotationType::II ? -1.0 : 1.0;
  const double eps = type == RotationType::III ? -1.0 : 1.0;  // norm of the unit normal n of a parallel
  const int m = 2 * n, d = 2 * n;
  UnivariateFn tp = profile.tp_of_t(), dqdt = profile.dq_dt();

  // Z(t, u) = t·n(u) + q(t)e. Everything below depends on q only through
  // dq/dt, so the quadrature for q never enters the metric.
  auto frame = [=](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    Vec<T> u(x.begin() + 1, x.end());
    Vec<T> nv = chart.embed(u);
    Mat<T> eu(m, d - 1);
    for (int a = 0; a < d - 1; ++a) {
      Vec<Dual<T>> z = chart.embed(seed_direction(u, a));
      for (int i = 0; i < m; ++i) eu(i, a) = z[i].d;
    }
    return std::make_pair(nv, eu);
  };
  auto induced = [=](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    auto [nv, eu] = frame(x);
    const T& t = x[0];
    T qt = dqdt(t);
    Mat<T> hh = lift<T>(h);
    Mat<T> g(d, d);
    g(0, 0) = bilinear(hh, nv, nv) + e2 * qt * qt;
    Mat<T> guu = eu.transpose() * hh * eu;
    for (int a = 1; a < d; ++a) {
      Vec<T> col(m);
      for (int i = 0; i < m; ++i) col[i] = eu(i, a - 1);
      g(0, a) = g(a, 0) = t * bilinear(hh, nv, col);
      for (int b = 1; b < d; ++b) g(a, b) = t * t * guu(a - 1, b - 1);
    }
    return g;
  };
  // η̄ and η̃̄ as covectors on (t, u)
  auto forms = [=](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    auto [nv, eu] = frame(x);
    Mat<T> g = induced(x);
    T p = tp(x[0]);
    Vec<T> eta(d), eta_t(d, T(0.0));
    for (int a = 0; a < d; ++a) eta[a] = p * g(a, 0);  // ξ̄ = t′∂_t
    Vec<T> jn = lift<T>(h) * (lift<T>(j0) * nv);
    for (int a = 1; a < d; ++a)
      for (int i = 0; i < m; ++i) eta_t[a] += x[0] * eu(i, a - 1) * jn[i];
    return std::make_tuple(g, eta, eta_t, p);
  };

  RotationalStructure out{MetricField(d, induced), {}, {}, {}, chart};
  out.g = MetricField(d, [=](const auto& x) {
    auto [g, eta, eta_t, p] = forms(x);
    auto w = type == RotationType::III ? 1.0 - p : p - 1.0;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) g(a, b) = g(a, b) + w * (eta[a] * eta[b] + eta_t[a] * eta_t[b]);
    return g;
  });
  out.j = EndomorphismField(d, [=](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    auto [nv, eu] = frame(x);
    const T& t = x[0];
    T p = tp(t);
    Mat<T> hh = lift<T>(h), jj = lift<T>(j0);
    // u-components of a vector tangent to the parallel through x
    Mat<T> te = t * eu;
    Mat<T> normal = te.transpose() * te;
    auto u_coords = [&](const Vec<T>& y) { return solve(normal, te.transpose() * y); };
    Vec<T> jn = jj * nv;
    Mat<T> jm(d, d);
    // J∂_t = ξ̃̄ / t′
    Vec<T> c0 = u_coords(jn);
    for (int a = 1; a < d; ++a) jm(a, 0) = c0[a - 1] / p;
    // J y = J₀y + β(n − ξ̄) with β the ξ̃̄-component of y
    Vec<T> hjn = hh * jn;
    for (int b = 1; b < d; ++b) {
      Vec<T> y(m);
      T beta(0.0);
      for (int i = 0; i < m; ++i) {
        y[i] = te(i, b - 1);
        beta += y[i] * hjn[i];
      }
      beta = beta / eps;
      Vec<T> img = jj * y;
      for (int i = 0; i < m; ++i) img[i] = img[i] + beta * nv[i];
      Vec<T> cb = u_coords(img);
      jm(0, b) = -1.0 * beta * p;
      for (int a = 1; a < d; ++a) jm(a, b) = cb[a - 1];
    }
    return jm;
  });
  out.xi = VectorField(d, [=](const auto& x) {
    using T = typename std::decay_t<decltype(x)>::value_type;
    T p = tp(x[0]);
    Vec<T> v(d, T(0.0));
    v[0] = p / sqrt(abs(p));  // ξ = ξ̄ / √|t′|
    return v;
  });
  return out;
}

nlohmann::json EmbeddingReport::to_json() const {
  nlohmann::json s = nlohmann::json::array();
  for (const auto& e : samples)
    s.push_back({{"t", e.t},
                 {"closed", {{"a", e.closed.a}, {"b", e.closed.b}, {"c", e.closed.c}, {"k", e.closed.k}}},
                 {"fitted", e.fitted.to_json()},
                 {"delta", e.delta},
                 {"min_eigenvalue", e.min_eigenvalue},
                 {"kahler_defect", e.kahler_defect},
                 {"bochner_norm", e.bochner_norm}});
  return {{"type", to_string(type)},
          {"n", n},
          {"max_delta", max_delta},
          {"min_eigenvalue", min_eigenvalue},
          {"max_kahler_defect", max_kahler_defect},
          {"max_bochner_norm", max_bochner_norm},
          {"samples", s}};
}

EmbeddingReport embed_and_verify(const MeridianProfile& profile, int n, int count, std::uint64_t seed) {
  RotationalStructure rs = rotational_structure(profile, n);
  const int d = 2 * n;
  std::mt19937_64 rng(seed);
  const double span = profile.t1() - profile.t0();
  std::uniform_real_distribution<double> T(profile.t0() + 0.05 * span, profile.t1() - 0.05 * span);
  std::uniform_real_distribution<double> U(-0.35, 0.35), D(-0.8, 0.8), A(-3.0, 3.0);
  std::vector<RVector> points;
  for (int s = 0; s < count; ++s) {
    RVector p(d);
    p(0) = T(rng);
    for (int a = 1; a < d; ++a) {
      if (profile.type() != RotationType::III) p(a) = U(rng);
      else p(a) = a == d - 1 ? A(rng) : D(rng);
    }
    points.push_back(p);
  }

  EmbeddingReport rep;
  rep.type = profile.type();
  rep.n = n;
  rep.samples.resize(static_cast<std::size_t>(count));
  parallel_for(count, [&](int i) {
    EmbeddedSample& e = rep.samples[i];
    e.point = points[i];
    e.t = points[i](0);
    MeridianRow row = profile.at_t(e.t);
    e.closed = qc_coefficients(profile.type(), row.t, row.tp, row.tpp, row.tppp);
    Eigen::MatrixXd j = rs.j.at(e.point);
    QCPoint qp = analyse_point(rs.g, rs.xi, e.point, B0Variant::Riemannian, &j);
    e.fitted = qp.decomposition;
    e.min_eigenvalue = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(qp.bundle.g).eigenvalues().minCoeff();
    e.kahler_defect = kahler_defect(rs.g, rs.j, e.point);
    e.bochner_norm = bochner(qp.bundle.riemann, qp.bundle.g, j).max_abs();
    e.delta = std::max({std::abs(e.fitted.a - e.closed.a), std::abs(e.fitted.b - e.closed.b),
                        std::abs(e.fitted.c - e.closed.c), std::abs(e.fitted.k - e.closed.k),
                        std::abs(e.fitted.a_plus_k2 - e.closed.a_plus_k2)});
  });
  rep.min_eigenvalue = rep.samples.empty() ? 0.0 : rep.samples[0].min_eigenvalue;
  for (const auto& e : rep.samples) {
    rep.max_delta = std::max(rep.max_delta, e.delta);
    rep.min_eigenvalue = std::min(rep.min_eigenvalue, e.min_eigenvalue);
    rep.max_kahler_defect = std::max(rep.max_kahler_defect, e.kahler_defect);
    rep.max_bochner_norm = std::max(rep.max_bochner_norm, e.bochner_norm);
  }
  return rep;
}

}  // namespace qck
