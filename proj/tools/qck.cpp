// qck: command-line front end. Exit codes: 0 pass, 1 check failure or
// library error, 2 usage/config error.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qck/acceptance.hpp"
#include "qck/ambient_fields.hpp"
#include "qck/charts.hpp"
#include "qck/parallel.hpp"
#include "qck/qc.hpp"
#include "qck/rotational.hpp"
#include "qck/sasakian.hpp"

using json = nlohmann::json;
using namespace qck;

namespace {

constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// configuration: JSON file first, then any flag that was given

struct Flags {
  std::string config;
  std::optional<int> n;
  std::optional<std::string> space, family, coeffs, output;
  std::optional<double> a, r0, c;
  std::optional<int> count;
  std::optional<std::uint64_t> seed;
  std::optional<double> rmin, rmax;
  std::vector<std::string> points, tolerances;
};

struct RunConfig {
  AmbientSpace space;
  PotentialFamily family;
  std::vector<RVector> points;  // explicit points, if any
  SampleSpec spec;
  std::map<std::string, double> tol{{"residual", 1e-6}, {"kahler", 1e-9}, {"symmetry", 1e-9}};
  std::string output = "json";

  json to_json() const {
    json j{{"n", space.n},
           {"space", to_string(space.signature)},
           {"potential", family.to_json()},
           {"tolerances", tol},
           {"output", output}};
    if (points.empty()) {
      j["points"] = {{"count", spec.count}, {"seed", spec.seed}, {"rmin", spec.rmin}, {"rmax", spec.rmax}};
    } else {
      json list = json::array();
      for (const RVector& p : points) list.push_back(std::vector<double>(p.data(), p.data() + p.size()));
      j["points"] = list;
    }
    return j;
  }
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--config", f.config, "JSON run configuration; flags override it");
  app->add_option("--n", f.n, "complex dimension");
  app->add_option("--space", f.space, "definite | lorentz");
  app->add_option("--family", f.family, "log | inverse | series | log1p");
  app->add_option("--a", f.a, "log family: curvature parameter a");
  app->add_option("--r0", f.r0, "log family: inner radius r0");
  app->add_option("--c", f.c, "log1p family: f = ln(1 + c w)");
  app->add_option("--coeffs", f.coeffs, "series family: comma-separated coefficients of w^0, w^1, ...");
  app->add_option("--count", f.count, "number of sampled points");
  app->add_option("--seed", f.seed, "sampling seed");
  app->add_option("--rmin", f.rmin, "smallest sampled radius");
  app->add_option("--rmax", f.rmax, "largest sampled radius");
  app->add_option("--point", f.points, "explicit point x1,y1,...,xn,yn (repeatable)");
  app->add_option("--tol", f.tolerances, "tolerance override key=value (residual, kahler, symmetry)");
  app->add_option("--output", f.output, "json | csv");
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw ConfigError("cannot read '" + item + "' in " + what);
    }
  }
  return out;
}

json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  try {
    json j = json::parse(in);
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

RVector point_from(const std::vector<double>& v, int n) {
  if (static_cast<int>(v.size()) != 2 * n)
    throw ConfigError("a point needs " + std::to_string(2 * n) + " real coordinates, got " + std::to_string(v.size()));
  return Eigen::Map<const RVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

RunConfig resolve(const Flags& f, const json& file, const std::set<std::string>& extra_keys = {}) {
  static const std::set<std::string> known{"n", "space", "potential", "points", "tolerances", "output"};
  for (const auto& [key, _] : file.items())
    if (!known.count(key) && !extra_keys.count(key)) throw ConfigError("unknown config key '" + key + "'");
  RunConfig rc;
  try {
    int n = f.n ? *f.n : file.value("n", 3);
    std::string space = f.space ? *f.space : file.value("space", std::string("lorentz"));
    if (n < 1) throw ConfigError("n must be positive");
    rc.space = AmbientSpace(n, signature_from_string(space));

    json pot = file.value("potential", json{{"kind", "log"}, {"a", -1.0}, {"r0", 1.0}});
    if (f.family && *f.family != pot.value("kind", std::string())) pot = json{{"kind", *f.family}};
    if (f.a) pot["a"] = *f.a;
    if (f.r0) pot["r0"] = *f.r0;
    if (f.c) pot["c"] = *f.c;
    if (f.coeffs) pot["coeffs"] = parse_list(*f.coeffs, "--coeffs");
    rc.family = PotentialFamily::from_json(pot);

    if (file.contains("points") && file["points"].is_array()) {
      for (const auto& p : file["points"]) rc.points.push_back(point_from(p.get<std::vector<double>>(), n));
    } else if (file.contains("points")) {
      const json& p = file["points"];
      rc.spec.count = p.value("count", rc.spec.count);
      rc.spec.seed = p.value("seed", rc.spec.seed);
      rc.spec.rmin = p.value("rmin", rc.spec.rmin);
      rc.spec.rmax = p.value("rmax", rc.spec.rmax);
    }
    if (!f.points.empty()) {
      rc.points.clear();
      for (const auto& s : f.points) rc.points.push_back(point_from(parse_list(s, "--point"), n));
    }
    if (f.count) rc.spec.count = *f.count;
    if (f.seed) rc.spec.seed = *f.seed;
    if (f.rmin) rc.spec.rmin = *f.rmin;
    if (f.rmax) rc.spec.rmax = *f.rmax;

    if (file.contains("tolerances"))
      for (const auto& [k, v] : file["tolerances"].items()) rc.tol[k] = v.get<double>();
    for (const auto& kv : f.tolerances) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--tol expects key=value");
      rc.tol[kv.substr(0, eq)] = parse_list(kv.substr(eq + 1), "--tol").at(0);
    }
    for (const auto& [k, _] : rc.tol)
      if (k != "residual" && k != "kahler" && k != "symmetry") throw ConfigError("unknown tolerance '" + k + "'");

    rc.output = f.output ? *f.output : file.value("output", std::string("json"));
    if (rc.output != "json" && rc.output != "csv") throw ConfigError("output must be json or csv");
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return rc;
}

// Sampled points are filtered by the family's domain and admissibility; if
// nothing admissible can be found the unfiltered sample is used so that the
// per-point report shows why.
std::vector<RVector> points_of(const RunConfig& rc) {
  if (!rc.points.empty()) return rc.points;
  std::vector<CPoint> pts;
  try {
    pts = sample_points(rc.space, rc.spec, &rc.family);
  } catch (const DomainError&) {
    pts = sample_points(rc.space, rc.spec, nullptr);
  }
  std::vector<RVector> out;
  for (const auto& z : pts) out.push_back(complex_to_real(z.z));
  return out;
}

json error_json(const std::exception& e) {
  if (const auto* q = dynamic_cast<const Error*>(&e)) return {{"kind", q->kind()}, {"message", e.what()}};
  return {{"kind", "Error"}, {"message", e.what()}};
}

std::string csv_cell(const json& v) {
  if (v.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

// Scalar fields of any row become CSV columns (known ones in a fixed
// order); arrays and objects are JSON-only apart from the error kind.
void emit(const RunConfig& rc, const std::string& command, const std::vector<json>& rows, bool pass) {
  if (rc.output == "csv") {
    static const std::vector<std::string> order{
        "index", "r", "admissible", "f_prime", "f_prime_plus_w_f_second", "min_eigenvalue", "kahler_defect",
        "a", "b", "c", "residual", "k", "a_plus_k2", "class", "p_star", "k_spread", "bochner_norm", "scalar",
        "sigma", "kappa", "max_abs_riemann", "symmetry_defect", "bianchi_defect", "hsc_min", "hsc_max", "ok"};
    std::vector<json> flat;
    std::set<std::string> seen;
    for (json r : rows) {
      if (r.contains("error")) r["error_kind"] = r["error"]["kind"];
      for (const auto& [k, v] : r.items())
        if (!v.is_structured()) seen.insert(k);
      flat.push_back(std::move(r));
    }
    std::vector<std::string> cols;
    for (const auto& k : order)
      if (seen.erase(k)) cols.push_back(k);
    cols.insert(cols.end(), seen.begin(), seen.end());
    for (std::size_t i = 0; i < cols.size(); ++i) std::cout << (i ? "," : "") << cols[i];
    std::cout << "\n";
    for (const json& r : flat) {
      for (std::size_t i = 0; i < cols.size(); ++i) std::cout << (i ? "," : "") << csv_cell(r.value(cols[i], json()));
      std::cout << "\n";
    }
    return;
  }
  json out{{"schema_version", kSchemaVersion}, {"command", command}, {"config", rc.to_json()},
           {"points", rows},          {"pass", pass}};
  std::cout << out.dump(2) << "\n";
}

double radius_of(const AmbientSpace& space, const RVector& p) {
  return std::sqrt(std::abs(square_norm(space, CPoint{real_to_complex(p)})));
}

json base_row(const RunConfig& rc, int i, const RVector& p) {
  return {{"index", i},
          {"point", std::vector<double>(p.data(), p.data() + p.size())},
          {"r", radius_of(rc.space, p)}};
}

void put_decomposition(json& row, const QCDecomposition& d) {
  row["a"] = d.a;
  row["b"] = d.b;
  row["c"] = d.c;
  row["residual"] = d.residual;
  row["k"] = d.k;
  row["a_plus_k2"] = d.a_plus_k2;
  row["class"] = to_string(d.cls);
}

// Per-point work in parallel; each slot is written by one worker only.
template <class F>
std::vector<json> per_point(const std::vector<RVector>& pts, F f) {
  std::vector<json> rows(pts.size());
  parallel_for(static_cast<int>(pts.size()), [&](int i) {
    try {
      rows[static_cast<std::size_t>(i)] = f(i, pts[static_cast<std::size_t>(i)]);
    } catch (const std::exception& e) {
      rows[static_cast<std::size_t>(i)] = {{"index", i}, {"ok", false}, {"error", error_json(e)}};
    }
  });
  return rows;
}

bool all_ok(const std::vector<json>& rows) {
  for (const json& r : rows)
    if (!r.value("ok", false)) return false;
  return !rows.empty();
}

// ---------------------------------------------------------------------------

int cmd_check_potential(const RunConfig& rc) {
  MetricField g = potential_metric_field(rc.family, rc.space);
  VectorField xi = radial_unit_field(rc.space, &rc.family);
  auto rows = per_point(points_of(rc), [&](int i, const RVector& p) {
    json row = base_row(rc, i, p);
    const double w = square_norm(rc.space, CPoint{real_to_complex(p)});
    auto adm = admissibility(rc.family, rc.space, w);
    row["f_prime"] = adm.f_prime;
    row["f_prime_plus_w_f_second"] = adm.f_prime_plus_w_f_second;
    row["admissible"] = adm.ok;
    bool ok = adm.ok;
    if (!adm.ok)
      row["error"] = {{"kind", "AdmissibilityError"},
                      {"message", adm.degenerate ? "f' + w f'' vanishes" : "f' or f' + w f'' has the wrong sign"}};
    if (adm.degenerate) {
      row["ok"] = false;
      return row;
    }
    Eigen::MatrixXd gm = g.at(p);
    row["min_eigenvalue"] = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gm).eigenvalues().minCoeff();
    row["kahler_defect"] = kahler_defect(g, p);
    ok = ok && row["min_eigenvalue"].get<double>() > 0.0 && row["kahler_defect"].get<double>() < rc.tol.at("kahler");
    try {
      auto d = analyse_point(g, xi, p).decomposition;
      put_decomposition(row, d);
      ok = ok && d.residual < rc.tol.at("residual");
    } catch (const Error& e) {
      if (!row.contains("error")) row["error"] = error_json(e);
      ok = false;
    }
    row["ok"] = ok;
    return row;
  });
  const bool pass = all_ok(rows);
  emit(rc, "check-potential", rows, pass);
  return pass ? 0 : 1;
}

int cmd_curvature(const RunConfig& rc, const std::string& path, int hsc_samples) {
  MetricField g = potential_metric_field(rc.family, rc.space);
  VectorField xi = radial_unit_field(rc.space, &rc.family);
  const DerivativePath dp = path == "fd" ? DerivativePath::FiniteDifference : DerivativePath::Exact;
  auto rows = per_point(points_of(rc), [&](int i, const RVector& p) {
    json row = base_row(rc, i, p);
    RVector x = xi.at(p);
    auto b = riemann(g, p, &x, dp);
    row["scalar"] = b.scalar;
    row["sigma"] = *b.sigma;
    row["kappa"] = *b.kappa;
    row["max_abs_riemann"] = b.riemann.max_abs();
    row["symmetry_defect"] = b.symmetry_defect;
    row["bianchi_defect"] = b.bianchi_defect;
    if (hsc_samples > 0) {
      std::mt19937_64 rng(rc.spec.seed + static_cast<std::uint64_t>(i));
      std::normal_distribution<double> N;
      double lo = INFINITY, hi = -INFINITY;
      for (int s = 0; s < hsc_samples; ++s) {
        RVector v(p.size());
        for (int k = 0; k < v.size(); ++k) v(k) = N(rng);
        if (v.dot(b.g * v) <= 0.0) continue;
        const double h = holomorphic_sectional_curvature(b, v);
        lo = std::min(lo, h);
        hi = std::max(hi, h);
      }
      if (lo <= hi) {
        row["hsc_min"] = lo;
        row["hsc_max"] = hi;
      }
    }
    std::vector<std::vector<double>> ricci(static_cast<std::size_t>(b.ricci.rows()));
    for (Eigen::Index r = 0; r < b.ricci.rows(); ++r)
      for (Eigen::Index c = 0; c < b.ricci.cols(); ++c) ricci[static_cast<std::size_t>(r)].push_back(b.ricci(r, c));
    row["ricci"] = ricci;
    row["ok"] = b.symmetry_defect < rc.tol.at("symmetry") && b.bianchi_defect < rc.tol.at("symmetry");
    return row;
  });
  const bool pass = all_ok(rows);
  emit(rc, "curvature", rows, pass);
  return pass ? 0 : 1;
}

int cmd_decompose(const RunConfig& rc) {
  MetricField g = potential_metric_field(rc.family, rc.space);
  VectorField xi = radial_unit_field(rc.space, &rc.family);
  auto rows = per_point(points_of(rc), [&](int i, const RVector& p) {
    json row = base_row(rc, i, p);
    auto qp = analyse_point(g, xi, p);
    put_decomposition(row, qp.decomposition);
    row["p_star"] = qp.b0.p_star;
    row["k_spread"] = qp.b0.spread;
    row["bochner_norm"] = bochner(qp.bundle).norm();
    row["ok"] = qp.decomposition.residual < rc.tol.at("residual");
    return row;
  });
  const bool pass = all_ok(rows);
  emit(rc, "decompose", rows, pass);
  return pass ? 0 : 1;
}

// ---------------------------------------------------------------------------

struct MeridianFlags {
  std::string config;
  std::optional<std::string> type;
  std::optional<double> c1, c2, a, t0, t1, sign;
  std::optional<int> steps;
  std::string out;
  bool candidates = false;
};

void add_meridian(CLI::App* app, MeridianFlags& m, bool bochner_mode) {
  app->add_option("--config", m.config, "JSON with type, c1, c2, a, t0, t1, steps");
  app->add_option("--type", m.type, "I | II | III");
  if (bochner_mode) {
    app->add_option("--c1", m.c1, "t^4 coefficient of P");
    app->add_option("--c2", m.c2, "t^2 coefficient of P");
    app->add_option("--sign", m.sign, "orientation t' = sign*P(t)");
    app->add_flag("--candidates", m.candidates, "type III: report both orientations as JSON");
  } else {
    app->add_option("--a", m.a, "holomorphic sectional curvature (< 0)");
  }
  app->add_option("--t0", m.t0, "start of the t interval");
  app->add_option("--t1", m.t1, "end of the t interval");
  app->add_option("--steps", m.steps, "number of rows");
  app->add_option("--out", m.out, "write the CSV here instead of stdout");
}

int cmd_meridian(const MeridianFlags& m, bool bochner_mode) {
  json file = load_config(m.config);
  for (const auto& [key, _] : file.items())
    if (key != "type" && key != "c1" && key != "c2" && key != "a" && key != "t0" && key != "t1" && key != "steps" &&
        key != "sign")
      throw ConfigError("unknown config key '" + key + "'");
  auto pick = [&](const std::optional<double>& flag, const char* key, double fallback) {
    if (flag) return *flag;
    try {
      return file.value(key, fallback);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("malformed config: ") + e.what());
    }
  };
  const RotationType type = rotation_type_from_string(m.type ? *m.type : file.value("type", std::string("II")));
  const double t0 = pick(m.t0, "t0", 0.5), t1 = pick(m.t1, "t1", 3.0);
  const int steps = m.steps ? *m.steps : file.value("steps", 200);
  if (steps < 2) throw ConfigError("--steps must be at least 2");
  if (!(t1 > t0)) throw ConfigError("need t0 < t1");

  if (bochner_mode && m.candidates) {
    if (type != RotationType::III) throw ConfigError("--candidates applies to type III only");
    json list = json::array();
    for (const auto& c : type3_bochner_candidates(pick(m.c1, "c1", 0.0), pick(m.c2, "c2", 0.0), t0, t1, steps))
      list.push_back({{"sign", c.sign}, {"admissible", c.admissible}, {"max_abs_c", c.max_abs_c}, {"error", c.error}});
    std::cout << json{{"schema_version", kSchemaVersion}, {"candidates", list}}.dump(2) << "\n";
    return 0;
  }

  MeridianProfile prof =
      bochner_mode
          ? MeridianProfile::bochner(type, pick(m.c1, "c1", 0.0), pick(m.c2, "c2", 0.0), t0, t1, pick(m.sign, "sign", 1.0))
          : MeridianProfile::const_hsc(type, pick(m.a, "a", -1.0), t0, t1);
  const std::string csv = meridian_csv(prof, steps);
  if (m.out.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(m.out);
    if (!f) throw ConfigError("cannot write '" + m.out + "'");
    f << csv;
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct SasakiFlags {
  std::optional<double> r, q;
  bool family_h1 = false, gauss = false, outward = false;
};

std::vector<RVector> sphere_points(const RunConfig& rc, double r) {
  if (!rc.points.empty()) return rc.points;
  std::mt19937_64 rng(rc.spec.seed);
  std::vector<RVector> out;
  const int m = 2 * rc.space.n;
  if (rc.space.signature == Signature::Lorentz) {
    SphereChart chart(rc.space, r);
    std::uniform_real_distribution<double> U(-0.8, 0.8), A(-3.0, 3.0);
    for (int s = 0; s < rc.spec.count; ++s) {
      Vec<double> u(static_cast<std::size_t>(m - 1));
      for (int i = 0; i < m - 2; ++i) u[static_cast<std::size_t>(i)] = U(rng);
      u.back() = A(rng);
      Vec<double> z = chart.embed(u);
      out.push_back(Eigen::Map<RVector>(z.data(), m));
    }
  } else {
    std::normal_distribution<double> N;
    for (int s = 0; s < rc.spec.count; ++s) {
      RVector z(m);
      for (int i = 0; i < m; ++i) z(i) = N(rng);
      out.push_back(z * (r / z.norm()));
    }
  }
  return out;
}

int cmd_sasaki(const RunConfig& rc, const SasakiFlags& s) {
  SasakianOptions opt;
  opt.gauss_check = s.gauss;
  json reports = json::array();
  json head{{"schema_version", kSchemaVersion}, {"command", "sasaki"}};
  if (s.family_h1) {
    if (!s.q) throw ConfigError("--family-h1 needs --q");
    RunConfig h1 = rc;
    h1.space = AmbientSpace(3, Signature::Lorentz);
    for (const RVector& z : sphere_points(h1, 1.0)) reports.push_back(sasakian_family_report(*s.q, z, opt).to_json());
    head["family"] = "h1";
    head["q"] = *s.q;
  } else {
    if (!s.r) throw ConfigError("sasaki needs --r or --family-h1 --q");
    const double r = *s.r;
    const double w = rc.space.signature == Signature::Lorentz ? -r * r : r * r;
    if (!(r > 0.0) || !rc.family.in_domain(w, rc.space.signature))
      throw DomainError("the sphere of radius " + std::to_string(r) + " lies outside the domain of the " +
                        rc.family.name() + " potential");
    if (!admissibility(rc.family, rc.space, w).ok)
      throw AdmissibilityError("the potential is not admissible on the sphere of radius " + std::to_string(r));
    MetricField g = potential_metric_field(rc.family, rc.space);
    const auto orient = s.outward ? NormalOrientation::Outward : NormalOrientation::Inward;
    for (const RVector& z : sphere_points(rc, r))
      reports.push_back(alpha_sasakian_check(g, rc.space, z, r, opt, orient).to_json());
    head["config"] = rc.to_json();
    head["r"] = r;
  }
  // summary from the first point; every point is listed in "reports"
  for (const char* key : {"alpha", "c", "c_plus_3a2", "type"})
    if (!reports.empty()) head[key] = reports.front()[key];
  head["reports"] = reports;
  head["pass"] = true;
  std::cout << head.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, bool as_json) {
  auto ids = suite_criteria(suite);
  bool ok = true;
  json results = json::array();
  for (int id : ids) {
    auto r = run_criterion(id);
    ok = ok && r.pass;
    if (as_json) {
      results.push_back(r.to_json());
    } else {
      std::cout << format_line(r) << std::endl;
    }
  }
  if (as_json) {
    std::cout << json{{"schema_version", kSchemaVersion}, {"suite", suite}, {"pass", ok}, {"results", results}}.dump(2)
              << "\n";
  } else {
    std::cout << (ok ? "all criteria passed" : "FAILED") << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quasi-constant holomorphic sectional curvature toolkit"};
  app.require_subcommand(1);

  Flags check_f, curv_f, dec_f, sas_f;
  auto* check = app.add_subcommand("check-potential", "admissibility, positivity, Kähler defect and decomposition");
  add_common(check, check_f);
  auto* curv = app.add_subcommand("curvature", "curvature tensor summary at sample points");
  add_common(curv, curv_f);
  std::string path = "exact";
  int hsc_samples = 20;
  curv->add_option("--path", path, "exact | fd")->check(CLI::IsMember({"exact", "fd"}));
  curv->add_option("--hsc-samples", hsc_samples, "random directions for the HSC range");
  auto* dec = app.add_subcommand("decompose", "R = a pi + b Phi + c Psi at sample points");
  add_common(dec, dec_f);

  auto* mer = app.add_subcommand("meridian", "meridian profile as CSV");
  mer->require_subcommand(1);
  MeridianFlags boch_m, hsc_m;
  auto* boch = mer->add_subcommand("bochner", "Bochner-Kähler meridian t' = P(t) = c1 t^4 + c2 t^2 + 1");
  add_meridian(boch, boch_m, true);
  auto* hsc = mer->add_subcommand("const-hsc", "meridian of constant holomorphic sectional curvature a");
  add_meridian(hsc, hsc_m, false);

  auto* sas = app.add_subcommand("sasaki", "alpha-Sasakian check on a hypersphere");
  add_common(sas, sas_f);
  SasakiFlags sflags;
  sas->add_option("--r", sflags.r, "sphere radius");
  sas->add_flag("--family-h1", sflags.family_h1, "the space-form family on H(1)");
  sas->add_option("--q", sflags.q, "family parameter q > 0");
  sas->add_flag("--gauss", sflags.gauss, "also compare with the intrinsic curvature");
  sas->add_flag("--outward", sflags.outward, "use the outward normal");

  auto* ver = app.add_subcommand("verify", "run the acceptance criteria");
  std::string suite = "all";
  bool as_json = false;
  ver->add_option("--suite", suite, "all | flat | qch | bochner | sasaki | hygiene");
  ver->add_flag("--json", as_json, "machine-readable results");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*check) return cmd_check_potential(resolve(check_f, load_config(check_f.config)));
    if (*curv) return cmd_curvature(resolve(curv_f, load_config(curv_f.config)), path, hsc_samples);
    if (*dec) return cmd_decompose(resolve(dec_f, load_config(dec_f.config)));
    if (*boch) return cmd_meridian(boch_m, true);
    if (*hsc) return cmd_meridian(hsc_m, false);
    if (*sas) {
      json file = load_config(sas_f.config);
      RunConfig rc = resolve(sas_f, file);
      // a few sphere points are enough unless asked otherwise
      if (!sas_f.count && !(file.contains("points") && file["points"].is_object() && file["points"].contains("count")))
        rc.spec.count = 3;
      return cmd_sasaki(rc, sflags);
    }
    if (*ver) return cmd_verify(suite, as_json);
  } catch (const ConfigError& e) {
    std::cerr << "qck: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cout << json{{"schema_version", kSchemaVersion}, {"error", error_json(e)}, {"pass", false}}.dump(2) << "\n";
    std::cerr << "qck: " << error_json(e)["kind"].get<std::string>() << ": " << e.what() << "\n";
    return 1;
  }
  return 2;
}
