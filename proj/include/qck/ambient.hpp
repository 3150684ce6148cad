#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "qck/dual.hpp"
#include "qck/errors.hpp"
#include "qck/fields.hpp"
#include "qck/matrix.hpp"
#include "qck/tensor_core.hpp"

namespace qck {

enum class Signature { Definite, Lorentz };

std::string to_string(Signature s);
Signature signature_from_string(const std::string& s);

/// Flat ℂⁿ. Hermitian components are diag(½,…,½) (definite) or
/// diag(½,…,½,−½) (Lorentz: the last coordinate is time-like).
struct AmbientSpace {
  int n = 3;
  Signature signature = Signature::Lorentz;

  AmbientSpace() = default;
  AmbientSpace(int n_, Signature s);

  double eps(int a) const { return (signature == Signature::Lorentz && a == n - 1) ? -1.0 : 1.0; }
  HermitianMatrix flat() const;
  Eigen::MatrixXd real_flat() const;
};

/// Σ ε_α |z^α|², i.e. h′(Z,Z) or g′(Z,Z).
double square_norm(const AmbientSpace& space, const CPoint& z);
bool in_timelike_domain(const AmbientSpace& space, const CPoint& z);

template <class T>
T square_norm(const AmbientSpace& space, const Vec<T>& x) {
  T w(0.0);
  for (int a = 0; a < space.n; ++a) w += space.eps(a) * (x[2 * a] * x[2 * a] + x[2 * a + 1] * x[2 * a + 1]);
  return w;
}

// ---------------------------------------------------------------------------
// potential families f(w), w = ±r²

struct LogFamily {
  double a = -1.0;
  double r0 = 1.0;  // r0 = 0 is the scale-invariant borderline (2/a)·ln(−w)
};
struct InverseFamily {};
/// f(w) = Σ c_k w^k.
struct SeriesFamily {
  std::vector<double> coeffs;
};
/// f(w) = ln(1 + c·w); admissible on the definite space for c > 0.
struct Log1pFamily {
  double c = 1.0;
};

class PotentialFamily {
 public:
  using Kind = std::variant<LogFamily, InverseFamily, SeriesFamily, Log1pFamily>;

  PotentialFamily() : kind_(InverseFamily{}) {}
  PotentialFamily(Kind k);  // NOLINT
  template <class K, class = std::enable_if_t<std::is_constructible_v<Kind, K> &&
                                              !std::is_same_v<std::decay_t<K>, PotentialFamily> &&
                                              !std::is_same_v<std::decay_t<K>, Kind>>>
  PotentialFamily(K&& k) : PotentialFamily(Kind(std::forward<K>(k))) {}  // NOLINT

  const Kind& kind() const { return kind_; }
  std::string name() const;

  /// f(w), evaluable on duals.
  template <class T>
  T operator()(const T& w) const {
    return std::visit([&](const auto& k) { return eval(k, w); }, kind_);
  }

  /// f^(k)(w) for k = 0..4. Log and inverse families use closed forms;
  /// series and log1p go through nested duals.
  template <class T>
  T derivative(const T& w, int k) const;

  double derivative(double w, int k) const { return derivative<double>(w, k); }

  /// True when w lies in the family's stated domain for the given signature.
  bool in_domain(double w, Signature s) const;

  nlohmann::json to_json() const;
  static PotentialFamily from_json(const nlohmann::json& j);

 private:
  template <class T>
  static T eval(const LogFamily& k, const T& w) {
    return (2.0 / k.a) * log(-w - k.r0 * k.r0);
  }
  template <class T>
  static T eval(const InverseFamily&, const T& w) {
    return -1.0 / w;
  }
  template <class T>
  static T eval(const SeriesFamily& k, const T& w) {
    T s(0.0);
    for (std::size_t i = k.coeffs.size(); i-- > 0;) s = s * w + k.coeffs[i];
    return s;
  }
  template <class T>
  static T eval(const Log1pFamily& k, const T& w) {
    return log(1.0 + k.c * w);
  }

  Kind kind_;
};

namespace detail {

template <int K, class F, class T>
T nth_derivative(const F& f, const T& w) {
  if constexpr (K == 0) {
    return f(w);
  } else {
    auto fp = [&f](const auto& x) {
      using U = std::decay_t<decltype(x)>;
      return f(Dual<U>(x, U(1.0))).d;
    };
    return nth_derivative<K - 1>(fp, w);
  }
}

}  // namespace detail

template <class T>
T PotentialFamily::derivative(const T& w, int k) const {
  if (k < 0 || k > 4) throw DomainError("potential derivative order must be 0..4");
  if (const auto* lf = std::get_if<LogFamily>(&kind_)) {
    if (k == 0) return eval(*lf, w);
    // f^(k) = (2/a)(−1)^{k−1}(k−1)!/(w + r0²)^k
    double fact = 1.0;
    for (int i = 2; i < k; ++i) fact *= i;
    double sgn = (k % 2 == 1) ? 1.0 : -1.0;
    return (2.0 / lf->a) * sgn * fact / ipow(w + lf->r0 * lf->r0, k);
  }
  if (std::holds_alternative<InverseFamily>(kind_)) {
    if (k == 0) return -1.0 / w;
    // f^(k) = (−1)^{k+1} k! w^{−(k+1)}
    double fact = 1.0;
    for (int i = 2; i <= k; ++i) fact *= i;
    double sgn = (k % 2 == 1) ? 1.0 : -1.0;
    return sgn * fact / ipow(w, k + 1);
  }
  auto f = [this](const auto& x) { return (*this)(x); };
  switch (k) {
    case 0: return detail::nth_derivative<0>(f, w);
    case 1: return detail::nth_derivative<1>(f, w);
    case 2: return detail::nth_derivative<2>(f, w);
    case 3: return detail::nth_derivative<3>(f, w);
    default: return detail::nth_derivative<4>(f, w);
  }
}

struct AdmissibilityReport {
  double f_prime = 0.0;
  double f_prime_plus_w_f_second = 0.0;
  bool ok = false;
  bool degenerate = false;  // f′ + w f″ vanishes: g collapses on D⊥
};

/// Lorentz: f′ > 0 and f′ + w f″ < 0. Definite: f′ > 0 and f′ + w f″ > 0.
/// Throws DomainError if w is outside the family's domain.
AdmissibilityReport admissibility(const PotentialFamily& family, const AmbientSpace& space, double w);

/// Admissibility failure; `degenerate()` marks the borderline f′ + w f″ = 0.
class InadmissiblePotential : public AdmissibilityError {
 public:
  InadmissiblePotential(const std::string& what, bool degenerate)
      : AdmissibilityError(what), degenerate_(degenerate) {}
  bool degenerate() const { return degenerate_; }

 private:
  bool degenerate_;
};

/// Real 2n×2n form of g = ∂∂̄f(w) at real coordinates x, written so it
/// can be differentiated: g_{αβ̄} = f′ ε_α δ_{αβ} + f″ ε_α ε_β z̄^α z^β.
template <class T>
Mat<T> potential_metric_real(const PotentialFamily& family, const AmbientSpace& space, const Vec<T>& x) {
  const int n = space.n;
  T w = square_norm(space, x);
  T fp = family.derivative(w, 1);
  T fpp = family.derivative(w, 2);
  Mat<T> re(n, n), im(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      // z̄^a z^b = (x_a − i y_a)(x_b + i y_b)
      const T& xa = x[2 * a];
      const T& ya = x[2 * a + 1];
      const T& xb = x[2 * b];
      const T& yb = x[2 * b + 1];
      T e = space.eps(a) * space.eps(b) * fpp;
      re(a, b) = e * (xa * xb + ya * yb);
      im(a, b) = e * (xa * yb - ya * xb);
      if (a == b) re(a, b) += space.eps(a) * fp;
    }
  return hermitian_to_real(re, im);
}

/// g_{αβ̄} = ∂_α∂_β̄ f(w) by the closed form. Throws InadmissiblePotential
/// unless admissibility holds at w = square_norm(Z).
HermitianMatrix potential_metric(const PotentialFamily& family, const AmbientSpace& space, const CPoint& z);

/// Same components obtained by differentiating the scalar f∘square_norm
/// with nested duals (∂_α∂_β̄ = ¼(∂_x − i∂_y)(∂_x + i∂_y)). Oracle only.
HermitianMatrix potential_metric_by_differentiation(const PotentialFamily& family, const AmbientSpace& space,
                                                    const CPoint& z);

/// H_{αβ̄} from a J₀-invariant real metric (inverse of hermitian_to_real_metric).
HermitianMatrix real_to_hermitian(const Eigen::MatrixXd& g);

// ---------------------------------------------------------------------------
// radial frames

enum class FrameMetric { Ambient, Potential };

struct RadialFrame {
  RVector point;
  double r = 0.0;
  RVector xi;         // unit in the tagged metric
  RVector j_xi;       // J₀ξ
  RVector eta;        // metric(ξ, ·) as a covector
  RVector eta_tilde;  // metric(Jξ, ·)
  FrameMetric tag = FrameMetric::Ambient;
};

/// Radial unit field at Z. Ambient tag: ξ′ = Z/r in h′ (or g′). Potential
/// tag: the same direction normalised in g = ∂∂̄f. Throws DomainError at
/// the origin or off the time-like domain.
RadialFrame radial_frame(const AmbientSpace& space, const CPoint& z, FrameMetric tag,
                         const PotentialFamily* family = nullptr);

// ---------------------------------------------------------------------------
// conformal form

struct ConformalFactors {
  double u = 0.0;
  double v = 0.0;
};

/// e^{−2u} = 2f′ and e^{−2v} + 1 = r²f″/f′ on the Lorentz space. Throws
/// ConformalDomainError when r²f″/f′ ≤ 1.
ConformalFactors conformal_factors(const PotentialFamily& family, double r);

/// g = e^{−2u}(h′ + (e^{−2v} + 1)(η′⊗η′ + η̃′⊗η̃′)) with u, v functions of r.
template <class T>
Mat<T> conformal_metric_real(const AmbientSpace& space, const UnivariateFn& u, const UnivariateFn& v,
                             const Vec<T>& x) {
  const int m = 2 * space.n;
  T r = sqrt(-square_norm(space, x));
  T eu = exp(-2.0 * u(r));
  T ev = exp(-2.0 * v(r)) + 1.0;
  Vec<T> eta(m), eta_t(m);
  for (int a = 0; a < space.n; ++a) {
    // η′ = h′(Z/r, ·), η̃′ = h′(J₀Z/r, ·)
    eta[2 * a] = space.eps(a) * x[2 * a] / r;
    eta[2 * a + 1] = space.eps(a) * x[2 * a + 1] / r;
    eta_t[2 * a] = -space.eps(a) * x[2 * a + 1] / r;
    eta_t[2 * a + 1] = space.eps(a) * x[2 * a] / r;
  }
  Mat<T> g(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      T s = ev * (eta[i] * eta[j] + eta_t[i] * eta_t[j]);
      if (i == j) s += space.eps(i / 2);
      g(i, j) = eu * s;
    }
  return g;
}

HermitianMatrix metric_from_conformal_pair(const AmbientSpace& space, const UnivariateFn& u,
                                           const UnivariateFn& v, const CPoint& z);

/// (u(r), v(r)) of a potential family as differentiable functions.
std::pair<UnivariateFn, UnivariateFn> conformal_profiles(const PotentialFamily& family);

// ---------------------------------------------------------------------------
// sampling

struct SampleSpec {
  int count = 10;
  std::uint64_t seed = 42;
  double rmin = 1.1;
  double rmax = 3.0;
};

/// Random points with r ∈ [rmin, rmax] uniform. Lorentz: random phase on
/// the time-like axis, Gaussian D-components, then z^n rescaled so that
/// h′(Z,Z) = −r². Points where the family is inadmissible are rejected.
std::vector<CPoint> sample_points(const AmbientSpace& space, const SampleSpec& spec,
                                  const PotentialFamily* family = nullptr);

}  // namespace qck
