#pragma once

#include <cmath>
#include <type_traits>

namespace qck {

/// Forward-mode dual number a + b·ε with ε² = 0.
///
/// Nesting Dual<Dual<...>> gives exact mixed partials: each nesting level
/// carries its own infinitesimal, so Dual<Dual<double>> seeded along two
/// directions yields a second mixed derivative in its `d.d` slot.
template <class T>
struct Dual {
  T v{};
  T d{};

  constexpr Dual() = default;
  constexpr Dual(double x) : v(x), d(0.0) {}  // NOLINT: implicit from constants
  constexpr Dual(T value, T deriv) : v(value), d(deriv) {}

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) { *this = *this * o; return *this; }
  Dual& operator/=(const Dual& o) { *this = *this / o; return *this; }

  friend Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
  friend Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
  friend Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
  friend Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
  friend Dual operator/(const Dual& a, const Dual& b) {
    T inv = T(1.0) / b.v;
    return {a.v * inv, (a.d - a.v * inv * b.d) * inv};
  }

  friend Dual operator+(const Dual& a, double b) { return {a.v + b, a.d}; }
  friend Dual operator+(double a, const Dual& b) { return {a + b.v, b.d}; }
  friend Dual operator-(const Dual& a, double b) { return {a.v - b, a.d}; }
  friend Dual operator-(double a, const Dual& b) { return {a - b.v, -b.d}; }
  friend Dual operator*(const Dual& a, double b) { return {a.v * b, a.d * b}; }
  friend Dual operator*(double a, const Dual& b) { return {a * b.v, a * b.d}; }
  friend Dual operator/(const Dual& a, double b) { return {a.v / b, a.d / b}; }
  friend Dual operator/(double a, const Dual& b) { return Dual(a) / b; }
};

using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;
using D4 = Dual<D3>;

template <class T>
struct is_dual : std::false_type {};
template <class T>
struct is_dual<Dual<T>> : std::true_type {};

/// Innermost real value of a (possibly nested) dual.
inline double value_of(double x) { return x; }
template <class T>
double value_of(const Dual<T>& x) {
  return value_of(x.v);
}

// Elementary functions. Each applies the chain rule one level and recurses
// through the value type, so the same overloads serve every nesting depth.

using std::abs;
using std::atan;
using std::cos;
using std::exp;
using std::log;
using std::sin;
using std::sqrt;

template <class T>
Dual<T> sqrt(const Dual<T>& x) {
  T s = sqrt(x.v);
  return {s, x.d / (2.0 * s)};
}

template <class T>
Dual<T> exp(const Dual<T>& x) {
  T e = exp(x.v);
  return {e, x.d * e};
}

template <class T>
Dual<T> log(const Dual<T>& x) {
  return {log(x.v), x.d / x.v};
}

template <class T>
Dual<T> sin(const Dual<T>& x) {
  return {sin(x.v), x.d * cos(x.v)};
}

template <class T>
Dual<T> cos(const Dual<T>& x) {
  return {cos(x.v), -(x.d * sin(x.v))};
}

template <class T>
Dual<T> atan(const Dual<T>& x) {
  return {atan(x.v), x.d / (1.0 + x.v * x.v)};
}

template <class T>
Dual<T> abs(const Dual<T>& x) {
  return value_of(x) < 0.0 ? -x : x;
}

/// Integer power by repeated multiplication (exact for duals).
template <class T>
T ipow(const T& x, int k) {
  if (k < 0) return T(1.0) / ipow(x, -k);
  T r(1.0);
  for (int i = 0; i < k; ++i) r = r * x;
  return r;
}

/// Seed a scalar at nesting depth `level` (0 = outermost infinitesimal).
/// Used by differentiate() to place one direction per nesting level.
template <class T>
T make_seeded(double value, unsigned seed_mask);

template <>
inline double make_seeded<double>(double value, unsigned) {
  return value;
}

template <class T>
  requires is_dual<T>::value
T make_seeded(double value, unsigned seed_mask) {
  using Inner = decltype(T{}.v);
  Inner v = make_seeded<Inner>(value, seed_mask >> 1);
  Inner d = (seed_mask & 1u) ? make_seeded<Inner>(1.0, 0u) : Inner(0.0);
  return T(v, d);
}

/// Coefficient of ε₁ε₂…ε_k (all levels) in a depth-k nested dual.
inline double top_derivative(double x) { return x; }
template <class T>
double top_derivative(const Dual<T>& x) {
  return top_derivative(x.d);
}

}  // namespace qck
