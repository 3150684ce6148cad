#pragma once

#include <functional>
#include <tuple>
#include <utility>
#include <vector>

#include "qck/dual.hpp"
#include "qck/matrix.hpp"

namespace qck {

/// Holds one std::function per scalar type in `Ts...`, all built from the
/// same generic callable. This is how a single templated formula becomes a
/// runtime value that can still be evaluated under dual numbers.
template <template <class> class Sig, class... Ts>
class MultiLevel {
 public:
  MultiLevel() = default;

  template <class F>
  explicit MultiLevel(F f) : fns_(std::function<typename Sig<Ts>::type>(f)...) {}

  template <class T>
  const std::function<typename Sig<T>::type>& at() const {
    return std::get<std::function<typename Sig<T>::type>>(fns_);
  }

  bool empty() const { return !std::get<0>(fns_); }

 private:
  std::tuple<std::function<typename Sig<Ts>::type>...> fns_;
};

template <class T>
struct ScalarSig {
  using type = T(const Vec<T>&);
};
template <class T>
struct UnarySig {
  using type = T(const T&);
};

/// Smooth scalar field on ℝ^m, evaluable at dual-number depth 0..4 so that
/// mixed partials up to order 4 are exact.
class ScalarField {
 public:
  ScalarField() = default;

  template <class F>
  ScalarField(int dim, F f) : dim_(dim), fns_(std::move(f)) {}

  int dim() const { return dim_; }

  template <class T>
  T operator()(const Vec<T>& x) const {
    return fns_.template at<T>()(x);
  }

 private:
  int dim_ = 0;
  MultiLevel<ScalarSig, double, D1, D2, D3, D4> fns_;
};

/// Smooth function of one real variable at dual depth 0..4.
class UnivariateFn {
 public:
  UnivariateFn() = default;

  template <class F>
  explicit UnivariateFn(F f) : fns_(std::move(f)) {}

  template <class T>
  T operator()(const T& x) const {
    return fns_.template at<T>()(x);
  }

  bool empty() const { return fns_.empty(); }

 private:
  MultiLevel<UnarySig, double, D1, D2, D3, D4> fns_;
};

/// k-th derivative of a univariate function by nested duals (k ≤ 4).
double derivative(const UnivariateFn& f, double x, int order);

/// Mixed partial ∂^|idx| f / ∂x_{idx[0]} … ∂x_{idx[k-1]} at p, exact via
/// nested dual numbers. idx.size() ≤ 4. Throws NumericalBreakdown on a
/// non-finite result.
double differentiate(const ScalarField& field, const std::vector<double>& p, const std::vector<int>& idx);

/// Finite-difference oracle for the same quantity: 4th-order central
/// stencil per index, Richardson-extrapolated over h and h/2, with
/// h = max(1e-2·scale, 1e-3). Kept for cross-checking only.
double differentiate_fd(const ScalarField& field, const std::vector<double>& p, const std::vector<int>& idx,
                        double scale = 1.0);

}  // namespace qck
