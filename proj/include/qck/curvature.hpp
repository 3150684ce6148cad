#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qck/fields.hpp"
#include "qck/matrix.hpp"
#include "qck/tensor_core.hpp"

namespace qck {

template <class T>
struct MatrixSig {
  using type = Mat<T>(const Vec<T>&);
};
template <class T>
struct VectorSig {
  using type = Vec<T>(const Vec<T>&);
};

/// Symmetric metric components in real coordinates, evaluable at dual
/// depth 0..2 (enough for exact Christoffel symbols and their derivatives).
class MetricField {
 public:
  MetricField() = default;
  template <class F>
  MetricField(int dim, F f, std::string signature = "riemannian")
      : dim_(dim), signature_(std::move(signature)), fns_(std::move(f)) {}

  int dim() const { return dim_; }
  const std::string& signature() const { return signature_; }

  template <class T>
  Mat<T> operator()(const Vec<T>& x) const {
    return fns_.template at<T>()(x);
  }
  Eigen::MatrixXd at(const RVector& p) const;

 private:
  int dim_ = 0;
  std::string signature_;
  MultiLevel<MatrixSig, double, D1, D2> fns_;
};

/// Vector field (depth 0..1), e.g. a radial unit field ξ.
class VectorField {
 public:
  VectorField() = default;
  template <class F>
  VectorField(int dim, F f) : dim_(dim), fns_(std::move(f)) {}

  int dim() const { return dim_; }
  template <class T>
  Vec<T> operator()(const Vec<T>& x) const {
    return fns_.template at<T>()(x);
  }
  RVector at(const RVector& p) const;

 private:
  int dim_ = 0;
  MultiLevel<VectorSig, double, D1> fns_;
};

/// (1,1)-tensor field (depth 0..1); used for non-constant complex structures.
class EndomorphismField {
 public:
  EndomorphismField() = default;
  template <class F>
  EndomorphismField(int dim, F f) : dim_(dim), fns_(std::move(f)) {}

  int dim() const { return dim_; }
  template <class T>
  Mat<T> operator()(const Vec<T>& x) const {
    return fns_.template at<T>()(x);
  }
  Eigen::MatrixXd at(const RVector& p) const;

 private:
  int dim_ = 0;
  MultiLevel<MatrixSig, double, D1> fns_;
};

/// Constant J₀ as an endomorphism field.
EndomorphismField constant_j0(int n);

// ---------------------------------------------------------------------------

struct Christoffel {
  int dim = 0;
  std::vector<double> data;  // Γ^k_ij at ((k·dim + i)·dim + j)
  double symmetry_defect = 0.0;
  double compatibility_defect = 0.0;  // max |∇_i g_jk| / max(1, max |∂g|)

  double operator()(int k, int i, int j) const {
    return data[static_cast<std::size_t>((k * dim + i) * dim + j)];
  }
};

/// Levi-Civita symbols at p. Throws DegenerateMetric if |det g| ≤ 1e-12
/// and NumericalBreakdown if ∇g = 0 fails beyond 1e-8.
Christoffel christoffel(const MetricField& metric, const RVector& p);

enum class DerivativePath { Exact, FiniteDifference };

struct CurvatureBundle {
  Eigen::MatrixXd g;
  Tensor4 riemann;  // R(e_i, e_j, e_k, e_l) = g(R(e_i, e_j)e_k, e_l)
  Eigen::MatrixXd ricci;
  double scalar = 0.0;
  std::optional<double> sigma;  // ρ(ξ,ξ)/g(ξ,ξ)
  std::optional<double> kappa;  // R(ξ,Jξ,Jξ,ξ)/g(ξ,ξ)²
  double symmetry_defect = 0.0;
  double bianchi_defect = 0.0;
};

/// Curvature at p with R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z.
/// The exact path differentiates Γ with duals; the finite-difference path
/// differentiates Γ numerically (step `fd_step`) and serves as an oracle.
/// If `xi` is given, σ and κ are filled using J₀.
/// Throws DegenerateMetric; NumericalBreakdown if the symmetry defect > 1e-6.
CurvatureBundle riemann(const MetricField& metric, const RVector& p, const RVector* xi = nullptr,
                        DerivativePath path = DerivativePath::Exact, double fd_step = 1e-3);

/// R(X, JX, JX, X)/g(X,X)². J defaults to J₀. Throws DomainError if g(X,X) ≤ 0.
double holomorphic_sectional_curvature(const CurvatureBundle& b, const RVector& x);
double holomorphic_sectional_curvature(const CurvatureBundle& b, const RVector& x, const Eigen::MatrixXd& j);

/// max |dΩ| over coordinate triples, Ω(X,Y) = g(JX,Y), relative to
/// max(1, max |∂Ω|).
double kahler_defect(const MetricField& metric, const RVector& p);
double kahler_defect(const MetricField& metric, const EndomorphismField& j, const RVector& p);

/// max |R(JX,JY,Z,U) − R(X,Y,Z,U)| over coordinate quadruples, relative.
double j_invariance_defect(const Tensor4& r, const Eigen::MatrixXd& j);

/// A(k, i) = (∇_{e_i} V)^k at p.
Eigen::MatrixXd covariant_jacobian(const MetricField& metric, const VectorField& v, const RVector& p);
Eigen::MatrixXd covariant_jacobian(const Christoffel& gamma, const VectorField& v, const RVector& p);

/// ∂_i of a matrix field at p by one dual level, for i = 0..dim−1.
std::vector<Eigen::MatrixXd> metric_gradient(const MetricField& metric, const RVector& p);

}  // namespace qck
