#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "qck/errors.hpp"
#include "qck/matrix.hpp"

namespace qck {

using cplx = std::complex<double>;

/// A point of ℂⁿ, n ≥ 2.
struct CPoint {
  std::vector<cplx> z;

  int n() const { return static_cast<int>(z.size()); }
};

/// Real tangent vector in interleaved coordinates (x¹, y¹, …, xⁿ, yⁿ),
/// z^α = x^α + i y^α.
using RVector = Eigen::VectorXd;

RVector complex_to_real(const std::vector<cplx>& v);
std::vector<cplx> real_to_complex(const RVector& v);

/// Multiplication by i: (x, y) ↦ (−y, x) on each coordinate pair.
RVector apply_J0(const RVector& v);

/// Matrix of J₀ in interleaved coordinates (acting on column vectors).
Eigen::MatrixXd j0_matrix(int n);

/// n×n Hermitian component matrix H_{αβ̄}. Conjugate symmetry is enforced on
/// construction from the upper triangle.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(int n) : h_(Eigen::MatrixXcd::Zero(n, n)) {}
  /// Takes the upper triangle (and real diagonal) of `m`.
  static HermitianMatrix from_upper(const Eigen::MatrixXcd& m);

  int n() const { return static_cast<int>(h_.rows()); }
  cplx operator()(int a, int b) const { return h_(a, b); }
  const Eigen::MatrixXcd& matrix() const { return h_; }

 private:
  Eigen::MatrixXcd h_;
};

/// G(X, Y) = 2·Re Σ H_{αβ̄} X^α conj(Y^β) as a 2n×2n real matrix, from the
/// real and imaginary parts of H. Templated so metric formulas can be
/// differentiated through it.
template <class T>
Mat<T> hermitian_to_real(const Mat<T>& re, const Mat<T>& im) {
  const int n = re.rows();
  Mat<T> g(2 * n, 2 * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      g(2 * a, 2 * b) = 2.0 * re(a, b);
      g(2 * a + 1, 2 * b + 1) = 2.0 * re(a, b);
      g(2 * a, 2 * b + 1) = 2.0 * im(a, b);
      g(2 * a + 1, 2 * b) = -2.0 * im(a, b);
    }
  return g;
}

Eigen::MatrixXd hermitian_to_real_metric(const HermitianMatrix& h);

/// Which algebraic symmetries a Tensor4 claims.
enum class Symmetry { None, CurvatureLike };

/// Dense (0,4) tensor over a d-dimensional real index space. Components are
/// T(e_i, e_j, e_k, e_l) for the coordinate basis.
template <class S>
class Tensor4Of {
 public:
  Tensor4Of() = default;
  explicit Tensor4Of(int dim, Symmetry sym = Symmetry::None)
      : dim_(dim), sym_(sym), c_(static_cast<std::size_t>(dim * dim * dim * dim), S(0.0)) {}

  int dim() const { return dim_; }
  Symmetry symmetry() const { return sym_; }
  void set_symmetry(Symmetry s) { sym_ = s; }

  S& operator()(int i, int j, int k, int l) { return c_[index(i, j, k, l)]; }
  const S& operator()(int i, int j, int k, int l) const { return c_[index(i, j, k, l)]; }

  const std::vector<S>& data() const { return c_; }
  std::vector<S>& data() { return c_; }

  double max_abs() const {
    double m = 0.0;
    for (const S& v : c_) m = std::max(m, std::abs(v));
    return m;
  }
  double norm() const {
    double s = 0.0;
    for (const S& v : c_) s += std::norm(v);
    return std::sqrt(s);
  }

  Tensor4Of& operator+=(const Tensor4Of& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
    return *this;
  }
  Tensor4Of& operator-=(const Tensor4Of& o) {
    for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
    return *this;
  }
  friend Tensor4Of operator+(Tensor4Of a, const Tensor4Of& b) { return a += b; }
  friend Tensor4Of operator-(Tensor4Of a, const Tensor4Of& b) { return a -= b; }
  friend Tensor4Of operator*(S s, Tensor4Of a) {
    for (S& v : a.c_) v *= s;
    return a;
  }

  /// T(X, Y, Z, U) for vectors given in the coordinate basis.
  template <class V>
  S contract(const V& x, const V& y, const V& z, const V& u) const {
    S s(0.0);
    for (int i = 0; i < dim_; ++i) {
      if (x[i] == 0.0) continue;
      for (int j = 0; j < dim_; ++j) {
        if (y[j] == 0.0) continue;
        for (int k = 0; k < dim_; ++k) {
          if (z[k] == 0.0) continue;
          for (int l = 0; l < dim_; ++l) s += S(x[i] * y[j] * z[k] * u[l]) * (*this)(i, j, k, l);
        }
      }
    }
    return s;
  }

  /// Components in a new basis whose vectors are the columns of `m`
  /// (expressed in the old basis).
  template <class M>
  Tensor4Of transformed(const M& m) const {
    const int d = static_cast<int>(m.cols());
    Tensor4Of out(d, sym_);
    // one index at a time keeps the cost at O(d^5)
    std::vector<S> a(c_), b(c_.size());
    const int d0 = dim_;
    // a is d0^4 initially; after each step one axis has size d.
    std::vector<int> sz = {d0, d0, d0, d0};
    for (int axis = 0; axis < 4; ++axis) {
      std::vector<int> nsz = sz;
      nsz[axis] = d;
      b.assign(static_cast<std::size_t>(nsz[0] * nsz[1] * nsz[2] * nsz[3]), S(0.0));
      for (int i = 0; i < nsz[0]; ++i)
        for (int j = 0; j < nsz[1]; ++j)
          for (int k = 0; k < nsz[2]; ++k)
            for (int l = 0; l < nsz[3]; ++l) {
              int out_idx[4] = {i, j, k, l};
              S s(0.0);
              for (int r = 0; r < sz[axis]; ++r) {
                int in_idx[4] = {i, j, k, l};
                in_idx[axis] = r;
                std::size_t flat = static_cast<std::size_t>(
                    ((in_idx[0] * sz[1] + in_idx[1]) * sz[2] + in_idx[2]) * sz[3] + in_idx[3]);
                s += S(m(r, out_idx[axis])) * a[flat];
              }
              b[static_cast<std::size_t>(((i * nsz[1] + j) * nsz[2] + k) * nsz[3] + l)] = s;
            }
      a.swap(b);
      sz = nsz;
    }
    out.c_ = std::move(a);
    return out;
  }

 private:
  std::size_t index(int i, int j, int k, int l) const {
    return static_cast<std::size_t>(((i * dim_ + j) * dim_ + k) * dim_ + l);
  }

  int dim_ = 0;
  Symmetry sym_ = Symmetry::None;
  std::vector<S> c_;
};

using Tensor4 = Tensor4Of<double>;
using CTensor4 = Tensor4Of<cplx>;

/// Largest violation of R_ijkl = −R_jikl = −R_ijlk = R_klij, relative to
/// max|component| (absolute when the tensor is zero).
double curvature_symmetry_defect(const Tensor4& t);

/// Largest first-Bianchi sum R_ijkl + R_jkil + R_kijl, relative like above.
double bianchi_defect(const Tensor4& t);

/// Throws NumericalBreakdown unless the claimed symmetries hold to
/// 1e-12·max|component|.
void check_claimed_symmetries(const Tensor4& t);

struct FitResult {
  std::vector<double> coefficients;
  double residual = 0.0;
};

/// Linear least squares of `target` over `basis` on flattened components.
/// residual = ‖target − Σ cᵢ basisᵢ‖_F / max(1, ‖target‖_F). Throws
/// DegenerateBasis if the basis Gram matrix is rank deficient.
FitResult tensor4_fit(const Tensor4& target, const std::vector<Tensor4>& basis);

}  // namespace qck
