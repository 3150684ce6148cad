#include "qck/tensor_core.hpp"

#include <algorithm>
#include <cmath>

#include "qck/fields.hpp"

namespace qck {

RVector complex_to_real(const std::vector<cplx>& v) {
  RVector r(2 * static_cast<Eigen::Index>(v.size()));
  for (std::size_t a = 0; a < v.size(); ++a) {
    r(2 * a) = v[a].real();
    r(2 * a + 1) = v[a].imag();
  }
  return r;
}

std::vector<cplx> real_to_complex(const RVector& v) {
  std::vector<cplx> z(static_cast<std::size_t>(v.size() / 2));
  for (std::size_t a = 0; a < z.size(); ++a) z[a] = cplx(v(2 * a), v(2 * a + 1));
  return z;
}

RVector apply_J0(const RVector& v) {
  RVector r(v.size());
  for (Eigen::Index a = 0; a + 1 < v.size(); a += 2) {
    r(a) = -v(a + 1);
    r(a + 1) = v(a);
  }
  return r;
}

Eigen::MatrixXd j0_matrix(int n) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  for (int a = 0; a < n; ++a) {
    j(2 * a + 1, 2 * a) = 1.0;
    j(2 * a, 2 * a + 1) = -1.0;
  }
  return j;
}

HermitianMatrix HermitianMatrix::from_upper(const Eigen::MatrixXcd& m) {
  HermitianMatrix h(static_cast<int>(m.rows()));
  for (Eigen::Index a = 0; a < m.rows(); ++a) {
    h.h_(a, a) = cplx(m(a, a).real(), 0.0);
    for (Eigen::Index b = a + 1; b < m.cols(); ++b) {
      h.h_(a, b) = m(a, b);
      h.h_(b, a) = std::conj(m(a, b));
    }
  }
  return h;
}

Eigen::MatrixXd hermitian_to_real_metric(const HermitianMatrix& h) {
  const int n = h.n();
  Mat<double> re(n, n), im(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      re(a, b) = h(a, b).real();
      im(a, b) = h(a, b).imag();
    }
  return values(hermitian_to_real(re, im));
}

namespace {

double relative_scale(const Tensor4& t) {
  double m = t.max_abs();
  return m > 0.0 ? m : 1.0;
}

}  // namespace

double curvature_symmetry_defect(const Tensor4& t) {
  const int d = t.dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double v = t(i, j, k, l);
          worst = std::max({worst, std::abs(v + t(j, i, k, l)), std::abs(v + t(i, j, l, k)),
                            std::abs(v - t(k, l, i, j))});
        }
  return worst / relative_scale(t);
}

double bianchi_defect(const Tensor4& t) {
  const int d = t.dim();
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l)
          worst = std::max(worst, std::abs(t(i, j, k, l) + t(j, k, i, l) + t(k, i, j, l)));
  return worst / relative_scale(t);
}

void check_claimed_symmetries(const Tensor4& t) {
  if (t.symmetry() != Symmetry::CurvatureLike) return;
  double defect = curvature_symmetry_defect(t);
  if (defect > 1e-12)
    throw NumericalBreakdown("tensor claims curvature symmetries but defect is " + std::to_string(defect));
}

FitResult tensor4_fit(const Tensor4& target, const std::vector<Tensor4>& basis) {
  if (basis.empty()) throw DegenerateBasis("empty basis");
  const std::size_t m = basis.size();
  const Eigen::Index rows = static_cast<Eigen::Index>(target.data().size());
  Eigen::MatrixXd a(rows, static_cast<Eigen::Index>(m));
  for (std::size_t c = 0; c < m; ++c) {
    if (basis[c].dim() != target.dim()) throw DegenerateBasis("basis tensor dimension mismatch");
    a.col(static_cast<Eigen::Index>(c)) = Eigen::Map<const Eigen::VectorXd>(basis[c].data().data(), rows);
  }
  Eigen::Map<const Eigen::VectorXd> b(target.data().data(), rows);

  // Column scaling keeps the rank test meaningful when basis norms differ.
  Eigen::VectorXd scale = a.colwise().norm().transpose();
  for (Eigen::Index c = 0; c < scale.size(); ++c) {
    if (scale(c) == 0.0) throw DegenerateBasis("basis tensor " + std::to_string(c) + " is zero");
    a.col(c) /= scale(c);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  qr.setThreshold(1e-10);
  if (qr.rank() < static_cast<Eigen::Index>(m))
    throw DegenerateBasis("basis is rank deficient (rank " + std::to_string(qr.rank()) + " of " +
                          std::to_string(m) + ")");
  Eigen::VectorXd x = qr.solve(b);
  Eigen::VectorXd r = b - a * x;

  FitResult out;
  out.coefficients.resize(m);
  for (std::size_t c = 0; c < m; ++c) out.coefficients[c] = x(static_cast<Eigen::Index>(c)) / scale(static_cast<Eigen::Index>(c));
  out.residual = r.norm() / std::max(1.0, b.norm());
  return out;
}

// ---------------------------------------------------------------------------
// differentiation

double derivative(const UnivariateFn& f, double x, int order) {
  switch (order) {
    case 0: return f(x);
    case 1: return top_derivative(f(make_seeded<D1>(x, 0b1)));
    case 2: return top_derivative(f(make_seeded<D2>(x, 0b11)));
    case 3: return top_derivative(f(make_seeded<D3>(x, 0b111)));
    case 4: return top_derivative(f(make_seeded<D4>(x, 0b1111)));
    default: throw DomainError("derivative order must be 0..4");
  }
}

namespace {

template <class T>
double seeded_eval(const ScalarField& field, const std::vector<double>& p, const std::vector<int>& idx) {
  Vec<T> x(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    unsigned mask = 0;
    for (std::size_t level = 0; level < idx.size(); ++level)
      if (idx[level] == static_cast<int>(j)) mask |= 1u << level;
    x[j] = make_seeded<T>(p[j], mask);
  }
  T r = field(x);
  // a NaN value with finite derivative parts means the point is outside the field's domain
  if (!std::isfinite(value_of(r))) throw NumericalBreakdown("field is not finite at the evaluation point");
  return top_derivative(r);
}

double fd_recursive(const ScalarField& field, std::vector<double>& p, const std::vector<int>& idx, std::size_t level,
                    double h) {
  if (level == idx.size()) return field(Vec<double>(p));
  const int j = idx[level];
  const double x0 = p[static_cast<std::size_t>(j)];
  static constexpr double kOffsets[4] = {-2.0, -1.0, 1.0, 2.0};
  static constexpr double kWeights[4] = {1.0, -8.0, 8.0, -1.0};
  double s = 0.0;
  for (int q = 0; q < 4; ++q) {
    p[static_cast<std::size_t>(j)] = x0 + kOffsets[q] * h;
    s += kWeights[q] * fd_recursive(field, p, idx, level + 1, h);
  }
  p[static_cast<std::size_t>(j)] = x0;
  return s / (12.0 * h);
}

}  // namespace

double differentiate(const ScalarField& field, const std::vector<double>& p, const std::vector<int>& idx) {
  double r = 0.0;
  switch (idx.size()) {
    case 0: r = field(Vec<double>(p)); break;
    case 1: r = seeded_eval<D1>(field, p, idx); break;
    case 2: r = seeded_eval<D2>(field, p, idx); break;
    case 3: r = seeded_eval<D3>(field, p, idx); break;
    case 4: r = seeded_eval<D4>(field, p, idx); break;
    default: throw DomainError("multi-index order must be at most 4");
  }
  if (!std::isfinite(r)) throw NumericalBreakdown("non-finite derivative");
  return r;
}

double differentiate_fd(const ScalarField& field, const std::vector<double>& p, const std::vector<int>& idx,
                        double scale) {
  const double h = std::max(1e-2 * scale, 1e-3);
  std::vector<double> q = p;
  double coarse = fd_recursive(field, q, idx, 0, h);
  double fine = fd_recursive(field, q, idx, 0, 0.5 * h);
  double r = (16.0 * fine - coarse) / 15.0;
  if (!std::isfinite(r)) throw NumericalBreakdown("non-finite finite-difference derivative");
  return r;
}

}  // namespace qck
