#include "wfa/linalg.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace wfa::linalg {

void fix_column_signs(Matrix& cols) {
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < cols.rows(); ++i) {
      const double a = std::abs(cols(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (cols.rows() > 0 && cols(arg, j) < 0.0) cols.col(j) = -cols.col(j);
  }
}

Svd svd(const Matrix& m, bool full) {
  const auto rows = m.rows();
  const auto cols = m.cols();
  const auto k = std::min(rows, cols);
  Svd out;
  if (rows == 0 || cols == 0) {
    out.u = full ? Matrix::Identity(rows, rows) : Matrix(rows, 0);
    out.v = full ? Matrix::Identity(cols, cols) : Matrix(cols, 0);
    out.s = Vector(0);
    return out;
  }
  const unsigned opts = full ? (Eigen::ComputeFullU | Eigen::ComputeFullV) : (Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::JacobiSVD<Matrix> dec(m, opts);
  out.u = dec.matrixU();
  out.v = dec.matrixV();
  out.s = dec.singularValues();
  for (Eigen::Index j = 0; j < out.u.cols(); ++j) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double a = std::abs(out.u(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (out.u(arg, j) < 0.0) {
      out.u.col(j) = -out.u.col(j);
      if (j < out.v.cols()) out.v.col(j) = -out.v.col(j);
    }
  }
  // Right vectors past min(rows, cols) have no left partner; fix them on their own.
  if (full && out.v.cols() > k) {
    Matrix tail = out.v.rightCols(out.v.cols() - k);
    fix_column_signs(tail);
    out.v.rightCols(out.v.cols() - k) = tail;
  }
  return out;
}

Eigen::Index numerical_rank(const Vector& s, double tol, double ref_scale) {
  if (s.size() == 0) return 0;
  const double smax = s.maxCoeff();
  const double thresh = tol * std::max(smax, ref_scale);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > thresh) ++r;
  return r;
}

Eigen::Index numerical_rank(const Matrix& m, double tol, double ref_scale) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Matrix> dec(m);
  return numerical_rank(dec.singularValues(), tol, ref_scale);
}

Matrix kernel_basis(const Matrix& m, double tol, double ref_scale) {
  const auto n = m.cols();
  if (n == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(n, n);
  const Svd d = svd(m, true);
  const auto r = numerical_rank(d.s, tol, ref_scale);
  Matrix k = d.v.rightCols(n - r);
  fix_column_signs(k);
  return k;
}

Matrix range_basis(const Matrix& m, double tol, double ref_scale) {
  if (m.rows() == 0 || m.cols() == 0) return Matrix(m.rows(), 0);
  const Svd d = svd(m, false);
  const auto r = numerical_rank(d.s, tol, ref_scale);
  return d.u.leftCols(r);
}

Matrix orthogonal_complement(const Matrix& basis, Eigen::Index n) {
  if (basis.cols() == 0) return Matrix::Identity(n, n);
  if (basis.cols() >= n) return Matrix(n, 0);
  // Complement = kernel of basis^T; its singular values are all 1, so an
  // absolute threshold is appropriate.
  const Svd d = svd(basis.transpose(), true);
  Matrix k = d.v.rightCols(n - basis.cols());
  fix_column_signs(k);
  return k;
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  Eigen::JacobiSVD<Matrix> dec(m);
  return dec.singularValues()(0);
}

double spectral_radius(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() == 1) return std::abs(m(0, 0));
  if (m.rows() == 2) {
    const double tr = m(0, 0) + m(1, 1);
    const double det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double disc = tr * tr / 4.0 - det;
    if (disc >= 0.0) {
      const double r = std::sqrt(disc);
      return std::max(std::abs(tr / 2.0 + r), std::abs(tr / 2.0 - r));
    }
    return std::sqrt(std::max(det, 0.0));
  }
  Eigen::EigenSolver<Matrix> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double norm_l1(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

double norm_inf(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

}  // namespace wfa::linalg
