#pragma once

#include "wfa/core.hpp"

namespace wfa::linalg {

/// Thin or full SVD with singular values in descending order and a fixed
/// sign: the largest-magnitude entry of every left singular vector is
/// positive (the matching right vector is flipped with it).
struct Svd {
  Matrix u;
  Vector s;
  Matrix v;
};

Svd svd(const Matrix& m, bool full = false);

/// Flips each column so that its largest-magnitude entry is positive.
void fix_column_signs(Matrix& cols);

/// Number of singular values above tol * max(sigma_max, ref_scale).
/// `ref_scale` keeps roundoff-sized matrices (e.g. a projected operator that
/// should vanish) from being judged full rank by a purely relative test.
Eigen::Index numerical_rank(const Vector& singular_values, double tol, double ref_scale = 0.0);
Eigen::Index numerical_rank(const Matrix& m, double tol, double ref_scale = 0.0);

/// Orthonormal basis (columns) of the numerical kernel of m.
Matrix kernel_basis(const Matrix& m, double tol, double ref_scale = 0.0);

/// Orthonormal basis (columns) of the numerical column space of m.
Matrix range_basis(const Matrix& m, double tol, double ref_scale = 0.0);

/// Orthonormal basis of the orthogonal complement of span(basis) in R^n.
/// `basis` must already have orthonormal columns.
Matrix orthogonal_complement(const Matrix& basis, Eigen::Index n);

double spectral_norm(const Matrix& m);
double spectral_radius(const Matrix& m);

/// Max column absolute sum.
double norm_l1(const Matrix& m);
/// Max row absolute sum.
double norm_inf(const Matrix& m);

}  // namespace wfa::linalg
