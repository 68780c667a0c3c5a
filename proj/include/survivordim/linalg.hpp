// Small dense matrices: singular values and Perron roots of nonnegative matrices.
#pragma once

#include <vector>

namespace survivordim {

// Dense square matrix, row-major storage.
class Matrix {
public:
  explicit Matrix(int dim);  // zero-filled
  Matrix(int dim, std::vector<double> entries);
  static Matrix identity(int dim);
  static Matrix diagonal(const std::vector<double>& entries);

  int dim() const { return dim_; }
  double& operator()(int i, int j) { return entries_[static_cast<size_t>(i) * dim_ + j]; }
  double operator()(int i, int j) const { return entries_[static_cast<size_t>(i) * dim_ + j]; }

  bool is_diagonal() const;  // off-diagonal entries exactly zero
  std::vector<double> diagonal_entries() const;
  Matrix times(const Matrix& other) const;
  Matrix transpose() const;
  double max_abs_row_sum() const;

  bool operator==(const Matrix&) const = default;

private:
  int dim_;
  std::vector<double> entries_;
};

// All singular values in descending order.
std::vector<double> singular_values(const Matrix& a);
// Largest singular value (Euclidean operator norm).
double operator_norm(const Matrix& a);

// m-th compound matrix: entries are the m x m minors, indexed by
// lexicographic m-subsets of the rows/columns. Multiplicative over
// products (Cauchy-Binet), with operator norm sigma_1 ... sigma_m; this
// keeps partial singular-value products of long matrix products accurate
// where the plain Gram spectrum of the product loses the small values.
Matrix compound_matrix(const Matrix& a, int m);

// Edge of a weighted digraph; the matrix-free form of a nonnegative matrix.
struct WeightedEdge {
  int from;
  int to;
  double weight;
};

// Perron root (largest eigenvalue modulus) of an entrywise nonnegative
// matrix, to absolute accuracy tol. The matrix is split into strongly
// connected components; each irreducible block is handled by shifted
// power iteration with Collatz-Wielandt bounds, with a certified
// bisection fallback for blocks of dimension <= 64. Non-convergence on a
// larger block raises NumericalError carrying the last bracket.
double spectral_radius(const Matrix& m, double tol = 1e-13);
double spectral_radius(int dim, const std::vector<WeightedEdge>& edges, double tol = 1e-13);

}  // namespace survivordim
