// Singular value potentials and their axis-ordered diagonal variants.
#pragma once

#include <string>
#include <vector>

#include "survivordim/linalg.hpp"

namespace survivordim {

// An ordering (e_1,...,e_d) of the axes {1,...,d}; 1-based.
class Permutation {
public:
  explicit Permutation(std::vector<int> order);
  static Permutation identity(int d);

  int dim() const { return static_cast<int>(order_.size()); }
  // Axis placed at position i (0-based position, 1-based axis).
  int axis(int i) const { return order_[static_cast<size_t>(i)]; }
  const std::vector<int>& order() const { return order_; }
  std::string str() const;  // "2,1"

  bool operator==(const Permutation&) const = default;

private:
  std::vector<int> order_;
};

// All d! axis orders in lexicographic order.
std::vector<Permutation> all_permutations(int d);

// Linear parts of an affine IFS, with cached structure flags.
class AffineIFS {
public:
  static AffineIFS create(std::vector<Matrix> maps,
                          std::vector<std::vector<double>> translations = {});

  int map_count() const { return static_cast<int>(maps_.size()); }  // k
  int dim() const { return maps_.front().dim(); }                   // d
  const Matrix& map(int i) const { return maps_[static_cast<size_t>(i)]; }
  const std::vector<Matrix>& maps() const { return maps_; }
  const std::vector<std::vector<double>>& translations() const { return translations_; }

  bool diagonal() const { return diagonal_; }
  // True when one axis order sorts every map's |diagonal| non-increasingly.
  bool same_order() const { return same_order_; }
  double max_operator_norm() const { return max_norm_; }

private:
  AffineIFS() = default;
  std::vector<Matrix> maps_;
  std::vector<std::vector<double>> translations_;
  bool diagonal_ = false;
  bool same_order_ = false;
  double max_norm_ = 0.0;
};

// log phi^s(A): partial product of descending singular values with a
// fractional top term, interpolating between integer dimensions.
double log_singular_value_function(const Matrix& a, double s);
double singular_value_function(const Matrix& a, double s);

// log phi_order^s(A) for diagonal A: |diagonal| entries taken in the given
// axis order instead of sorted. Multiplicative over matrix products.
double log_diagonal_potential(const Matrix& a, const Permutation& order, double s);
double diagonal_potential(const Matrix& a, const Permutation& order, double s);

// Per-map log potentials (log phi_order^s(A_1), ..., log phi_order^s(A_k)).
std::vector<double> log_potential_vector(const AffineIFS& ifs, const Permutation& order, double s);

}  // namespace survivordim
