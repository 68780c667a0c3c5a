// Bernoulli measures on the shift, equilibrium weights for diagonal
// systems, cylinder masses, and escape rates through the hole.
#pragma once

#include <vector>

#include "survivordim/potential.hpp"
#include "survivordim/symbolic.hpp"

namespace survivordim {

// Product measure from a probability vector on the alphabet.
class BernoulliMeasure {
public:
  explicit BernoulliMeasure(std::vector<double> weights);
  // Accepts weights summing to 1 within tol and rescales them exactly.
  static BernoulliMeasure from_unnormalized(std::vector<double> weights, double tol = 1e-9);

  int alphabet_size() const { return static_cast<int>(weights_.size()); }
  const std::vector<double>& weights() const { return weights_; }
  double weight(int symbol) const { return weights_[static_cast<size_t>(symbol - 1)]; }

  bool operator==(const BernoulliMeasure&) const = default;

private:
  std::vector<double> weights_;
};

// Mass of the cylinder [w]: the product of symbol weights.
double cylinder_mass(const BernoulliMeasure& m, const Word& w);
double log_cylinder_mass(const BernoulliMeasure& m, const Word& w);

// The dimension-maximizing Bernoulli measure of a diagonal system whose
// diagonals share one size order: weights phi^{s0}(A_i) at the pressure
// root s0. Other diagonal systems have one such measure per maximizing
// axis order; see measure_for_order.
BernoulliMeasure equilibrium_measure(const AffineIFS& ifs, double root_tol = 1e-12);

struct OrderMeasure {
  BernoulliMeasure measure;
  bool maximal;             // the order attains the pressure maximum at s0
  double pressure_at_root;  // ordered pressure at s0 (0 when maximal)
};

// Bernoulli measure with weights phi_order^{s0}(A_i) at the global
// pressure root s0. For non-maximizing orders the weights are returned
// normalized and flagged maximal=false.
OrderMeasure measure_for_order(const AffineIFS& ifs, const Permutation& order,
                               double root_tol = 1e-12);

// Exponential decay rate of the measure of points avoiding the hole
// cylinder: -log of the Perron root of the substochastic transfer matrix.
double escape_rate(const BernoulliMeasure& m, const Word& hole, double spectral_tol = 1e-13);

struct GapIdentity {
  double pressure_gap;  // -P_{order,q}(s0), from the potential weights
  double escape;        // escape rate of the order measure, from the measure weights
};

// The two sides of the pressure-gap = escape-rate identity, computed
// through independent code paths; they agree to roughly the root residual.
GapIdentity pressure_gap_identity(const AffineIFS& ifs, const Permutation& order, const Word& hole,
                                  double root_tol = 1e-12, double spectral_tol = 1e-13);

}  // namespace survivordim
