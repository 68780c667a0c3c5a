// Pressure curves of affine IFS, their forbidden-word reductions, and the
// dimension roots they define.
#pragma once

#include <functional>
#include <vector>

#include "survivordim/avoidance.hpp"
#include "survivordim/potential.hpp"
#include "survivordim/symbolic.hpp"

namespace survivordim {

enum class PressureKind { ExactMultiplicative, GeneralEstimate };

// Exact pressure of the order-fixed multiplicative potential:
// log sum_i phi_order^s(A_i). The defining limit collapses at length one.
double ordered_pressure(const AffineIFS& ifs, const Permutation& order, double s);

// Growth rate of the order-fixed potential over words avoiding the hole;
// always <= ordered_pressure.
double reduced_ordered_pressure(const AffineIFS& ifs, const Permutation& order, const Word& hole,
                                double s, double spectral_tol = 1e-13);

// Finite-length upper bound (1/n) log sum over all words of length n of
// phi^s(A_word); decreasing along n, 2n, 4n toward the true pressure.
// BudgetError when k^n exceeds 2^24 terms.
double pressure_estimate(const AffineIFS& ifs, double s, int word_length);
double reduced_pressure_estimate(const AffineIFS& ifs, const Word& hole, double s,
               int word_length);

struct PressureValue {
  double value;
  PressureKind kind;
  int word_length;  // 1 for exact values
};

// Pressure at s: exact (max over axis orders) for diagonal systems,
// finite-length estimate otherwise.
PressureValue pressure(const AffineIFS& ifs, double s, int estimate_word_length = 8);

// s -> P(s) evaluator with a fixed strategy, for curve sampling and roots.
class PressureFunction {
public:
  static PressureFunction exact(AffineIFS ifs);
  static PressureFunction exact_reduced(AffineIFS ifs, Word hole, double spectral_tol = 1e-13);
  static PressureFunction estimate(AffineIFS ifs, int word_length);
  static PressureFunction estimate_reduced(AffineIFS ifs, Word hole, int word_length);

  double operator()(double s) const;
  PressureKind kind() const { return kind_; }
  int word_length() const { return word_length_; }

private:
  explicit PressureFunction(AffineIFS ifs) : ifs_(std::move(ifs)) {}
  AffineIFS ifs_;
  std::vector<Word> hole_;  // empty or one pattern
  PressureKind kind_ = PressureKind::ExactMultiplicative;
  int word_length_ = 1;
  double spectral_tol_ = 1e-13;
  std::vector<Permutation> orders_;
};

struct RootResult {
  double value;
  bool capped;  // f stayed positive through hi; value pinned there
  int iterations;
};

// Bisection for a continuous strictly decreasing f on [lo, hi] with
// f(lo) >= 0; returns hi with capped=true when f(hi) > 0. After the
// bracket closes to tol, a few secant steps inside it shrink the residual
// |f| toward machine precision.
RootResult find_root(const std::function<double(double)>& f, double lo, double hi,
                     double tol = 1e-12);

// Axis orders inducing distinct potentials (orders whose |diagonal|
// tuples agree on every map are merged).
std::vector<Permutation> unique_orders(const AffineIFS& ifs);
// Among unique orders, those attaining the pressure maximum at s0.
std::vector<Permutation> maximizing_orders(const AffineIFS& ifs, double s0, double tol = 1e-9);

struct OrderRoot {
  Permutation order;
  double root;
  bool capped;
};

struct DimensionResult {
  double dimension;  // min(d, root)
  double root;       // max over axis orders of the per-order root
  bool capped;
  bool weak_contraction;  // some operator norm >= 1/2
  std::vector<OrderRoot> table;
};

// Zero of the full pressure (diagonal systems; exact path).
DimensionResult affinity_dimension(const AffineIFS& ifs, double root_tol = 1e-12);

// Zero of the reduced pressure for the hole cylinder: the survivor set
// dimension min(d, max over orders of the per-order root).
DimensionResult survivor_dimension(const AffineIFS& ifs, const Word& hole, bool allow_weak = false,
                                   double root_tol = 1e-12, double spectral_tol = 1e-13);

}  // namespace survivordim
