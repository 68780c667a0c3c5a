// Maximizing frequencies on the simplex, the deficit-rate constant, and
// the scans verifying the asymptotic dimension-deficit and escape-rate
// ratio limits as the hole shrinks.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "survivordim/measures.hpp"
#include "survivordim/potential.hpp"
#include "survivordim/symbolic.hpp"

namespace survivordim {

// Closed-form maximizer over the probability simplex of
// g^s(alpha) = entropy(alpha) + <log-potential vector, alpha>:
// the Gibbs frequency alpha_i proportional to exp of the log potential.
std::vector<double> maximizing_frequency(const AffineIFS& ifs, const Permutation& order, double s);

struct DeficitConstant {
  double value;              // -1 / <axis slopes, maximizing frequency>
  double finite_difference;  // cross-check from the left derivative of the pressure
  bool one_sided;            // pressure root sits at an integer; left slopes used
};

// Normalization constant of the dimension-deficit limit for one axis
// order; InternalError when the two computation routes disagree.
DeficitConstant deficit_rate_constant(const AffineIFS& ifs, const Permutation& order,
                                      double root_tol = 1e-12);

struct LeftDerivative {
  double value;   // quotient at the smallest step
  double spread;  // max - min over the step ladder
  bool nonsmooth;
};

// One-sided difference quotients (P(s) - P(s-h))/h along a step ladder;
// a wide spread flags a kink (expected where the potential crosses an
// integer exponent).
LeftDerivative pressure_left_derivative(const std::function<double(double)>& pressure_fn, double s,
                                        const std::vector<double>& steps = {1e-3, 1e-4, 1e-5});

struct EscapeRatioRow {
  int q;
  double mass;  // measure of the hole cylinder
  double rate;  // escape rate
  double ratio;
};

struct EscapeRatioScan {
  bool periodic;
  int period;  // 0 when not periodic
  double predicted_limit;
  std::vector<EscapeRatioRow> rows;
};

// Escape rate over hole mass along deepening hole prefixes, with the
// predicted limit: 1 for a non-periodic address, 1 - mass of the period
// cylinder for a periodic one.
EscapeRatioScan escape_ratio_scan(const BernoulliMeasure& m, const HoleSpec& spec, int q_min,
                                  int q_max, double spectral_tol = 1e-13);

struct DeficitOrderCell {
  std::string order;
  double mass;      // order-measure mass of the hole cylinder
  double constant;  // deficit-rate constant of the order
  double root;      // per-order survivor root
  double ratio;     // deficit over this order's denominator
};

struct DeficitRow {
  int q;
  std::string hole;
  double survivor_root;  // max over axis orders
  double deficit;        // pressure root minus survivor root
  double denominator;    // min over maximizing orders of constant * (periodic factor) * mass
  double ratio;
  bool precision_warning;
  std::vector<DeficitOrderCell> per_order;
};

struct DeficitReport {
  double pressure_root;
  bool periodic;
  int period;
  double predicted_limit;  // 1 when the scan converges
  std::vector<std::string> maximizing;
  bool stopped_early;  // deficit fell below the trustworthy band
  std::vector<DeficitRow> rows;
};

// Dimension-deficit scan along deepening hole prefixes. Rows are flagged
// once the deficit approaches the root tolerance and the scan stops when
// it falls below 100x the tolerance.
DeficitReport deficit_scan(const AffineIFS& ifs, const HoleSpec& spec, int q_min, int q_max,
                           bool allow_weak = false, double root_tol = 1e-12,
                           double spectral_tol = 1e-13);

struct DerivativeRelationRow {
  int q;
  double pressure_gap;   // -reduced ordered pressure at the order's root
  double survivor_root;  // per-order survivor root
  double ratio;          // gap / (root gap); converges to -left derivative
  bool precision_warning;
};

struct DerivativeRelationScan {
  double pressure_root;  // root of this order's pressure
  LeftDerivative slope;  // left derivative of the ordered pressure there
  bool stopped_early;
  std::vector<DerivativeRelationRow> rows;
};

// Convexity relation: -P_q(s0) / (s0 - t_q) along deepening prefixes
// converges to the negated left derivative of the pressure at its root.
DerivativeRelationScan derivative_relation_scan(const AffineIFS& ifs, const Permutation& order,
                                                const HoleSpec& spec, int q_min, int q_max,
                                                double root_tol = 1e-12,
                                                double spectral_tol = 1e-13);

}  // namespace survivordim
