#include "survivordim/measures.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "survivordim/avoidance.hpp"
#include "survivordim/errors.hpp"
#include "survivordim/pressure.hpp"

namespace survivordim {

BernoulliMeasure::BernoulliMeasure(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.size() < 2) throw DomainError("a Bernoulli measure needs at least two weights");
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("weights must be positive and finite");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw DomainError("weights sum to " + std::to_string(sum) + ", not 1");
  }
}

BernoulliMeasure BernoulliMeasure::from_unnormalized(std::vector<double> weights, double tol) {
  double sum = 0.0;
  for (double w : weights) sum += w;
  if (!(sum > 0.0) || std::abs(sum - 1.0) > tol) {
    throw DomainError("weights sum to " + std::to_string(sum) + ", outside 1 +- " +
                      std::to_string(tol));
  }
  for (double& w : weights) w /= sum;
  return BernoulliMeasure(std::move(weights));
}

double log_cylinder_mass(const BernoulliMeasure& m, const Word& w) {
  if (w.alphabet_size() != m.alphabet_size()) throw DomainError("alphabet size mismatch");
  double acc = 0.0;
  for (int i = 0; i < w.size(); ++i) acc += std::log(m.weight(w.symbol(i)));
  return acc;
}

double cylinder_mass(const BernoulliMeasure& m, const Word& w) {
  return std::exp(log_cylinder_mass(m, w));
}

namespace {

double pressure_root_or_throw(const AffineIFS& ifs, double root_tol) {
  const DimensionResult dim = affinity_dimension(ifs, root_tol);
  if (dim.capped) {
    throw DomainError(
        "the pressure has no zero in [0, d]; equilibrium weights are undefined here");
  }
  return dim.root;
}

}  // namespace

BernoulliMeasure equilibrium_measure(const AffineIFS& ifs, double root_tol) {
  if (!ifs.diagonal() || !ifs.same_order()) {
    throw DomainError(
        "equilibrium weights need a diagonal system with a common diagonal order; "
        "use measure_for_order for the per-order measures");
  }
  const double s0 = pressure_root_or_throw(ifs, root_tol);
  std::vector<double> weights(static_cast<size_t>(ifs.map_count()));
  for (int i = 0; i < ifs.map_count(); ++i) {
    weights[static_cast<size_t>(i)] = singular_value_function(ifs.map(i), s0);
  }
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (std::abs(sum - 1.0) > 1e-9) {
    throw InternalError("equilibrium weights sum to " + std::to_string(sum) +
                        "; pressure root is inconsistent");
  }
  return BernoulliMeasure::from_unnormalized(std::move(weights));
}

OrderMeasure measure_for_order(const AffineIFS& ifs, const Permutation& order, double root_tol) {
  const double s0 = pressure_root_or_throw(ifs, root_tol);
  const double at_root = ordered_pressure(ifs, order, s0);
  const bool maximal = std::abs(at_root) <= 1e-10;
  std::vector<double> weights(static_cast<size_t>(ifs.map_count()));
  for (int i = 0; i < ifs.map_count(); ++i) {
    weights[static_cast<size_t>(i)] = diagonal_potential(ifs.map(i), order, s0);
  }
  if (maximal) {
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(sum - 1.0) > 1e-9) {
      throw InternalError("order measure weights sum to " + std::to_string(sum) +
                          "; pressure root is inconsistent");
    }
    return {BernoulliMeasure::from_unnormalized(std::move(weights)), true, at_root};
  }
  // Non-maximizing order: the potential weights are not a probability
  // vector; return their normalization, which is the Gibbs frequency.
  double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w /= sum;
  return {BernoulliMeasure(std::move(weights)), false, at_root};
}

double escape_rate(const BernoulliMeasure& m, const Word& hole, double spectral_tol) {
  if (hole.is_empty()) throw DomainError("hole word must be nonempty");
  const AvoidanceAutomaton aut(hole);
  return -reduced_growth_rate(aut, m.weights(), spectral_tol);
}

GapIdentity pressure_gap_identity(const AffineIFS& ifs, const Permutation& order, const Word& hole,
                                  double root_tol, double spectral_tol) {
  const double s0 = pressure_root_or_throw(ifs, root_tol);
  if (std::abs(ordered_pressure(ifs, order, s0)) > 1e-9) {
    throw DomainError("order " + order.str() + " does not attain the pressure maximum at its root");
  }
  GapIdentity out;
  out.pressure_gap = -reduced_ordered_pressure(ifs, order, hole, s0, spectral_tol);
  out.escape = escape_rate(measure_for_order(ifs, order, root_tol).measure, hole, spectral_tol);
  return out;
}

}  // namespace survivordim
