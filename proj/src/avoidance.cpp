#include "survivordim/avoidance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "survivordim/errors.hpp"

namespace survivordim {

AvoidanceAutomaton::AvoidanceAutomaton(Word pattern) : pattern_(std::move(pattern)) {
  if (pattern_.is_empty()) throw DomainError("avoidance pattern must be nonempty");
  const int q = pattern_.size();
  const int k = pattern_.alphabet_size();

  // Failure function of the pattern.
  std::vector<int> fail(static_cast<size_t>(q), 0);
  for (int i = 1; i < q; ++i) {
    int j = fail[static_cast<size_t>(i - 1)];
    while (j > 0 && pattern_.symbol(i) != pattern_.symbol(j)) j = fail[static_cast<size_t>(j - 1)];
    if (pattern_.symbol(i) == pattern_.symbol(j)) ++j;
    fail[static_cast<size_t>(i)] = j;
  }

  delta_.assign(static_cast<size_t>(q) * k, kReject);
  for (int u = 0; u < q; ++u) {
    for (int a = 1; a <= k; ++a) {
      int next;
      if (a == pattern_.symbol(u)) {
        next = u + 1;  // == q completes the pattern
      } else if (u == 0) {
        next = 0;
      } else {
        // Fallback state fail[u-1] <= u-1 < q-1 cannot complete the pattern,
        // so this lookup never yields kReject.
        next = delta_[static_cast<size_t>(fail[static_cast<size_t>(u - 1)]) * k + a - 1];
      }
      delta_[static_cast<size_t>(u) * k + a - 1] = (next == q) ? kReject : next;
    }
  }
}

bool AvoidanceAutomaton::accepts(const Word& w) const {
  if (w.alphabet_size() != alphabet_size()) throw DomainError("alphabet size mismatch");
  int state = 0;
  for (int i = 0; i < w.size(); ++i) {
    state = transition(state, w.symbol(i));
    if (state == kReject) return false;
  }
  return true;
}

namespace {

void check_weights(const AvoidanceAutomaton& aut, const std::vector<double>& weights) {
  if (weights.size() != static_cast<size_t>(aut.alphabet_size())) {
    throw DomainError("expected " + std::to_string(aut.alphabet_size()) + " weights, got " +
                      std::to_string(weights.size()));
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("weights must be positive and finite");
  }
}

}  // namespace

TransferMatrix build_transfer_matrix(const AvoidanceAutomaton& aut,
                                     const std::vector<double>& weights) {
  check_weights(aut, weights);
  const int q = aut.state_count();
  Matrix m(q);
  for (int u = 0; u < q; ++u) {
    for (int a = 1; a <= aut.alphabet_size(); ++a) {
      const int v = aut.transition(u, a);
      if (v != AvoidanceAutomaton::kReject) m(u, v) += weights[static_cast<size_t>(a - 1)];
    }
  }
  return TransferMatrix{std::move(m), weights};
}

namespace {

struct ScaledSum {
  double total;      // sum of the final state vector
  double log_scale;  // accumulated rescaling, 0 unless magnitudes forced it
};

// Transfer applications from state 0, rescaled only when the magnitudes
// drift out of safe floating-point range; small exact cases (integer
// counts, moderate weights) pass through untouched.
ScaledSum survivor_sum_core(const AvoidanceAutomaton& aut, const std::vector<double>& weights,
                            int n) {
  const int q = aut.state_count();
  const int k = aut.alphabet_size();
  std::vector<double> x(static_cast<size_t>(q), 0.0), y(static_cast<size_t>(q));
  x[0] = 1.0;
  double log_scale = 0.0;
  for (int step = 0; step < n; ++step) {
    std::fill(y.begin(), y.end(), 0.0);
    for (int u = 0; u < q; ++u) {
      const double xu = x[static_cast<size_t>(u)];
      if (xu == 0.0) continue;
      for (int a = 1; a <= k; ++a) {
        const int v = aut.transition(u, a);
        if (v != AvoidanceAutomaton::kReject) {
          y[static_cast<size_t>(v)] += weights[static_cast<size_t>(a - 1)] * xu;
        }
      }
    }
    const double top = *std::max_element(y.begin(), y.end());
    if (top == 0.0) return {0.0, 0.0};  // no survivors
    if (top > 1e150 || top < 1e-150) {
      for (double& v : y) v /= top;
      log_scale += std::log(top);
    }
    x.swap(y);
  }
  double total = 0.0;
  for (double v : x) total += v;
  return {total, log_scale};
}

}  // namespace

double log_weighted_survivor_sum(const AvoidanceAutomaton& aut, const std::vector<double>& weights,
                                 int n) {
  check_weights(aut, weights);
  if (n < 0) throw RangeError("word length must be nonnegative");
  const ScaledSum sum = survivor_sum_core(aut, weights, n);
  if (sum.total == 0.0) return -std::numeric_limits<double>::infinity();
  return sum.log_scale + std::log(sum.total);
}

double weighted_survivor_sum(const AvoidanceAutomaton& aut, const std::vector<double>& weights,
                             int n) {
  check_weights(aut, weights);
  if (n < 0) throw RangeError("word length must be nonnegative");
  const ScaledSum sum = survivor_sum_core(aut, weights, n);
  return sum.log_scale == 0.0 ? sum.total : sum.total * std::exp(sum.log_scale);
}

double reduced_growth_rate_log_weights(const AvoidanceAutomaton& aut,
                                       const std::vector<double>& log_weights,
                                       double spectral_tol) {
  if (log_weights.size() != static_cast<size_t>(aut.alphabet_size())) {
    throw DomainError("expected " + std::to_string(aut.alphabet_size()) + " weights, got " +
                      std::to_string(log_weights.size()));
  }
  const double top = *std::max_element(log_weights.begin(), log_weights.end());
  std::vector<double> scaled(log_weights.size());
  for (size_t i = 0; i < log_weights.size(); ++i) scaled[i] = std::exp(log_weights[i] - top);

  const int q = aut.state_count();
  double rho;
  if (q <= 256) {
    rho = spectral_radius(build_transfer_matrix(aut, scaled).entries, spectral_tol);
  } else {
    std::vector<WeightedEdge> edges;
    edges.reserve(static_cast<size_t>(q) * aut.alphabet_size());
    for (int u = 0; u < q; ++u) {
      for (int a = 1; a <= aut.alphabet_size(); ++a) {
        const int v = aut.transition(u, a);
        if (v != AvoidanceAutomaton::kReject) {
          edges.push_back({u, v, scaled[static_cast<size_t>(a - 1)]});
        }
      }
    }
    rho = spectral_radius(q, edges, spectral_tol);
  }
  return std::log(rho) + top;
}

double reduced_growth_rate(const AvoidanceAutomaton& aut, const std::vector<double>& weights,
                           double spectral_tol) {
  check_weights(aut, weights);
  std::vector<double> log_w(weights.size());
  for (size_t i = 0; i < weights.size(); ++i) log_w[i] = std::log(weights[i]);
  return reduced_growth_rate_log_weights(aut, log_w, spectral_tol);
}

}  // namespace survivordim
