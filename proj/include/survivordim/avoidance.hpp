// The forbidden-factor automaton over the full shift and its weighted
// transfer matrix: exact survivor sums and their growth rates.
#pragma once

#include <vector>

#include "survivordim/linalg.hpp"
#include "survivordim/symbolic.hpp"

namespace survivordim {

// Deterministic prefix machine recognizing the words with no occurrence of
// a fixed pattern. State = length of the longest suffix of the input that
// is a proper prefix of the pattern (0..q-1); completing the pattern
// rejects, so the n-step non-rejecting paths from state 0 are exactly the
// surviving words of length n.
class AvoidanceAutomaton {
public:
  static constexpr int kReject = -1;

  explicit AvoidanceAutomaton(Word pattern);

  int state_count() const { return pattern_.size(); }  // q
  int alphabet_size() const { return pattern_.alphabet_size(); }
  const Word& pattern() const { return pattern_; }

  // Next state for a 1-based symbol, or kReject.
  int transition(int state, int symbol) const {
    return delta_[static_cast<size_t>(state) * alphabet_size() + symbol - 1];
  }

  // True iff w contains no occurrence of the pattern.
  bool accepts(const Word& w) const;

private:
  Word pattern_;
  std::vector<int> delta_;
};

// Dense transfer matrix: entries[u][v] = sum of weights of symbols moving
// state u to state v. Materialized only for moderate state counts.
struct TransferMatrix {
  Matrix entries;
  std::vector<double> weights;
};
TransferMatrix build_transfer_matrix(const AvoidanceAutomaton& aut,
                                     const std::vector<double>& weights);

// Sum over surviving words of length n of the product of per-symbol
// weights, computed by n transfer applications with log rescaling.
double weighted_survivor_sum(const AvoidanceAutomaton& aut, const std::vector<double>& weights,
                             int n);
double log_weighted_survivor_sum(const AvoidanceAutomaton& aut,
                                 const std::vector<double>& weights, int n);

// log Perron root of the transfer matrix: the exponential growth rate of
// the weighted survivor sums. Dense up to 256 states, matrix-free beyond.
double reduced_growth_rate(const AvoidanceAutomaton& aut, const std::vector<double>& weights,
                           double spectral_tol = 1e-13);
double reduced_growth_rate_log_weights(const AvoidanceAutomaton& aut,
                                       const std::vector<double>& log_weights,
                                       double spectral_tol = 1e-13);

}  // namespace survivordim
