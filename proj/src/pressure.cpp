#include "survivordim/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>

#include "survivordim/errors.hpp"

namespace survivordim {

namespace {

double log_sum_exp(const std::vector<double>& values) {
  const double top = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(top)) return top;
  double acc = 0.0;
  for (double v : values) acc += std::exp(v - top);
  return top + std::log(acc);
}

// Streaming log-sum-exp accumulator for large enumerations.
class LogSumAccumulator {
public:
  void add(double log_term) {
    if (log_term == -std::numeric_limits<double>::infinity()) return;
    if (log_term <= top_) {
      acc_ += std::exp(log_term - top_);
    } else {
      acc_ = acc_ * std::exp(top_ - log_term) + 1.0;
      top_ = log_term;
    }
  }
  double log_total() const {
    if (acc_ == 0.0) return -std::numeric_limits<double>::infinity();
    return top_ + std::log(acc_);
  }

private:
  double top_ = -std::numeric_limits<double>::infinity();
  double acc_ = 0.0;
};

void check_exponent(const AffineIFS& ifs, double s) {
  if (s < 0.0 || s > static_cast<double>(ifs.dim())) {
    throw RangeError("exponent " + std::to_string(s) + " outside [0, " +
                     std::to_string(ifs.dim()) + "]");
  }
}

void check_budget(const AffineIFS& ifs, int word_length) {
  if (word_length < 1) throw RangeError("word length must be positive");
  double terms = 1.0;
  for (int i = 0; i < word_length; ++i) terms *= ifs.map_count();
  if (terms > static_cast<double>(1 << 24)) {
    throw BudgetError("enumerating " + std::to_string(ifs.map_count()) + "^" +
                      std::to_string(word_length) +
                      " words exceeds the 2^24 budget; use a shorter word length");
  }
}

// The singular value function of a long product is evaluated through
// exterior powers: phi^s(P) = ||C_m(P)||^(1-frac) ||C_{m+1}(P)||^frac for
// m = floor(s). Compounds are multiplicative, and only largest singular
// values of the running compounds are needed, so nothing is lost to the
// vanishing small singular values of deep products.
struct CompoundTrack {
  std::vector<Matrix> base;  // per-map compound
  Matrix product;
  double log_scale = 0.0;
};

CompoundTrack make_track(const AffineIFS& ifs, int order) {
  CompoundTrack track{{}, Matrix::identity(1), 0.0};
  for (int i = 0; i < ifs.map_count(); ++i) track.base.push_back(compound_matrix(ifs.map(i), order));
  track.product = Matrix::identity(track.base.front().dim());
  return track;
}

double log_top_product(const CompoundTrack& track) {
  return std::log(operator_norm(track.product)) + track.log_scale;
}

// Depth-first enumeration of all words of the given length; the automaton
// state restricts the sum when a hole is present (state -1 = unrestricted).
// tracks[0] carries the floor(s) compound when floor(s) >= 1; the last
// track carries the ceil(s) compound when s is fractional.
void enumerate_products(const AffineIFS& ifs, const AvoidanceAutomaton* aut, int state,
                        const std::vector<CompoundTrack>& tracks, int remaining, bool has_whole,
                        double frac, LogSumAccumulator& sum) {
  if (remaining == 0) {
    const double lo = has_whole ? log_top_product(tracks.front()) : 0.0;
    const double hi = frac > 0.0 ? log_top_product(tracks.back()) : lo;
    sum.add((1.0 - frac) * lo + frac * hi);
    return;
  }
  for (int i = 0; i < ifs.map_count(); ++i) {
    int next_state = state;
    if (aut != nullptr) {
      next_state = aut->transition(state, i + 1);
      if (next_state == AvoidanceAutomaton::kReject) continue;
    }
    std::vector<CompoundTrack> next;
    next.reserve(tracks.size());
    for (const CompoundTrack& track : tracks) {
      CompoundTrack stepped{track.base, track.product.times(track.base[static_cast<size_t>(i)]),
                            track.log_scale};
      double top = 0.0;
      for (int r = 0; r < stepped.product.dim(); ++r)
        for (int c = 0; c < stepped.product.dim(); ++c)
          top = std::max(top, std::abs(stepped.product(r, c)));
      if (top > 0.0 && (top > 1e100 || top < 1e-100)) {
        for (int r = 0; r < stepped.product.dim(); ++r)
          for (int c = 0; c < stepped.product.dim(); ++c) stepped.product(r, c) /= top;
        stepped.log_scale += std::log(top);
      }
      next.push_back(std::move(stepped));
    }
    enumerate_products(ifs, aut, next_state, next, remaining - 1, has_whole, frac, sum);
  }
}

double enumerate_pressure_sum(const AffineIFS& ifs, const AvoidanceAutomaton* aut, double s,
                              int word_length) {
  const int whole = static_cast<int>(std::floor(s));
  const double frac = s - whole;
  std::vector<CompoundTrack> tracks;
  if (whole >= 1) tracks.push_back(make_track(ifs, whole));
  if (frac > 0.0) tracks.push_back(make_track(ifs, whole + 1));
  LogSumAccumulator sum;
  enumerate_products(ifs, aut, aut != nullptr ? 0 : -1, tracks, word_length, whole >= 1, frac,
                     sum);
  return sum.log_total();
}

}  // namespace

double ordered_pressure(const AffineIFS& ifs, const Permutation& order, double s) {
  check_exponent(ifs, s);
  return log_sum_exp(log_potential_vector(ifs, order, s));
}

double reduced_ordered_pressure(const AffineIFS& ifs, const Permutation& order, const Word& hole,
                                double s, double spectral_tol) {
  check_exponent(ifs, s);
  if (hole.alphabet_size() != ifs.map_count()) {
    throw DomainError("hole alphabet size " + std::to_string(hole.alphabet_size()) +
                      " does not match the IFS map count " + std::to_string(ifs.map_count()));
  }
  const AvoidanceAutomaton aut(hole);
  return reduced_growth_rate_log_weights(aut, log_potential_vector(ifs, order, s), spectral_tol);
}

double pressure_estimate(const AffineIFS& ifs, double s, int word_length) {
  check_exponent(ifs, s);
  check_budget(ifs, word_length);
  return enumerate_pressure_sum(ifs, nullptr, s, word_length) / word_length;
}

double reduced_pressure_estimate(const AffineIFS& ifs, const Word& hole, double s,
                                 int word_length) {
  check_exponent(ifs, s);
  check_budget(ifs, word_length);
  if (hole.alphabet_size() != ifs.map_count()) {
    throw DomainError("hole alphabet size does not match the IFS map count");
  }
  const AvoidanceAutomaton aut(hole);
  return enumerate_pressure_sum(ifs, &aut, s, word_length) / word_length;
}

PressureValue pressure(const AffineIFS& ifs, double s, int estimate_word_length) {
  if (ifs.diagonal()) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Permutation& order : unique_orders(ifs)) {
      best = std::max(best, ordered_pressure(ifs, order, s));
    }
    return {best, PressureKind::ExactMultiplicative, 1};
  }
  return {pressure_estimate(ifs, s, estimate_word_length), PressureKind::GeneralEstimate,
          estimate_word_length};
}

PressureFunction PressureFunction::exact(AffineIFS ifs) {
  if (!ifs.diagonal()) throw DomainError("exact pressure needs a diagonal IFS");
  PressureFunction f(std::move(ifs));
  f.orders_ = unique_orders(f.ifs_);
  f.kind_ = PressureKind::ExactMultiplicative;
  f.word_length_ = 1;
  return f;
}

PressureFunction PressureFunction::exact_reduced(AffineIFS ifs, Word hole, double spectral_tol) {
  if (!ifs.diagonal()) throw DomainError("exact reduced pressure needs a diagonal IFS");
  PressureFunction f(std::move(ifs));
  f.orders_ = unique_orders(f.ifs_);
  f.hole_.push_back(std::move(hole));
  f.kind_ = PressureKind::ExactMultiplicative;
  f.word_length_ = 1;
  f.spectral_tol_ = spectral_tol;
  return f;
}

PressureFunction PressureFunction::estimate(AffineIFS ifs, int word_length) {
  check_budget(ifs, word_length);
  PressureFunction f(std::move(ifs));
  f.kind_ = PressureKind::GeneralEstimate;
  f.word_length_ = word_length;
  return f;
}

PressureFunction PressureFunction::estimate_reduced(AffineIFS ifs, Word hole, int word_length) {
  check_budget(ifs, word_length);
  PressureFunction f(std::move(ifs));
  f.hole_.push_back(std::move(hole));
  f.kind_ = PressureKind::GeneralEstimate;
  f.word_length_ = word_length;
  return f;
}

double PressureFunction::operator()(double s) const {
  if (kind_ == PressureKind::ExactMultiplicative) {
    double best = -std::numeric_limits<double>::infinity();
    for (const Permutation& order : orders_) {
      best = std::max(best, hole_.empty()
                                ? ordered_pressure(ifs_, order, s)
                                : reduced_ordered_pressure(ifs_, order, hole_.front(), s,
                                                           spectral_tol_));
    }
    return best;
  }
  return hole_.empty() ? pressure_estimate(ifs_, s, word_length_)
                       : reduced_pressure_estimate(ifs_, hole_.front(), s, word_length_);
}

RootResult find_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(hi > lo)) throw DomainError("root bracket is empty");
  if (!(tol > 0.0)) throw DomainError("root tolerance must be positive");
  double fa = f(lo);
  if (fa < 0.0) {
    throw DomainError("function already negative at the left endpoint (degenerate system)");
  }
  double fb = f(hi);
  int iterations = 2;
  if (fb > 0.0) return {hi, true, iterations};

  double a = lo, b = hi;
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b) break;
    const double fm = f(mid);
    ++iterations;
    if (fm >= 0.0) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
      fb = fm;
    }
  }

  // Secant polish inside the final bracket to drive |f| toward zero.
  double best_x = std::abs(fa) <= std::abs(fb) ? a : b;
  double best_f = std::min(std::abs(fa), std::abs(fb));
  for (int step = 0; step < 3 && fa > fb; ++step) {
    double x = a + (b - a) * fa / (fa - fb);
    x = std::clamp(x, a, b);
    const double fx = f(x);
    ++iterations;
    if (std::abs(fx) < best_f) {
      best_f = std::abs(fx);
      best_x = x;
    }
    if (fx == 0.0) break;
    if (fx > 0.0) {
      a = x;
      fa = fx;
    } else {
      b = x;
      fb = fx;
    }
  }
  return {best_x, false, iterations};
}

std::vector<Permutation> unique_orders(const AffineIFS& ifs) {
  if (!ifs.diagonal()) throw DomainError("axis orders need a diagonal IFS");
  std::vector<Permutation> out;
  std::map<std::vector<double>, bool> seen;
  for (const Permutation& order : all_permutations(ifs.dim())) {
    std::vector<double> key;
    key.reserve(static_cast<size_t>(ifs.map_count()) * ifs.dim());
    for (int i = 0; i < ifs.map_count(); ++i) {
      for (int pos = 0; pos < ifs.dim(); ++pos) {
        const int axis = order.axis(pos) - 1;
        key.push_back(std::abs(ifs.map(i)(axis, axis)));
      }
    }
    if (!seen.emplace(std::move(key), true).second) continue;
    out.push_back(order);
  }
  return out;
}

std::vector<Permutation> maximizing_orders(const AffineIFS& ifs, double s0, double tol) {
  std::vector<Permutation> out;
  double best = -std::numeric_limits<double>::infinity();
  const std::vector<Permutation> orders = unique_orders(ifs);
  for (const Permutation& order : orders) best = std::max(best, ordered_pressure(ifs, order, s0));
  for (const Permutation& order : orders) {
    if (ordered_pressure(ifs, order, s0) >= best - tol) out.push_back(order);
  }
  return out;
}

namespace {

DimensionResult dimension_from_roots(const AffineIFS& ifs,
                                     const std::function<double(const Permutation&, double)>& eval,
                                     double root_tol) {
  const double d = static_cast<double>(ifs.dim());
  DimensionResult result;
  result.weak_contraction = ifs.max_operator_norm() >= 0.5;
  result.root = -std::numeric_limits<double>::infinity();
  result.capped = false;
  for (const Permutation& order : unique_orders(ifs)) {
    const RootResult r =
        find_root([&](double s) { return eval(order, s); }, 0.0, d, root_tol);
    result.table.push_back({order, r.value, r.capped});
    if (r.value > result.root || (r.value == result.root && r.capped)) {
      result.root = r.value;
      result.capped = r.capped;
    }
  }
  result.dimension = std::min(result.root, d);
  return result;
}

}  // namespace

DimensionResult affinity_dimension(const AffineIFS& ifs, double root_tol) {
  return dimension_from_roots(
      ifs, [&](const Permutation& order, double s) { return ordered_pressure(ifs, order, s); },
      root_tol);
}

DimensionResult survivor_dimension(const AffineIFS& ifs, const Word& hole, bool allow_weak,
                                   double root_tol, double spectral_tol) {
  if (ifs.max_operator_norm() >= 0.5 && !allow_weak) {
    throw ValidationError(
        "survivor dimension requires operator norms below 1/2 (pass allow_weak to override)");
  }
  if (hole.is_empty()) throw DomainError("hole word must be nonempty");
  const AvoidanceAutomaton aut(hole);
  return dimension_from_roots(
      ifs,
      [&](const Permutation& order, double s) {
        return reduced_growth_rate_log_weights(aut, log_potential_vector(ifs, order, s),
                                               spectral_tol);
      },
      root_tol);
}

}  // namespace survivordim
