#include "survivordim/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "survivordim/avoidance.hpp"
#include "survivordim/errors.hpp"
#include "survivordim/pressure.hpp"

namespace survivordim {

std::vector<double> maximizing_frequency(const AffineIFS& ifs, const Permutation& order,
                                         double s) {
  const std::vector<double> a = log_potential_vector(ifs, order, s);
  const double top = *std::max_element(a.begin(), a.end());
  std::vector<double> alpha(a.size());
  double sum = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    alpha[i] = std::exp(a[i] - top);
    sum += alpha[i];
  }
  for (double& v : alpha) v /= sum;
  return alpha;
}

namespace {

// Index of the axis whose slope drives the left derivative of the
// potential at s: ceil(s), snapped down when s sits on an integer.
int left_slope_axis_position(double s) {
  const double nearest = std::round(s);
  if (std::abs(s - nearest) < 1e-9 && nearest >= 1.0) return static_cast<int>(nearest);
  return static_cast<int>(std::ceil(s));
}

double affinity_root(const AffineIFS& ifs, double root_tol) {
  const DimensionResult dim = affinity_dimension(ifs, root_tol);
  if (dim.capped) {
    throw DomainError("the pressure has no zero in [0, d]; the asymptotic scans need one");
  }
  return dim.root;
}

}  // namespace

DeficitConstant deficit_rate_constant(const AffineIFS& ifs, const Permutation& order,
                                      double root_tol) {
  const double s0 = affinity_root(ifs, root_tol);
  if (std::abs(ordered_pressure(ifs, order, s0)) > 1e-9) {
    throw DomainError("order " + order.str() +
                      " does not attain the pressure maximum; its deficit constant is undefined");
  }
  const double nearest = std::round(s0);
  const bool one_sided = std::abs(s0 - nearest) < 1e-9 && nearest >= 1.0;
  const int position = left_slope_axis_position(s0);
  const int axis = order.axis(position - 1);

  const std::vector<double> alpha = maximizing_frequency(ifs, order, s0);
  double inner = 0.0;
  for (int i = 0; i < ifs.map_count(); ++i) {
    inner += alpha[static_cast<size_t>(i)] * std::log(std::abs(ifs.map(i)(axis - 1, axis - 1)));
  }
  DeficitConstant out;
  out.value = -1.0 / inner;
  out.one_sided = one_sided;

  // Independent route: left difference quotient of the ordered pressure.
  const double h = 1e-7;
  const double quotient = (ordered_pressure(ifs, order, s0) -
                           ordered_pressure(ifs, order, s0 - h)) / h;
  out.finite_difference = -1.0 / quotient;
  if (std::abs(out.value - out.finite_difference) > 1e-6) {
    throw InternalError("deficit constant routes disagree: " + std::to_string(out.value) +
                        " vs " + std::to_string(out.finite_difference));
  }
  return out;
}

LeftDerivative pressure_left_derivative(const std::function<double(double)>& pressure_fn, double s,
                                        const std::vector<double>& steps) {
  if (steps.empty()) throw DomainError("step ladder must be nonempty");
  for (double h : steps) {
    if (!(h > 0.0) || !(s - h >= 0.0)) {
      throw RangeError("steps must be positive and keep s - h >= 0");
    }
  }
  const double at_s = pressure_fn(s);
  LeftDerivative out;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (double h : steps) {
    const double quotient = (at_s - pressure_fn(s - h)) / h;
    lo = std::min(lo, quotient);
    hi = std::max(hi, quotient);
    out.value = quotient;  // ladder runs toward the smallest step
  }
  out.spread = hi - lo;
  out.nonsmooth = out.spread > 1e-3;
  return out;
}

EscapeRatioScan escape_ratio_scan(const BernoulliMeasure& m, const HoleSpec& spec, int q_min,
                                  int q_max, double spectral_tol) {
  if (q_min < 1 || q_max < q_min) throw RangeError("bad q range");
  if (q_max > spec.max_prefix_length()) {
    throw RangeError("q_max " + std::to_string(q_max) + " exceeds the stored prefix length " +
                     std::to_string(spec.max_prefix_length()));
  }
  EscapeRatioScan scan;
  scan.periodic = spec.is_periodic();
  scan.period = spec.period().value_or(0);
  scan.predicted_limit =
      scan.periodic ? 1.0 - cylinder_mass(m, spec.prefix(scan.period)) : 1.0;
  for (int q = q_min; q <= q_max; ++q) {
    const Word hole = spec.prefix(q);
    EscapeRatioRow row;
    row.q = q;
    row.mass = cylinder_mass(m, hole);
    row.rate = escape_rate(m, hole, spectral_tol);
    row.ratio = row.rate / row.mass;
    scan.rows.push_back(row);
  }
  return scan;
}

DeficitReport deficit_scan(const AffineIFS& ifs, const HoleSpec& spec, int q_min, int q_max,
                           bool allow_weak, double root_tol, double spectral_tol) {
  if (q_min < 1 || q_max < q_min) throw RangeError("bad q range");
  if (q_max > spec.max_prefix_length()) {
    throw RangeError("q_max exceeds the stored prefix length");
  }
  DeficitReport report;
  report.pressure_root = affinity_root(ifs, root_tol);
  report.periodic = spec.is_periodic();
  report.period = spec.period().value_or(0);
  report.predicted_limit = 1.0;
  report.stopped_early = false;

  struct OrderData {
    Permutation order;
    BernoulliMeasure measure;
    double constant;
    double periodic_factor;
  };
  std::vector<OrderData> orders;
  for (const Permutation& order : maximizing_orders(ifs, report.pressure_root)) {
    const BernoulliMeasure mu = measure_for_order(ifs, order, root_tol).measure;
    const double z = deficit_rate_constant(ifs, order, root_tol).value;
    const double factor =
        report.periodic ? 1.0 - cylinder_mass(mu, spec.prefix(report.period)) : 1.0;
    orders.push_back({order, mu, z, factor});
    report.maximizing.push_back(order.str());
  }

  for (int q = q_min; q <= q_max; ++q) {
    const Word hole = spec.prefix(q);
    const DimensionResult sd =
        survivor_dimension(ifs, hole, allow_weak, root_tol, spectral_tol);

    DeficitRow row;
    row.q = q;
    row.hole = hole.str();
    row.survivor_root = sd.root;
    row.deficit = report.pressure_root - sd.root;
    row.denominator = std::numeric_limits<double>::infinity();
    for (const OrderData& od : orders) {
      DeficitOrderCell cell;
      cell.order = od.order.str();
      cell.mass = cylinder_mass(od.measure, hole);
      cell.constant = od.constant;
      const double denom = od.constant * od.periodic_factor * cell.mass;
      cell.ratio = row.deficit / denom;
      row.denominator = std::min(row.denominator, denom);
      // Per-order survivor root from the table computed above.
      cell.root = sd.root;
      for (const OrderRoot& tr : sd.table) {
        if (tr.order == od.order) cell.root = tr.root;
      }
      row.per_order.push_back(cell);
    }
    row.ratio = row.deficit / row.denominator;
    row.precision_warning = row.deficit < 1000.0 * root_tol;
    report.rows.push_back(row);
    if (row.deficit < 100.0 * root_tol) {
      report.stopped_early = q < q_max;
      break;
    }
  }
  return report;
}

DerivativeRelationScan derivative_relation_scan(const AffineIFS& ifs, const Permutation& order,
                                                const HoleSpec& spec, int q_min, int q_max,
                                                double root_tol, double spectral_tol) {
  if (q_min < 1 || q_max < q_min) throw RangeError("bad q range");
  if (q_max > spec.max_prefix_length()) {
    throw RangeError("q_max exceeds the stored prefix length");
  }
  const double d = static_cast<double>(ifs.dim());
  const RootResult root =
      find_root([&](double s) { return ordered_pressure(ifs, order, s); }, 0.0, d, root_tol);
  if (root.capped) {
    throw DomainError("the ordered pressure has no zero in [0, d]");
  }
  DerivativeRelationScan scan;
  scan.pressure_root = root.value;
  scan.slope = pressure_left_derivative(
      [&](double s) { return ordered_pressure(ifs, order, s); }, root.value);
  scan.stopped_early = false;

  for (int q = q_min; q <= q_max; ++q) {
    const Word hole = spec.prefix(q);
    DerivativeRelationRow row;
    row.q = q;
    row.pressure_gap = -reduced_ordered_pressure(ifs, order, hole, root.value, spectral_tol);
    const RootResult tq = find_root(
        [&](double s) { return reduced_ordered_pressure(ifs, order, hole, s, spectral_tol); },
        0.0, d, root_tol);
    row.survivor_root = tq.value;
    row.ratio = row.pressure_gap / (root.value - tq.value);
    row.precision_warning = root.value - tq.value < 1000.0 * root_tol;
    scan.rows.push_back(row);
    if (root.value - tq.value < 100.0 * root_tol) {
      scan.stopped_early = q < q_max;
      break;
    }
  }
  return scan;
}

}  // namespace survivordim
