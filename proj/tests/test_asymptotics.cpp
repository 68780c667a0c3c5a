#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "survivordim/asymptotics.hpp"
#include "survivordim/errors.hpp"
#include "survivordim/pressure.hpp"

using survivordim::AffineIFS;
using survivordim::BernoulliMeasure;
using survivordim::HoleSpec;
using survivordim::Matrix;
using survivordim::Permutation;
using survivordim::Word;

namespace {

AffineIFS crossed_pair() {
  return AffineIFS::create({Matrix::diagonal({4.0 / 9.0, 1.0 / 9.0}),
                            Matrix::diagonal({1.0 / 9.0, 4.0 / 9.0})});
}

AffineIFS homogeneous_third() {
  return AffineIFS::create({Matrix::diagonal({1.0 / 3.0, 1.0 / 3.0}),
                            Matrix::diagonal({1.0 / 3.0, 1.0 / 3.0})});
}

double entropy_plus_linear(const std::vector<double>& alpha, const std::vector<double>& a) {
  double g = 0.0;
  for (size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] > 0.0) g += -alpha[i] * std::log(alpha[i]) + a[i] * alpha[i];
  }
  return g;
}

}  // namespace

TEST_CASE("maximizing frequency closed forms") {
  const std::vector<double> alpha =
      survivordim::maximizing_frequency(crossed_pair(), Permutation({1, 2}), 0.5);
  CHECK(alpha[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
  CHECK(alpha[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-13));

  const std::vector<double> uniform =
      survivordim::maximizing_frequency(homogeneous_third(), Permutation({1, 2}), 0.8);
  CHECK(uniform[0] == doctest::Approx(0.5));
  CHECK(uniform[1] == doctest::Approx(0.5));
}

TEST_CASE("maximizing frequency beats the grid search") {
  std::mt19937 rng(91);
  for (int trial = 0; trial < 12; ++trial) {
    const int k = trial % 2 == 0 ? 2 : 3;
    const AffineIFS ifs = AffineIFS::create(oracles::random_diagonal_maps(rng, k, 2));
    const Permutation order = Permutation::identity(2);
    for (double s : {0.4, 1.3}) {
      const std::vector<double> alpha = survivordim::maximizing_frequency(ifs, order, s);
      const std::vector<double> grid =
          oracles::grid_simplex_maximizer(survivordim::log_potential_vector(ifs, order, s));
      double sup = 0.0, sum = 0.0;
      for (size_t i = 0; i < alpha.size(); ++i) {
        sup = std::max(sup, std::abs(alpha[i] - grid[i]));
        sum += alpha[i];
        CHECK(alpha[i] >= 0.0);
      }
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(sup < 2e-3);
    }
  }
}

TEST_CASE("the closed-form maximizer dominates random simplex points") {
  std::mt19937 rng(137);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const AffineIFS ifs = AffineIFS::create(oracles::random_diagonal_maps(rng, 3, 2));
  const Permutation order = Permutation::identity(2);
  for (double s : {0.5, 1.5}) {
    const std::vector<double> a = survivordim::log_potential_vector(ifs, order, s);
    const std::vector<double> alpha = survivordim::maximizing_frequency(ifs, order, s);
    const double best = entropy_plus_linear(alpha, a);
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<double> point(3);
      double sum = 0.0;
      for (double& p : point) {
        p = -std::log(unit(rng));
        sum += p;
      }
      for (double& p : point) p /= sum;
      CHECK(best > entropy_plus_linear(point, a));
    }
  }
}

TEST_CASE("the maximum of entropy plus linear term is the ordered pressure") {
  const AffineIFS ifs = crossed_pair();
  const double s0 = survivordim::affinity_dimension(ifs).root;
  for (const Permutation& order : survivordim::all_permutations(2)) {
    const std::vector<double> a = survivordim::log_potential_vector(ifs, order, s0);
    const std::vector<double> alpha = survivordim::maximizing_frequency(ifs, order, s0);
    CHECK(entropy_plus_linear(alpha, a) ==
          doctest::Approx(survivordim::ordered_pressure(ifs, order, s0)).epsilon(1e-12));
    CHECK(std::abs(entropy_plus_linear(alpha, a)) < 1e-10);
  }
}

TEST_CASE("deficit rate constant of the crossed pair") {
  const double inner = (2.0 / 3.0) * std::log(4.0 / 9.0) + (1.0 / 3.0) * std::log(1.0 / 9.0);
  const double expected = -1.0 / inner;
  const survivordim::DeficitConstant first =
      survivordim::deficit_rate_constant(crossed_pair(), Permutation({1, 2}));
  CHECK_FALSE(first.one_sided);
  CHECK(first.value == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::abs(first.value - first.finite_difference) < 1e-6);

  // The mirrored order gives the same constant by symmetry.
  const survivordim::DeficitConstant second =
      survivordim::deficit_rate_constant(crossed_pair(), Permutation({2, 1}));
  CHECK(second.value == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("deficit rate constant of a homogeneous system") {
  const survivordim::DeficitConstant z =
      survivordim::deficit_rate_constant(homogeneous_third(), Permutation({1, 2}));
  CHECK(z.value == doctest::Approx(-1.0 / std::log(1.0 / 3.0)).epsilon(1e-12));
}

TEST_CASE("non-maximizing orders have no deficit constant") {
  const AffineIFS sorted_pair = AffineIFS::create(
      {Matrix::diagonal({0.4, 0.2}), Matrix::diagonal({0.3, 0.1})});
  CHECK_THROWS_AS(survivordim::deficit_rate_constant(sorted_pair, Permutation({2, 1})),
                  survivordim::DomainError);
}

TEST_CASE("left derivative of an affine pressure is exact") {
  const AffineIFS hom = homogeneous_third();
  const Permutation order = Permutation::identity(2);
  const double s0 = survivordim::affinity_dimension(hom).root;
  const survivordim::LeftDerivative ld = survivordim::pressure_left_derivative(
      [&](double s) { return survivordim::ordered_pressure(hom, order, s); }, s0);
  CHECK(ld.value == doctest::Approx(std::log(1.0 / 3.0)).epsilon(1e-6));
  CHECK_FALSE(ld.nonsmooth);
}

TEST_CASE("left derivative matches the analytic slope of a multiplicative pressure") {
  const AffineIFS ifs = AffineIFS::create(
      {Matrix::diagonal({0.3, 0.1}), Matrix::diagonal({0.4, 0.2})});
  const Permutation order = Permutation::identity(2);
  const double s = 0.7;
  const survivordim::LeftDerivative ld = survivordim::pressure_left_derivative(
      [&](double s_) { return survivordim::ordered_pressure(ifs, order, s_); }, s);
  const std::vector<double> alpha = survivordim::maximizing_frequency(ifs, order, s);
  const double analytic = alpha[0] * std::log(0.3) + alpha[1] * std::log(0.4);
  CHECK(ld.value == doctest::Approx(analytic).epsilon(1e-6));
  CHECK(std::abs(ld.value - analytic) < 1e-6);
}

TEST_CASE("a kink inside the step window is flagged") {
  const AffineIFS ifs = AffineIFS::create(
      {Matrix::diagonal({0.45, 0.2}), Matrix::diagonal({0.4, 0.15})});
  const Permutation order = Permutation::identity(2);
  // s just past the integer: the widest step reaches across the kink.
  const survivordim::LeftDerivative kinked = survivordim::pressure_left_derivative(
      [&](double s) { return survivordim::ordered_pressure(ifs, order, s); }, 1.0005);
  CHECK(kinked.nonsmooth);
  const survivordim::LeftDerivative smooth = survivordim::pressure_left_derivative(
      [&](double s) { return survivordim::ordered_pressure(ifs, order, s); }, 0.7);
  CHECK_FALSE(smooth.nonsmooth);
}

TEST_CASE("escape ratio scans carry the periodic limit") {
  const BernoulliMeasure half({0.5, 0.5});
  const survivordim::EscapeRatioScan single =
      survivordim::escape_ratio_scan(half, HoleSpec::periodic(Word({1}, 2)), 2, 10);
  CHECK(single.periodic);
  CHECK(single.period == 1);
  CHECK(single.predicted_limit == doctest::Approx(0.5));
  CHECK(single.rows.back().ratio == doctest::Approx(0.5).epsilon(0.05));

  const survivordim::EscapeRatioScan alternating =
      survivordim::escape_ratio_scan(half, HoleSpec::periodic(Word({1, 2}, 2)), 2, 10);
  CHECK(alternating.predicted_limit == doctest::Approx(0.75));

  const survivordim::EscapeRatioScan declared = survivordim::escape_ratio_scan(
      half, HoleSpec::explicit_prefix(Word({1, 2, 2, 1, 2, 1, 1, 2, 2, 1, 1, 2}, 2)), 2, 12);
  CHECK_FALSE(declared.periodic);
  CHECK(declared.predicted_limit == doctest::Approx(1.0));
  CHECK(declared.rows.back().ratio == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("deficit scan of the homogeneous pair approaches ratio one") {
  const survivordim::DeficitReport report = survivordim::deficit_scan(
      homogeneous_third(), HoleSpec::periodic(Word({1}, 2)), 2, 16);
  CHECK(report.periodic);
  CHECK(report.period == 1);
  CHECK(report.maximizing.size() == 1);
  CHECK(report.rows.size() == 15);

  // Closed-form denominator: Z (1 - mu[1]) mu[1^q] with Z = 1/log 3.
  const double z = 1.0 / std::log(3.0);
  for (const survivordim::DeficitRow& row : report.rows) {
    CHECK(row.denominator ==
          doctest::Approx(z * 0.5 * std::pow(0.5, row.q)).epsilon(1e-10));
  }
  CHECK(report.rows.back().ratio == doctest::Approx(1.0).epsilon(0.02));

  // The ratio error shrinks like q 2^-q.
  CHECK(std::abs(report.rows.back().ratio - 1.0) <
        std::abs(report.rows.front().ratio - 1.0));
}

TEST_CASE("deficit error shrinks at least like the square root of the hole mass") {
  const survivordim::DeficitReport report = survivordim::deficit_scan(
      homogeneous_third(), HoleSpec::periodic(Word({1}, 2)), 2, 18);
  int checked = 0;
  for (size_t i = report.rows.size() - 4; i < report.rows.size(); ++i) {
    const survivordim::DeficitRow& row = report.rows[i];
    if (row.precision_warning) continue;
    const double mass = row.per_order.front().mass;
    const double error = std::abs(row.ratio - 1.0);
    if (error == 0.0) continue;
    CHECK(std::log(error) / std::log(mass) >= 0.4);
    ++checked;
  }
  CHECK(checked >= 2);
}

TEST_CASE("deficit ratio approaches one for a distinct same-order pair with an aperiodic hole") {
  const AffineIFS sorted_pair = AffineIFS::create(
      {Matrix::diagonal({0.4, 0.2}), Matrix::diagonal({0.3, 0.1})});
  const Word tm({1, 2, 2, 1, 2, 1, 1, 2, 2, 1, 1, 2}, 2);
  const survivordim::DeficitReport report =
      survivordim::deficit_scan(sorted_pair, HoleSpec::explicit_prefix(tm), 2, 12);
  CHECK_FALSE(report.periodic);
  CHECK(report.rows.back().ratio == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("deficit scan stops at the precision floor") {
  const survivordim::DeficitReport report = survivordim::deficit_scan(
      homogeneous_third(), HoleSpec::periodic(Word({1}, 2)), 2, 60);
  CHECK(report.stopped_early);
  CHECK(report.rows.back().precision_warning);
  CHECK(report.rows.back().q < 60);
}

TEST_CASE("derivative relation is exact for the homogeneous pair") {
  const survivordim::DerivativeRelationScan scan = survivordim::derivative_relation_scan(
      homogeneous_third(), Permutation::identity(2), HoleSpec::periodic(Word({1}, 2)), 2, 10);
  // The ordered pressure is affine in s, so every ratio equals log 3.
  for (const survivordim::DerivativeRelationRow& row : scan.rows) {
    CHECK(row.ratio == doctest::Approx(std::log(3.0)).epsilon(1e-9));
  }
  CHECK(-scan.slope.value == doctest::Approx(std::log(3.0)).epsilon(1e-6));
}

TEST_CASE("derivative relation converges to the reciprocal deficit constant") {
  const survivordim::DerivativeRelationScan scan = survivordim::derivative_relation_scan(
      crossed_pair(), Permutation({1, 2}), HoleSpec::periodic(Word({1}, 2)), 2, 12);
  const double z = survivordim::deficit_rate_constant(crossed_pair(), Permutation({1, 2})).value;
  CHECK(scan.rows.back().ratio == doctest::Approx(1.0 / z).epsilon(0.02));

  // Tiny q: the ratio is a difference quotient, so the slope bracket holds.
  const survivordim::DerivativeRelationScan first = survivordim::derivative_relation_scan(
      crossed_pair(), Permutation({1, 2}), HoleSpec::periodic(Word({1}, 2)), 1, 1);
  const double lo = std::abs(std::log(4.0 / 9.0));
  const double hi = std::abs(std::log(1.0 / 9.0));
  CHECK(first.rows.front().ratio >= lo - 1e-9);
  CHECK(first.rows.front().ratio <= hi + 1e-9);
}
