#include "survivordim/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "survivordim/errors.hpp"

namespace survivordim {

Permutation::Permutation(std::vector<int> order) : order_(std::move(order)) {
  const int d = static_cast<int>(order_.size());
  if (d < 1) throw DomainError("permutation must be nonempty");
  std::vector<bool> seen(static_cast<size_t>(d), false);
  for (int axis : order_) {
    if (axis < 1 || axis > d || seen[static_cast<size_t>(axis - 1)]) {
      throw DomainError("order is not a permutation of {1,...," + std::to_string(d) + "}");
    }
    seen[static_cast<size_t>(axis - 1)] = true;
  }
}

Permutation Permutation::identity(int d) {
  std::vector<int> order(static_cast<size_t>(d));
  std::iota(order.begin(), order.end(), 1);
  return Permutation(std::move(order));
}

std::string Permutation::str() const {
  std::string out;
  for (size_t i = 0; i < order_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(order_[i]);
  }
  return out;
}

std::vector<Permutation> all_permutations(int d) {
  std::vector<int> order(static_cast<size_t>(d));
  std::iota(order.begin(), order.end(), 1);
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation(order));
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

namespace {

// Does the order sort |diag(A)| non-increasingly for every map?
bool sorts_all_descending(const std::vector<Matrix>& maps, const Permutation& order) {
  for (const Matrix& m : maps) {
    for (int i = 0; i + 1 < order.dim(); ++i) {
      if (std::abs(m(order.axis(i) - 1, order.axis(i) - 1)) <
          std::abs(m(order.axis(i + 1) - 1, order.axis(i + 1) - 1))) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

AffineIFS AffineIFS::create(std::vector<Matrix> maps, std::vector<std::vector<double>> translations) {
  if (maps.size() < 2) throw DomainError("an IFS needs at least two maps");
  const int d = maps.front().dim();
  for (size_t i = 0; i < maps.size(); ++i) {
    if (maps[i].dim() != d) {
      throw ValidationError("matrix " + std::to_string(i + 1) + " has dimension " +
                            std::to_string(maps[i].dim()) + ", expected " + std::to_string(d));
    }
    const std::vector<double> sv = singular_values(maps[i]);
    if (!(sv.front() < 1.0)) {
      throw ValidationError("matrix " + std::to_string(i + 1) + " has operator norm " +
                            std::to_string(sv.front()) + " >= 1; not contracting");
    }
    if (!(sv.back() > 1e-14 * std::max(sv.front(), 1e-300))) {
      throw ValidationError("matrix " + std::to_string(i + 1) + " is singular");
    }
  }
  if (!translations.empty()) {
    if (translations.size() != maps.size()) {
      throw ValidationError("expected " + std::to_string(maps.size()) + " translations, got " +
                            std::to_string(translations.size()));
    }
    for (size_t i = 0; i < translations.size(); ++i) {
      if (translations[i].size() != static_cast<size_t>(d)) {
        throw ValidationError("translation " + std::to_string(i + 1) + " has length " +
                              std::to_string(translations[i].size()) + ", expected " +
                              std::to_string(d));
      }
    }
  }

  AffineIFS ifs;
  ifs.maps_ = std::move(maps);
  ifs.translations_ = std::move(translations);
  ifs.diagonal_ = std::all_of(ifs.maps_.begin(), ifs.maps_.end(),
                              [](const Matrix& m) { return m.is_diagonal(); });
  ifs.max_norm_ = 0.0;
  for (const Matrix& m : ifs.maps_) ifs.max_norm_ = std::max(ifs.max_norm_, operator_norm(m));
  ifs.same_order_ = false;
  if (ifs.diagonal_) {
    for (const Permutation& order : all_permutations(d)) {
      if (sorts_all_descending(ifs.maps_, order)) {
        ifs.same_order_ = true;
        break;
      }
    }
  }
  return ifs;
}

namespace {

double log_partial_product(const std::vector<double>& values, double s, int dim) {
  if (s < 0.0 || s > static_cast<double>(dim)) {
    throw RangeError("potential exponent " + std::to_string(s) + " outside [0, " +
                     std::to_string(dim) + "]");
  }
  const int whole = static_cast<int>(std::floor(s));
  const double frac = s - whole;
  double acc = 0.0;
  for (int i = 0; i < whole; ++i) acc += std::log(values[static_cast<size_t>(i)]);
  if (frac > 0.0) acc += frac * std::log(values[static_cast<size_t>(whole)]);
  return acc;
}

}  // namespace

double log_singular_value_function(const Matrix& a, double s) {
  return log_partial_product(singular_values(a), s, a.dim());
}

double singular_value_function(const Matrix& a, double s) {
  return std::exp(log_singular_value_function(a, s));
}

double log_diagonal_potential(const Matrix& a, const Permutation& order, double s) {
  if (!a.is_diagonal()) throw DomainError("ordered potential needs a diagonal matrix");
  if (order.dim() != a.dim()) throw DomainError("order dimension mismatch");
  std::vector<double> values(static_cast<size_t>(a.dim()));
  for (int i = 0; i < a.dim(); ++i) {
    values[static_cast<size_t>(i)] = std::abs(a(order.axis(i) - 1, order.axis(i) - 1));
  }
  return log_partial_product(values, s, a.dim());
}

double diagonal_potential(const Matrix& a, const Permutation& order, double s) {
  return std::exp(log_diagonal_potential(a, order, s));
}

std::vector<double> log_potential_vector(const AffineIFS& ifs, const Permutation& order, double s) {
  if (!ifs.diagonal()) throw DomainError("ordered potentials need a diagonal IFS");
  std::vector<double> out(static_cast<size_t>(ifs.map_count()));
  for (int i = 0; i < ifs.map_count(); ++i) {
    out[static_cast<size_t>(i)] = log_diagonal_potential(ifs.map(i), order, s);
  }
  return out;
}

}  // namespace survivordim
