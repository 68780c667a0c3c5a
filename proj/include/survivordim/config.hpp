// System configuration: JSON loading, validation, and round-tripping.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "survivordim/measures.hpp"
#include "survivordim/potential.hpp"
#include "survivordim/symbolic.hpp"

namespace survivordim {

struct Tolerances {
  double root_tol = 1e-12;
  double spectral_tol = 1e-13;
  bool operator==(const Tolerances&) const = default;
};

struct ScanRange {
  int q_min = 2;
  int q_max = 12;
  bool operator==(const ScanRange&) const = default;
};

struct MeasureSpec {
  enum class Kind { Equilibrium, Bernoulli, ForOrder };
  Kind kind = Kind::Equilibrium;
  std::vector<double> weights;  // Bernoulli
  std::vector<int> order;       // ForOrder
  bool operator==(const MeasureSpec&) const = default;
};

struct SystemConfig {
  int alphabet_size = 0;
  int dimension = 0;
  std::vector<std::vector<double>> matrices;      // k row-major d*d blocks
  std::vector<std::vector<double>> translations;  // optional, k vectors of length d
  std::optional<HoleSpec> hole;
  bool strict_mode = true;
  Tolerances tolerances;
  ScanRange scan;
  std::optional<MeasureSpec> measure;
  int estimate_word_length = 8;  // general (non-diagonal) pressure estimates
  int curve_points = 101;

  nlohmann::json to_json() const;
  static SystemConfig from_json(const nlohmann::json& j);

  bool operator==(const SystemConfig&) const = default;
};

// Parse and validate a config file; ParseError carries the line number.
SystemConfig load_config(const std::string& path);

// Build the IFS and apply the strict contraction gate. With allow_weak the
// gate downgrades to a warning returned through weak_warning.
AffineIFS build_system(const SystemConfig& config, bool allow_weak, bool* weak_warning = nullptr);

// Resolve the measure selection against the system (default: equilibrium).
BernoulliMeasure resolve_measure(const SystemConfig& config, const AffineIFS& ifs);

}  // namespace survivordim
