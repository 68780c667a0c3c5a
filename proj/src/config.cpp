#include "survivordim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "survivordim/errors.hpp"

namespace survivordim {

using nlohmann::json;

namespace {

json hole_to_json(const HoleSpec& hole) {
  json j;
  j["kind"] = hole.kind() == HoleSpec::Kind::Periodic ? "periodic" : "prefix";
  j["word"] = hole.generator().str();
  return j;
}

HoleSpec hole_from_json(const json& j, int alphabet_size) {
  if (!j.contains("kind") || !j.contains("word")) {
    throw ValidationError("hole needs \"kind\" and \"word\" fields");
  }
  const std::string kind = j.at("kind").get<std::string>();
  const Word word = Word::parse(j.at("word").get<std::string>(), alphabet_size);
  if (kind == "periodic") return HoleSpec::periodic(word);
  if (kind == "prefix") return HoleSpec::explicit_prefix(word);
  throw ValidationError("hole kind must be \"periodic\" or \"prefix\", got \"" + kind + "\"");
}

json measure_to_json(const MeasureSpec& m) {
  json j;
  switch (m.kind) {
    case MeasureSpec::Kind::Equilibrium:
      j["kind"] = "equilibrium";
      break;
    case MeasureSpec::Kind::Bernoulli:
      j["kind"] = "bernoulli";
      j["weights"] = m.weights;
      break;
    case MeasureSpec::Kind::ForOrder:
      j["kind"] = "order";
      j["order"] = m.order;
      break;
  }
  return j;
}

MeasureSpec measure_from_json(const json& j) {
  MeasureSpec m;
  const std::string kind = j.value("kind", "equilibrium");
  if (kind == "equilibrium") {
    m.kind = MeasureSpec::Kind::Equilibrium;
  } else if (kind == "bernoulli") {
    m.kind = MeasureSpec::Kind::Bernoulli;
    if (!j.contains("weights")) throw ValidationError("bernoulli measure needs \"weights\"");
    m.weights = j.at("weights").get<std::vector<double>>();
  } else if (kind == "order") {
    m.kind = MeasureSpec::Kind::ForOrder;
    if (!j.contains("order")) throw ValidationError("order measure needs \"order\"");
    m.order = j.at("order").get<std::vector<int>>();
  } else {
    throw ValidationError("measure kind must be equilibrium, bernoulli or order");
  }
  return m;
}

}  // namespace

json SystemConfig::to_json() const {
  json j;
  j["alphabet_size"] = alphabet_size;
  j["dimension"] = dimension;
  j["matrices"] = matrices;
  if (!translations.empty()) j["translations"] = translations;
  if (hole.has_value()) j["hole"] = hole_to_json(*hole);
  j["strict_mode"] = strict_mode;
  j["tolerances"] = {{"root_tol", tolerances.root_tol}, {"spectral_tol", tolerances.spectral_tol}};
  j["scan"] = {{"q_min", scan.q_min}, {"q_max", scan.q_max}};
  if (measure.has_value()) j["measure"] = measure_to_json(*measure);
  j["estimate_word_length"] = estimate_word_length;
  j["curve_points"] = curve_points;
  return j;
}

SystemConfig SystemConfig::from_json(const json& j) {
  SystemConfig c;
  try {
    c.alphabet_size = j.at("alphabet_size").get<int>();
    c.dimension = j.at("dimension").get<int>();
    c.matrices = j.at("matrices").get<std::vector<std::vector<double>>>();
    if (j.contains("translations")) {
      c.translations = j.at("translations").get<std::vector<std::vector<double>>>();
    }
    c.strict_mode = j.value("strict_mode", true);
    if (j.contains("tolerances")) {
      c.tolerances.root_tol = j.at("tolerances").value("root_tol", 1e-12);
      c.tolerances.spectral_tol = j.at("tolerances").value("spectral_tol", 1e-13);
    }
    if (j.contains("scan")) {
      c.scan.q_min = j.at("scan").value("q_min", 2);
      c.scan.q_max = j.at("scan").value("q_max", 12);
    }
    c.estimate_word_length = j.value("estimate_word_length", 8);
    c.curve_points = j.value("curve_points", 101);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad config structure: ") + e.what());
  }

  if (c.alphabet_size < 2) throw ValidationError("alphabet_size must be at least 2");
  if (c.dimension < 1) throw ValidationError("dimension must be at least 1");
  if (c.matrices.size() != static_cast<size_t>(c.alphabet_size)) {
    throw ValidationError("expected " + std::to_string(c.alphabet_size) + " matrices, got " +
                          std::to_string(c.matrices.size()));
  }
  const size_t block = static_cast<size_t>(c.dimension) * c.dimension;
  for (size_t i = 0; i < c.matrices.size(); ++i) {
    if (c.matrices[i].size() != block) {
      throw ValidationError("matrix " + std::to_string(i + 1) + " has " +
                            std::to_string(c.matrices[i].size()) + " entries, expected " +
                            std::to_string(block));
    }
    for (double v : c.matrices[i]) {
      if (!std::isfinite(v)) {
        throw ValidationError("matrix " + std::to_string(i + 1) + " has a non-finite entry");
      }
    }
  }
  if (c.tolerances.root_tol <= 0.0 || c.tolerances.spectral_tol <= 0.0) {
    throw ValidationError("tolerances must be positive");
  }
  if (c.scan.q_min < 1 || c.scan.q_max < c.scan.q_min) {
    throw ValidationError("scan range needs 1 <= q_min <= q_max");
  }
  if (c.estimate_word_length < 1) throw ValidationError("estimate_word_length must be positive");
  if (c.curve_points < 2) throw ValidationError("curve_points must be at least 2");

  // Parse the hole after alphabet_size is known.
  if (j.contains("hole")) c.hole = hole_from_json(j.at("hole"), c.alphabet_size);
  if (j.contains("measure")) c.measure = measure_from_json(j.at("measure"));
  if (c.measure.has_value() && c.measure->kind == MeasureSpec::Kind::Bernoulli &&
      c.measure->weights.size() != static_cast<size_t>(c.alphabet_size)) {
    throw ValidationError("bernoulli measure needs " + std::to_string(c.alphabet_size) +
                          " weights");
  }
  return c;
}

SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file \"" + path + "\"");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    const size_t byte = std::min(e.byte, text.size());
    const long line = 1 + std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n');
    throw ParseError(path + ":" + std::to_string(line) + ": " + e.what());
  }
  return SystemConfig::from_json(j);
}

AffineIFS build_system(const SystemConfig& config, bool allow_weak, bool* weak_warning) {
  std::vector<Matrix> maps;
  maps.reserve(config.matrices.size());
  for (const std::vector<double>& entries : config.matrices) {
    maps.emplace_back(config.dimension, entries);
  }
  AffineIFS ifs = AffineIFS::create(std::move(maps), config.translations);
  if (weak_warning != nullptr) *weak_warning = false;
  if (config.strict_mode && ifs.max_operator_norm() >= 0.5) {
    int worst = 0;
    double worst_norm = 0.0;
    for (int i = 0; i < ifs.map_count(); ++i) {
      const double norm = operator_norm(ifs.map(i));
      if (norm > worst_norm) {
        worst_norm = norm;
        worst = i;
      }
    }
    if (!allow_weak) {
      throw ValidationError("matrix " + std::to_string(worst + 1) + " has operator norm " +
                            std::to_string(worst_norm) +
                            " >= 1/2 under strict mode (use --allow-weak to override)");
    }
    if (weak_warning != nullptr) *weak_warning = true;
  }
  return ifs;
}

BernoulliMeasure resolve_measure(const SystemConfig& config, const AffineIFS& ifs) {
  const MeasureSpec spec = config.measure.value_or(MeasureSpec{});
  switch (spec.kind) {
    case MeasureSpec::Kind::Equilibrium:
      return equilibrium_measure(ifs, config.tolerances.root_tol);
    case MeasureSpec::Kind::Bernoulli:
      return BernoulliMeasure::from_unnormalized(spec.weights);
    case MeasureSpec::Kind::ForOrder: {
      const OrderMeasure om =
          measure_for_order(ifs, Permutation(spec.order), config.tolerances.root_tol);
      if (!om.maximal) {
        throw ValidationError("order " + Permutation(spec.order).str() +
                              " does not attain the pressure maximum; its measure is not an "
                              "equilibrium measure");
      }
      return om.measure;
    }
  }
  throw InternalError("unhandled measure kind");
}

}  // namespace survivordim
