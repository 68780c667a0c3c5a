#include "survivordim/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "survivordim/asymptotics.hpp"
#include "survivordim/config.hpp"
#include "survivordim/errors.hpp"
#include "survivordim/measures.hpp"
#include "survivordim/pressure.hpp"
#include "survivordim/version.hpp"

namespace survivordim::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] =
      std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general, 17);
  return std::string(buffer, ptr);
}

namespace {

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  std::string format = "both";  // csv | json | both
  bool allow_weak = false;
  int q_min_override = -1;
  int q_max_override = -1;
  int q_single = -1;  // survivor / escape / pressure-curve hole depth
  bool svg = false;
};

struct Context {
  SystemConfig config;
  AffineIFS ifs;
  Options opts;
};

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"") == std::string::npos) return value;
  std::string quoted = "\"";
  for (char c : value) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  for (size_t i = 0; i < header.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_field(header[i]);
  }
  out << '\n';
  for (const std::vector<std::string>& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      out << csv_field(row[i]);
    }
    out << '\n';
  }
}

void write_sidecar(const Context& ctx, const std::string& subcommand, const json& results) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kVersion;
  j["subcommand"] = subcommand;
  j["config"] = ctx.config.to_json();
  j["results"] = results;
  std::ofstream out(fs::path(ctx.opts.out_dir) / (subcommand + ".json"));
  if (!out) throw ValidationError("cannot write the JSON sidecar");
  out << j.dump(2) << '\n';
}

bool wants_csv(const Options& o) { return o.format != "json"; }
bool wants_json(const Options& o) { return o.format != "csv"; }

HoleSpec require_hole(const Context& ctx) {
  if (!ctx.config.hole.has_value()) {
    throw ValidationError("this subcommand needs a \"hole\" entry in the config");
  }
  return *ctx.config.hole;
}

ScanRange effective_scan(const Context& ctx) {
  ScanRange scan = ctx.config.scan;
  if (ctx.opts.q_min_override > 0) scan.q_min = ctx.opts.q_min_override;
  if (ctx.opts.q_max_override > 0) scan.q_max = ctx.opts.q_max_override;
  if (scan.q_min < 1 || scan.q_max < scan.q_min) {
    throw ValidationError("scan range needs 1 <= q_min <= q_max");
  }
  return scan;
}

int hole_depth(const Context& ctx) {
  return ctx.opts.q_single > 0 ? ctx.opts.q_single : effective_scan(ctx).q_max;
}

json order_table_json(const Context& ctx, const DimensionResult& dim) {
  json rows = json::array();
  const std::vector<Permutation> maximal =
      maximizing_orders(ctx.ifs, dim.root);
  for (const OrderRoot& row : dim.table) {
    const double at_root = ordered_pressure(ctx.ifs, row.order, dim.root);
    const bool is_max =
        std::any_of(maximal.begin(), maximal.end(),
                    [&](const Permutation& p) { return p == row.order; });
    json entry;
    entry["order"] = row.order.str();
    entry["root"] = row.root;
    entry["capped"] = row.capped;
    entry["pressure_at_root"] = at_root;
    entry["maximal"] = is_max;
    if (is_max && !dim.capped) {
      entry["measure_weights"] =
          measure_for_order(ctx.ifs, row.order, ctx.config.tolerances.root_tol).measure.weights();
    }
    rows.push_back(entry);
  }
  return rows;
}

std::vector<std::vector<std::string>> order_table_rows(const json& table) {
  std::vector<std::vector<std::string>> rows;
  for (const json& entry : table) {
    std::string weights;
    if (entry.contains("measure_weights")) {
      for (const json& w : entry.at("measure_weights")) {
        if (!weights.empty()) weights += ';';
        weights += format_double(w.get<double>());
      }
    }
    rows.push_back({entry.at("order").get<std::string>(),
                    format_double(entry.at("root").get<double>()),
                    entry.at("capped").get<bool>() ? "1" : "0",
                    format_double(entry.at("pressure_at_root").get<double>()),
                    entry.at("maximal").get<bool>() ? "1" : "0", weights});
  }
  return rows;
}

const std::vector<std::string> kOrderHeader = {"order",            "root", "capped",
                                               "pressure_at_root", "maximal", "measure_weights"};

int cmd_dim(Context& ctx, std::ostream& out) {
  json results;
  std::vector<std::vector<std::string>> rows;
  if (ctx.ifs.diagonal()) {
    const DimensionResult dim = affinity_dimension(ctx.ifs, ctx.config.tolerances.root_tol);
    results["kind"] = "exact";
    results["pressure_root"] = dim.root;
    results["dimension"] = dim.dimension;
    results["capped"] = dim.capped;
    results["orders"] = order_table_json(ctx, dim);
    rows = order_table_rows(results["orders"]);
    out << "pressure root s0 = " << format_double(dim.root) << "\n";
    out << "dimension = " << format_double(dim.dimension) << (dim.capped ? " (capped)" : "")
        << "\n";
  } else {
    const int n = ctx.config.estimate_word_length;
    const PressureFunction pf = PressureFunction::estimate(ctx.ifs, n);
    const RootResult root =
        find_root(pf, 0.0, ctx.ifs.dim(), ctx.config.tolerances.root_tol);
    results["kind"] = "estimate";
    results["word_length"] = n;
    results["pressure_root"] = root.value;
    results["dimension"] = std::min(root.value, static_cast<double>(ctx.ifs.dim()));
    results["capped"] = root.capped;
    rows.push_back({"*", format_double(root.value), root.capped ? "1" : "0", "", "", ""});
    out << "pressure root (upper estimate, words of length " << n
        << ") = " << format_double(root.value) << "\n";
  }
  if (wants_csv(ctx.opts)) {
    write_csv(fs::path(ctx.opts.out_dir) / "dim.csv", kOrderHeader, rows);
  }
  if (wants_json(ctx.opts)) write_sidecar(ctx, "dim", results);
  return 0;
}

int cmd_survivor(Context& ctx, std::ostream& out) {
  const HoleSpec spec = require_hole(ctx);
  const int q = hole_depth(ctx);
  if (q > spec.max_prefix_length()) {
    throw ValidationError("hole depth exceeds the stored prefix length");
  }
  const Word hole = spec.prefix(q);
  json results;
  results["q"] = q;
  results["hole"] = hole.str();
  std::vector<std::vector<std::string>> rows;
  if (ctx.ifs.diagonal()) {
    const DimensionResult dim =
        survivor_dimension(ctx.ifs, hole, ctx.opts.allow_weak, ctx.config.tolerances.root_tol,
                           ctx.config.tolerances.spectral_tol);
    results["kind"] = "exact";
    results["survivor_root"] = dim.root;
    results["dimension"] = dim.dimension;
    results["capped"] = dim.capped;
    json table = json::array();
    for (const OrderRoot& row : dim.table) {
      table.push_back({{"order", row.order.str()}, {"root", row.root}, {"capped", row.capped}});
      rows.push_back({row.order.str(), format_double(row.root), row.capped ? "1" : "0", "", "", ""});
    }
    results["orders"] = table;
    out << "survivor root t_q = " << format_double(dim.root) << "\n";
    out << "survivor dimension = " << format_double(dim.dimension) << "\n";
  } else {
    const int n = ctx.config.estimate_word_length;
    const PressureFunction pf = PressureFunction::estimate_reduced(ctx.ifs, hole, n);
    const RootResult root =
        find_root(pf, 0.0, ctx.ifs.dim(), ctx.config.tolerances.root_tol);
    results["kind"] = "estimate";
    results["word_length"] = n;
    results["survivor_root"] = root.value;
    results["dimension"] = std::min(root.value, static_cast<double>(ctx.ifs.dim()));
    results["capped"] = root.capped;
    rows.push_back({"*", format_double(root.value), root.capped ? "1" : "0", "", "", ""});
    out << "survivor root (upper estimate) = " << format_double(root.value) << "\n";
  }
  if (wants_csv(ctx.opts)) {
    write_csv(fs::path(ctx.opts.out_dir) / "survivor.csv", kOrderHeader, rows);
  }
  if (wants_json(ctx.opts)) write_sidecar(ctx, "survivor", results);
  return 0;
}

int cmd_escape(Context& ctx, std::ostream& out) {
  const HoleSpec spec = require_hole(ctx);
  const int q = hole_depth(ctx);
  if (q > spec.max_prefix_length()) {
    throw ValidationError("hole depth exceeds the stored prefix length");
  }
  const Word hole = spec.prefix(q);
  const BernoulliMeasure measure = resolve_measure(ctx.config, ctx.ifs);
  const double rate = escape_rate(measure, hole, ctx.config.tolerances.spectral_tol);
  const double mass = cylinder_mass(measure, hole);

  json results;
  results["q"] = q;
  results["hole"] = hole.str();
  results["measure_weights"] = measure.weights();
  results["escape_rate"] = rate;
  results["hole_mass"] = mass;
  results["ratio"] = rate / mass;
  if (wants_csv(ctx.opts)) {
    write_csv(fs::path(ctx.opts.out_dir) / "escape.csv", {"q", "hole", "mass", "rate", "ratio"},
              {{std::to_string(q), hole.str(), format_double(mass), format_double(rate),
                format_double(rate / mass)}});
  }
  if (wants_json(ctx.opts)) write_sidecar(ctx, "escape", results);
  out << "escape rate = " << format_double(rate) << "\n";
  return 0;
}

void write_curve_svg(const fs::path& path, const std::vector<double>& s,
                     const std::vector<double>& full, const std::vector<double>& reduced) {
  double lo = 0.0, hi = 0.0;
  for (size_t i = 0; i < s.size(); ++i) {
    lo = std::min({lo, full[i], reduced[i]});
    hi = std::max({hi, full[i], reduced[i]});
  }
  if (hi == lo) hi = lo + 1.0;
  const double w = 640.0, h = 480.0, margin = 40.0;
  const auto x_of = [&](double v) { return margin + (w - 2 * margin) * v / s.back(); };
  const auto y_of = [&](double v) { return h - margin - (h - 2 * margin) * (v - lo) / (hi - lo); };
  std::ofstream svg(path);
  if (!svg) throw ValidationError("cannot write " + path.string());
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\">\n";
  svg << "<line x1=\"" << x_of(0) << "\" y1=\"" << y_of(0) << "\" x2=\"" << x_of(s.back())
      << "\" y2=\"" << y_of(0) << "\" stroke=\"#999\"/>\n";
  for (int curve = 0; curve < 2; ++curve) {
    const std::vector<double>& ys = curve == 0 ? full : reduced;
    svg << "<polyline fill=\"none\" stroke=\"" << (curve == 0 ? "#1f6fb2" : "#b2401f")
        << "\" points=\"";
    for (size_t i = 0; i < s.size(); ++i) svg << x_of(s[i]) << ',' << y_of(ys[i]) << ' ';
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
}

int cmd_pressure_curve(Context& ctx, std::ostream& out) {
  const HoleSpec spec = require_hole(ctx);
  const int q = hole_depth(ctx);
  if (q > spec.max_prefix_length()) {
    throw ValidationError("hole depth exceeds the stored prefix length");
  }
  const Word hole = spec.prefix(q);
  const int points = ctx.config.curve_points;
  const double d = static_cast<double>(ctx.ifs.dim());
  const bool exact = ctx.ifs.diagonal();
  const int n = ctx.config.estimate_word_length;

  const PressureFunction full = exact ? PressureFunction::exact(ctx.ifs)
                                      : PressureFunction::estimate(ctx.ifs, n);
  const PressureFunction reduced =
      exact ? PressureFunction::exact_reduced(ctx.ifs, hole, ctx.config.tolerances.spectral_tol)
            : PressureFunction::estimate_reduced(ctx.ifs, hole, n);

  std::vector<double> grid(static_cast<size_t>(points)), full_values(grid.size()),
      reduced_values(grid.size());
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < points; ++i) {
    const double s = d * static_cast<double>(i) / (points - 1);
    grid[static_cast<size_t>(i)] = s;
    full_values[static_cast<size_t>(i)] = full(s);
    reduced_values[static_cast<size_t>(i)] = reduced(s);
    rows.push_back({format_double(s), format_double(full_values[static_cast<size_t>(i)]),
                    format_double(reduced_values[static_cast<size_t>(i)])});
  }
  if (wants_csv(ctx.opts)) {
    write_csv(fs::path(ctx.opts.out_dir) / "pressure_curve.csv",
              {"s", "pressure", "reduced_pressure"}, rows);
  }
  if (wants_json(ctx.opts)) {
    json results;
    results["kind"] = exact ? "exact" : "estimate";
    if (!exact) results["word_length"] = n;
    results["q"] = q;
    results["hole"] = hole.str();
    results["s"] = grid;
    results["pressure"] = full_values;
    results["reduced_pressure"] = reduced_values;
    write_sidecar(ctx, "pressure_curve", results);
  }
  if (ctx.opts.svg) {
    write_curve_svg(fs::path(ctx.opts.out_dir) / "pressure_curve.svg", grid, full_values,
                    reduced_values);
  }
  out << "sampled " << points << " points on [0, " << format_double(d) << "]\n";
  return 0;
}

int cmd_deficit(Context& ctx, std::ostream& out) {
  const HoleSpec spec = require_hole(ctx);
  const ScanRange scan = effective_scan(ctx);
  const DeficitReport report =
      deficit_scan(ctx.ifs, spec, scan.q_min, scan.q_max, ctx.opts.allow_weak,
                   ctx.config.tolerances.root_tol, ctx.config.tolerances.spectral_tol);

  std::vector<std::vector<std::string>> rows, order_rows;
  json jrows = json::array();
  for (const DeficitRow& row : report.rows) {
    rows.push_back({std::to_string(row.q), row.hole, format_double(row.survivor_root),
                    format_double(row.deficit), format_double(row.denominator),
                    format_double(row.ratio), row.precision_warning ? "1" : "0"});
    json jcells = json::array();
    for (const DeficitOrderCell& cell : row.per_order) {
      order_rows.push_back({std::to_string(row.q), cell.order, format_double(cell.mass),
                            format_double(cell.constant), format_double(cell.root),
                            format_double(cell.ratio)});
      jcells.push_back({{"order", cell.order},
                        {"mass", cell.mass},
                        {"constant", cell.constant},
                        {"root", cell.root},
                        {"ratio", cell.ratio}});
    }
    jrows.push_back({{"q", row.q},
                     {"hole", row.hole},
                     {"survivor_root", row.survivor_root},
                     {"deficit", row.deficit},
                     {"denominator", row.denominator},
                     {"ratio", row.ratio},
                     {"precision_warning", row.precision_warning},
                     {"per_order", jcells}});
  }
  if (wants_csv(ctx.opts)) {
    write_csv(fs::path(ctx.opts.out_dir) / "deficit.csv",
              {"q", "hole", "survivor_root", "deficit", "denominator", "ratio",
               "precision_warning"},
              rows);
    write_csv(fs::path(ctx.opts.out_dir) / "deficit_orders.csv",
              {"q", "order", "mass", "constant", "root", "ratio"}, order_rows);
  }
  if (wants_json(ctx.opts)) {
    json results;
    results["pressure_root"] = report.pressure_root;
    results["periodic"] = report.periodic;
    if (report.periodic) results["period"] = report.period;
    results["predicted_limit"] = report.predicted_limit;
    results["maximizing_orders"] = report.maximizing;
    results["stopped_early"] = report.stopped_early;
    results["rows"] = jrows;
    write_sidecar(ctx, "deficit", results);
  }
  out << "scanned q = " << report.rows.front().q << ".." << report.rows.back().q
      << (report.stopped_early ? " (stopped at the precision floor)" : "") << "\n";
  if (!report.rows.empty()) {
    out << "last ratio = " << format_double(report.rows.back().ratio) << "\n";
  }
  return 0;
}

int cmd_fp_ratio(Context& ctx, std::ostream& out) {
  const HoleSpec spec = require_hole(ctx);
  const ScanRange scan = effective_scan(ctx);
  const BernoulliMeasure measure = resolve_measure(ctx.config, ctx.ifs);
  const EscapeRatioScan report = escape_ratio_scan(measure, spec, scan.q_min, scan.q_max,
                                                   ctx.config.tolerances.spectral_tol);
  std::vector<std::vector<std::string>> rows;
  json jrows = json::array();
  for (const EscapeRatioRow& row : report.rows) {
    rows.push_back({std::to_string(row.q), format_double(row.mass), format_double(row.rate),
                    format_double(row.ratio), format_double(report.predicted_limit)});
    jrows.push_back(
        {{"q", row.q}, {"mass", row.mass}, {"rate", row.rate}, {"ratio", row.ratio}});
  }
  if (wants_csv(ctx.opts)) {
    write_csv(fs::path(ctx.opts.out_dir) / "fp_ratio.csv",
              {"q", "mass", "rate", "ratio", "predicted_limit"}, rows);
  }
  if (wants_json(ctx.opts)) {
    json results;
    results["periodic"] = report.periodic;
    if (report.periodic) results["period"] = report.period;
    results["predicted_limit"] = report.predicted_limit;
    results["measure_weights"] = measure.weights();
    results["rows"] = jrows;
    write_sidecar(ctx, "fp_ratio", results);
  }
  out << "predicted limit = " << format_double(report.predicted_limit) << ", ratio at q = "
      << report.rows.back().q << " is " << format_double(report.rows.back().ratio) << "\n";
  return 0;
}

int cmd_verify(Context& ctx, std::ostream& out) {
  if (!ctx.ifs.diagonal()) {
    throw DomainError("verify needs a diagonal system (the identities are exact only there)");
  }
  const HoleSpec spec = require_hole(ctx);
  const ScanRange scan = effective_scan(ctx);
  const double root_tol = ctx.config.tolerances.root_tol;
  const double spectral_tol = ctx.config.tolerances.spectral_tol;
  const double s0 = affinity_dimension(ctx.ifs, root_tol).root;

  bool all_ok = true;
  std::vector<std::vector<std::string>> rows;
  const auto record = [&](const std::string& check, const std::string& order, int q, double lhs,
                          double rhs, double tol) {
    const double delta = std::abs(lhs - rhs);
    const bool ok = delta <= tol;
    all_ok = all_ok && ok;
    rows.push_back({check, order, q >= 0 ? std::to_string(q) : "", format_double(lhs),
                    format_double(rhs), format_double(delta), ok ? "1" : "0"});
    out << (ok ? "ok:   " : "FAIL: ") << check << " order " << order;
    if (q >= 0) out << " q=" << q;
    out << "  |lhs-rhs| = " << format_double(delta) << "\n";
  };

  for (const Permutation& order : maximizing_orders(ctx.ifs, s0)) {
    for (int q = 2; q <= std::min(4, spec.max_prefix_length()); ++q) {
      const GapIdentity id =
          pressure_gap_identity(ctx.ifs, order, spec.prefix(q), root_tol, spectral_tol);
      record("pressure_gap_vs_escape", order.str(), q, id.pressure_gap, id.escape, 1e-12);
    }
    const DeficitConstant z = deficit_rate_constant(ctx.ifs, order, root_tol);
    record("deficit_constant_routes", order.str(), -1, z.value, z.finite_difference, 1e-6);

    const DerivativeRelationScan scan_result = derivative_relation_scan(
        ctx.ifs, order, spec, scan.q_min, scan.q_max, root_tol, spectral_tol);
    record("derivative_relation", order.str(), scan_result.rows.back().q,
           scan_result.rows.back().ratio, -scan_result.slope.value,
           0.02 * std::abs(scan_result.slope.value));
  }

  if (wants_csv(ctx.opts)) {
    write_csv(fs::path(ctx.opts.out_dir) / "verify.csv",
              {"check", "order", "q", "lhs", "rhs", "delta", "pass"}, rows);
  }
  if (wants_json(ctx.opts)) {
    json results;
    results["pressure_root"] = s0;
    results["all_ok"] = all_ok;
    json jrows = json::array();
    for (const std::vector<std::string>& row : rows) {
      jrows.push_back({{"check", row[0]},
                       {"order", row[1]},
                       {"q", row[2]},
                       {"lhs", row[3]},
                       {"rhs", row[4]},
                       {"delta", row[5]},
                       {"pass", row[6] == "1"}});
    }
    results["checks"] = jrows;
    write_sidecar(ctx, "verify", results);
  }
  if (!all_ok) throw InternalError("identity checks failed; see verify output");
  out << "all identity checks passed\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{std::string(kToolName) +
               " - dimensions and escape rates of self-affine sets with cylinder holes"};
  app.set_help_flag("-h,--help", "print usage");

  Options opts;
  std::string subcommand;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opts.config_path, "path to the JSON system config")->required();
    sub->add_option("--out", opts.out_dir, "output directory (default: current)");
    sub->add_option("--format", opts.format, "csv | json | both (default both)")
        ->check(CLI::IsMember({"csv", "json", "both"}));
    sub->add_flag("--allow-weak", opts.allow_weak,
                  "downgrade the strict-mode contraction gate to a warning");
    sub->add_option("--q-min", opts.q_min_override, "override the scan lower bound");
    sub->add_option("--q-max", opts.q_max_override, "override the scan upper bound");
    sub->callback([&, sub]() { subcommand = sub->get_name(); });
    return sub;
  };

  add_common(app.add_subcommand("dim", "pressure root and dimension of the full system"));
  CLI::App* survivor =
      add_common(app.add_subcommand("survivor", "survivor-set dimension for the hole"));
  survivor->add_option("--q", opts.q_single, "hole depth (default: scan q_max)");
  CLI::App* escape =
      add_common(app.add_subcommand("escape", "escape rate of the configured measure"));
  escape->add_option("--q", opts.q_single, "hole depth (default: scan q_max)");
  CLI::App* curve = add_common(
      app.add_subcommand("pressure-curve", "sample the full and reduced pressure curves"));
  curve->add_option("--q", opts.q_single, "hole depth (default: scan q_max)");
  curve->add_flag("--svg", opts.svg, "emit a polyline plot next to the CSV");
  add_common(app.add_subcommand("deficit", "dimension-deficit scan over hole depths"));
  add_common(app.add_subcommand("fp-ratio", "escape-rate to hole-mass ratio scan"));
  add_common(app.add_subcommand("verify", "run the built-in identity checks"));
  app.require_subcommand(1);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }

  try {
    SystemConfig config = load_config(opts.config_path);
    bool weak = false;
    AffineIFS ifs = build_system(config, opts.allow_weak, &weak);
    Context ctx{std::move(config), std::move(ifs), opts};
    if (weak) {
      err << "warning: operator norms reach 1/2; strict-mode guarantees do not apply\n";
    }
    fs::create_directories(opts.out_dir);
    if (subcommand == "dim") return cmd_dim(ctx, out);
    if (subcommand == "survivor") return cmd_survivor(ctx, out);
    if (subcommand == "escape") return cmd_escape(ctx, out);
    if (subcommand == "pressure-curve") return cmd_pressure_curve(ctx, out);
    if (subcommand == "deficit") return cmd_deficit(ctx, out);
    if (subcommand == "fp-ratio") return cmd_fp_ratio(ctx, out);
    if (subcommand == "verify") return cmd_verify(ctx, out);
    err << "error: unknown subcommand\n" << app.help();
    return 1;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << " (bracket [" << format_double(e.bracket_lo())
        << ", " << format_double(e.bracket_hi()) << "])\n";
    return 3;
  } catch (const BudgetError& e) {
    err << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace survivordim::cli
