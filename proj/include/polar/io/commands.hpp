#pragma once

// Command-line front end. run() parses arguments, dispatches one
// subcommand, writes the report to `out` and diagnostics to `err`, and
// returns the process exit code. Kept header-only so tests can drive the
// CLI in-process.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "polar/affective.hpp"
#include "polar/distribution.hpp"
#include "polar/dominance.hpp"
#include "polar/error.hpp"
#include "polar/index.hpp"
#include "polar/io/csv.hpp"
#include "polar/io/report.hpp"
#include "polar/io/survey_table.hpp"
#include "polar/io/svg.hpp"
#include "polar/salience.hpp"
#include "polar/verify.hpp"

namespace polar::io {

/// Environment variable naming the directory relative file paths resolve to.
inline constexpr const char* kDataDirEnv = "POLAR_DATA_DIR";

/// Exit status per error kind. 0 is success, 1 is a usage error.
constexpr int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownSelector: return 2;
    case ErrorCode::CenterOnBoundary: return 3;
    case ErrorCode::EmptyGroup: return 4;
    case ErrorCode::ZeroBaseline: return 5;
    case ErrorCode::ScaleMismatch: return 6;
    case ErrorCode::CenterMismatch: return 7;
    case ErrorCode::NegativeShare: return 8;
    case ErrorCode::EmptyDistribution: return 9;
    case ErrorCode::PositionOffGrid: return 10;
    case ErrorCode::MalformedHeader: return 11;
    case ErrorCode::NonNumericCell: return 12;
    case ErrorCode::AmbiguousTotal: return 13;
    case ErrorCode::IoFailure: return 14;
    case ErrorCode::NonMonotoneG: return 15;
    case ErrorCode::DegenerateAlpha: return 16;
    case ErrorCode::InsufficientInteriorMass: return 17;
    case ErrorCode::OutOfScale: return 18;
    case ErrorCode::InvertedInterval: return 19;
    case ErrorCode::InvalidScale: return 20;
    case ErrorCode::InvalidArgument: return 21;
  }
  return 1;
}

struct NamedTable {
  std::string label;  // "lr:2008", "file:x.csv#2012", ...
  SurveyTable table;
};

namespace detail {

inline std::string resolve_path(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kDataDirEnv); dir != nullptr && *dir != '\0') {
      return (std::filesystem::path(dir) / p).string();
    }
  }
  return path;
}

/// Selectors: a fixture collection ("lr", "lc", "lc-election"), one of its
/// waves ("lr:2008", "lc-election:2016-post"), or a CSV file
/// ("file:path", "file:path#wave").
inline std::vector<NamedTable> resolve_tables(const std::string& selector,
                                              std::optional<ShareUnit> unit) {
  std::vector<NamedTable> out;
  if (selector.rfind("file:", 0) == 0) {
    std::string path = selector.substr(5);
    std::optional<std::string> wave;
    if (auto hash = path.rfind('#'); hash != std::string::npos) {
      wave = path.substr(hash + 1);
      path.erase(hash);
    }
    std::ifstream in(resolve_path(path));
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "'");
    const Schema schema = sniff_schema(in);
    for (auto& t : load_csv(in, schema, unit)) {
      if (wave && t.wave != *wave) continue;
      std::string label = "file:" + path + "#" + t.wave;
      out.push_back({std::move(label), std::move(t)});
    }
    if (out.empty()) throw Error(ErrorCode::UnknownSelector, "no wave matches '" + selector + "'");
    return out;
  }
  const auto colon = selector.find(':');
  const std::string collection = selector.substr(0, colon);
  if (colon == std::string::npos) {
    for (auto& t : fixture_collection(collection)) {
      std::string label = collection + ":" + t.wave;
      out.push_back({std::move(label), std::move(t)});
    }
  } else {
    out.push_back({selector, fixture(collection, selector.substr(colon + 1))});
  }
  return out;
}

inline NamedTable resolve_one(const std::string& selector, std::optional<ShareUnit> unit) {
  auto tables = resolve_tables(selector, unit);
  if (tables.size() != 1) {
    throw Error(ErrorCode::UnknownSelector, "'" + selector + "' names " +
                                                std::to_string(tables.size()) +
                                                " waves; pick one with collection:wave");
  }
  return std::move(tables.front());
}

inline Json table_input(const NamedTable& t) {
  Json j;
  j["label"] = t.label;
  j["axis"] = to_string(t.table.axis);
  j["unit"] = to_string(t.table.unit);
  Json shares = Json::array();
  for (const auto& r : t.table.rows) shares.push_back(r.text);
  j["shares"] = std::move(shares);
  return j;
}

inline std::string num(double v) { return format_number(v); }

inline Json json_or_null(const std::optional<double>& v) {
  return v ? Json(*v) : Json(nullptr);
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::IoFailure, "cannot write '" + path + "'");
  f << text;
}

inline AnimosityFunction parse_animosity(const std::string& spec) {
  if (spec == "identity") return AnimosityFunction::identity();
  if (spec.rfind("power:", 0) == 0) {
    auto p = parse_number(spec.substr(6));
    if (!p) throw Error(ErrorCode::InvalidArgument, "bad exponent in '" + spec + "'");
    return AnimosityFunction::power(*p);
  }
  if (spec.rfind("plf:", 0) == 0) {
    return AnimosityFunction::piecewise_linear(load_knots_csv(resolve_path(spec.substr(4))));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown animosity function '" + spec + "'");
}

inline TiePolicy parse_ties(const std::string& s) {
  if (s == "exclude") return TiePolicy::Exclude;
  if (s == "left") return TiePolicy::AssignLeft;
  if (s == "right") return TiePolicy::AssignRight;
  if (s == "split") return TiePolicy::Split;
  throw Error(ErrorCode::InvalidArgument, "unknown tie policy '" + s + "'");
}

inline std::vector<double> centers_or_default(const std::vector<double>& given,
                                              const PolicyScale& scale) {
  return given.empty() ? default_centers(scale) : given;
}

inline std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
  return s;
}

}  // namespace detail

/// Options shared by every subcommand.
struct GlobalOptions {
  std::string format = "json";
  std::string out_path;
  std::string share_unit = "auto";

  std::optional<ShareUnit> unit() const {
    if (share_unit == "percent") return ShareUnit::Percent;
    if (share_unit == "proportion") return ShareUnit::Proportion;
    return std::nullopt;
  }
};

/// What a command produced: a JSON report, and optionally a CSV rendering.
struct CommandOutput {
  Report report;
  std::optional<std::string> csv;
};

inline CommandOutput cmd_moments(const GlobalOptions& g, const std::string& selector) {
  CommandOutput o{{"moments"}, std::string("table,mean,variance\n")};
  o.report.inputs["table"] = selector;
  Json tables = Json::array(), rows = Json::array();
  const auto printed = printed_moments();
  for (const auto& t : detail::resolve_tables(selector, g.unit())) {
    tables.push_back(detail::table_input(t));
    const auto d = to_distribution(t.table);
    Json r;
    r["table"] = t.label;
    r["mean"] = mean(d);
    r["variance"] = variance(d);
    r["raw_total"] = t.table.raw_total();
    for (const auto& p : printed) {
      if (t.label == p.collection + ":" + p.wave) {
        r["printed"] = {{"mean", p.mean}, {"variance", p.variance}};
      }
    }
    *o.csv += t.label + "," + detail::num(mean(d)) + "," + detail::num(variance(d)) + "\n";
    rows.push_back(std::move(r));
  }
  o.report.inputs["tables"] = std::move(tables);
  o.report.results["moments"] = std::move(rows);
  return o;
}

inline CommandOutput cmd_index(const GlobalOptions& g, const std::string& selector, double center) {
  CommandOutput o{{"index"}, std::string("table,center,value,integral_below,integral_above\n")};
  o.report.inputs["table"] = selector;
  o.report.inputs["center"] = center;
  Json tables = Json::array(), rows = Json::array();
  for (const auto& t : detail::resolve_tables(selector, g.unit())) {
    tables.push_back(detail::table_input(t));
    const auto d = to_distribution(t.table);
    const auto p = index(d, center);
    const double below = integral_below(d, center), above = integral_above(d, center);
    rows.push_back({{"table", t.label}, {"center", center}, {"value", p.value},
                    {"integral_below", below}, {"integral_above", above}});
    *o.csv += t.label + "," + detail::num(center) + "," + detail::num(p.value) + "," +
              detail::num(below) + "," + detail::num(above) + "\n";
  }
  o.report.inputs["tables"] = std::move(tables);
  o.report.results["indices"] = std::move(rows);
  return o;
}

inline CommandOutput cmd_profile(const GlobalOptions& g, const std::string& selector,
                                 const std::vector<double>& centers_in, const std::string& svg) {
  CommandOutput o{{"profile"}, std::string("table,center,value\n")};
  o.report.inputs["table"] = selector;
  Json tables = Json::array(), rows = Json::array();
  std::vector<Series> series;
  std::vector<double> xs;
  for (const auto& t : detail::resolve_tables(selector, g.unit())) {
    tables.push_back(detail::table_input(t));
    const auto d = to_distribution(t.table);
    const auto centers = detail::centers_or_default(centers_in, d.scale());
    std::vector<double> values;
    for (const auto& p : index_profile(d, centers)) {
      values.push_back(p.value);
      *o.csv += t.label + "," + detail::num(p.center) + "," + detail::num(p.value) + "\n";
    }
    rows.push_back({{"table", t.label}, {"centers", centers}, {"values", values}});
    series.push_back({t.label, values});
    xs = centers;
  }
  o.report.inputs["centers"] = centers_in;
  o.report.inputs["tables"] = std::move(tables);
  o.report.results["profiles"] = std::move(rows);
  if (!svg.empty()) detail::write_text(svg, svg_line_chart(xs, series, "P(F, x*) for " + selector));
  return o;
}

inline CommandOutput cmd_evolution(const GlobalOptions& g, const std::string& axis_name,
                                   const std::vector<double>& centers_in, const std::string& svg) {
  const auto axis = parse_axis(axis_name);
  if (!axis) throw Error(ErrorCode::UnknownSelector, "unknown axis '" + axis_name + "'");
  const std::string collection(to_string(*axis));
  const auto centers = detail::centers_or_default(centers_in, scale_for(*axis));

  CommandOutput o{{"evolution"}, std::string("wave")};
  for (double c : centers) *o.csv += "," + detail::num(c);
  *o.csv += "\n";
  o.report.inputs["axis"] = collection;
  o.report.inputs["centers"] = centers;
  Json tables = Json::array(), waves = Json::array(), matrix = Json::array();
  std::vector<Series> series;
  for (const auto& t : detail::resolve_tables(collection, g.unit())) {
    tables.push_back(detail::table_input(t));
    std::vector<double> row;
    for (const auto& p : index_profile(to_distribution(t.table), centers)) row.push_back(p.value);
    *o.csv += t.table.wave;
    for (double v : row) *o.csv += "," + detail::num(v);
    *o.csv += "\n";
    waves.push_back(t.table.wave);
    matrix.push_back(row);
    series.push_back({t.table.wave, row});
  }
  o.report.inputs["tables"] = std::move(tables);
  o.report.results["waves"] = std::move(waves);
  o.report.results["centers"] = centers;
  o.report.results["values"] = std::move(matrix);
  if (!svg.empty()) {
    detail::write_text(svg, svg_line_chart(centers, series, "P(F, x*) by wave, " + collection));
  }
  return o;
}

inline CommandOutput cmd_election(const GlobalOptions& g, int year,
                                  const std::vector<double>& centers_in) {
  if (year != 2004 && year != 2016) {
    throw Error(ErrorCode::UnknownSelector, "election year must be 2004 or 2016");
  }
  const std::string y = std::to_string(year);
  const auto pre = detail::resolve_one("lc-election:" + y + "-pre", g.unit());
  const auto post = detail::resolve_one("lc-election:" + y + "-post", g.unit());
  const auto d_pre = to_distribution(pre.table), d_post = to_distribution(post.table);
  const auto centers = detail::centers_or_default(centers_in, d_pre.scale());

  CommandOutput o{{"election"}, std::string("center,pre,post,delta,pct_change\n")};
  o.report.inputs["year"] = year;
  o.report.inputs["centers"] = centers;
  o.report.inputs["tables"] = {detail::table_input(pre), detail::table_input(post)};
  Json rows = Json::array();
  for (double c : centers) {
    const auto a = index(d_pre, c), b = index(d_post, c);
    const double pct = pct_change(a, b);
    rows.push_back({{"center", c}, {"pre", a.value}, {"post", b.value},
                    {"delta", b.value - a.value}, {"pct_change", pct}});
    *o.csv += detail::num(c) + "," + detail::num(a.value) + "," + detail::num(b.value) + "," +
              detail::num(b.value - a.value) + "," + detail::num(pct) + "\n";
  }
  o.report.results["rows"] = std::move(rows);
  o.report.results["variance_pre"] = variance(d_pre);
  o.report.results["variance_post"] = variance(d_post);
  return o;
}

inline CommandOutput cmd_cleavage(const GlobalOptions& g, const std::string& axis_name,
                                  const std::string& from, const std::string& to,
                                  const std::vector<double>& centers_in) {
  const auto axis = parse_axis(axis_name);
  if (!axis) throw Error(ErrorCode::UnknownSelector, "unknown axis '" + axis_name + "'");
  const std::string collection(to_string(*axis));
  const auto a = detail::resolve_one(collection + ":" + from, g.unit());
  const auto b = detail::resolve_one(collection + ":" + to, g.unit());
  const auto da = to_distribution(a.table), db = to_distribution(b.table);
  const auto centers = detail::centers_or_default(centers_in, da.scale());
  const Cleavage cl = cleavage_point(da, db, centers);

  CommandOutput o{{"cleavage"}, std::string("center,pct_change\n")};
  o.report.inputs["axis"] = collection;
  o.report.inputs["from"] = from;
  o.report.inputs["to"] = to;
  o.report.inputs["centers"] = centers;
  o.report.inputs["tables"] = {detail::table_input(a), detail::table_input(b)};
  o.report.results["centers"] = cl.centers;
  o.report.results["pct_changes"] = cl.changes;
  o.report.results["argmax_center"] = cl.center;
  o.report.results["max_pct_change"] = cl.change;
  for (std::size_t i = 0; i < cl.centers.size(); ++i) {
    *o.csv += detail::num(cl.centers[i]) + "," + detail::num(cl.changes[i]) + "\n";
  }
  return o;
}

inline CommandOutput cmd_dominance(const GlobalOptions& g, const std::string& base_sel,
                                   const std::string& hat_sel, std::optional<double> center,
                                   bool use_oracle) {
  const auto base = detail::resolve_one(base_sel, g.unit());
  const auto hat = detail::resolve_one(hat_sel, g.unit());
  const auto db = to_distribution(base.table), dh = to_distribution(hat.table);

  CommandOutput o{{"dominance"}, std::nullopt};
  o.report.inputs["base"] = detail::table_input(base);
  o.report.inputs["hat"] = detail::table_input(hat);
  o.report.inputs["center"] = detail::json_or_null(center);
  o.report.inputs["oracle"] = use_oracle;
  if (center) {
    if (use_oracle) {
      o.report.results["oracle_dominates"] = oracle_dominates_at(db, dh, *center);
      o.report.results["center"] = *center;
    } else {
      const auto v = dominates_at(db, dh, *center);
      o.report.results["relation"] = to_string(v.relation);
      o.report.results["center"] = v.center;
      o.report.results["witness"] = detail::json_or_null(v.witness);
    }
    return o;
  }
  std::vector<double> region;
  if (use_oracle) {
    for (double x : polar::detail::union_grid(db, dh)) {
      if (db.scale().interior(x) && oracle_dominates_at(db, dh, x)) region.push_back(x);
    }
  } else {
    region = dominance_region(db, dh);
  }
  o.report.results["region"] = region;
  o.csv = "center\n";
  for (double x : region) *o.csv += detail::num(x) + "\n";
  return o;
}

inline CommandOutput cmd_affective(const GlobalOptions& g, const std::string& selector,
                                   double cutoff, const std::string& g_spec,
                                   const std::string& ties) {
  AffectiveModel model{cutoff, detail::parse_animosity(g_spec), detail::parse_ties(ties)};
  CommandOutput o{{"affective"}, std::string("table,m_left,m_right,level,excluded_mass\n")};
  o.report.inputs["table"] = selector;
  o.report.inputs["cutoff"] = cutoff;
  o.report.inputs["g"] = g_spec;
  o.report.inputs["ties"] = to_string(model.tie_policy);
  Json tables = Json::array(), rows = Json::array();
  for (const auto& t : detail::resolve_tables(selector, g.unit())) {
    tables.push_back(detail::table_input(t));
    const auto r = affective_level(to_distribution(t.table), model);
    rows.push_back({{"table", t.label}, {"m_left", r.m_left}, {"m_right", r.m_right},
                    {"level", r.level}, {"excluded_mass", r.excluded_mass}});
    *o.csv += t.label + "," + detail::num(r.m_left) + "," + detail::num(r.m_right) + "," +
              detail::num(r.level) + "," + detail::num(r.excluded_mass) + "\n";
  }
  o.report.inputs["tables"] = std::move(tables);
  o.report.results["affective"] = std::move(rows);
  return o;
}

inline CommandOutput cmd_salience(const std::string& gc_path, const std::string& gd_path,
                                  const std::vector<double>& alphas,
                                  const std::vector<double>& centers_in,
                                  const std::vector<double>& bounds) {
  std::optional<std::pair<double, double>> b;
  if (!bounds.empty()) {
    if (bounds.size() != 2) throw Error(ErrorCode::InvalidArgument, "--scale takes lo,hi");
    b = std::make_pair(bounds[0], bounds[1]);
  }
  WeightedDistribution gd = load_distribution_csv(detail::resolve_path(gd_path), b);
  const PolicyScale& x = gd.scale();
  WeightedDistribution gc =
      load_distribution_csv(detail::resolve_path(gc_path), std::make_pair(x.min_x(), x.max_x()));
  SalienceModel model{gc, gd, alphas.empty() ? 1.0 : alphas.front()};
  const auto centers = detail::centers_or_default(centers_in, x);
  const SalienceSweep sweep = salience_sweep(model, alphas, centers);

  CommandOutput o{{"salience"}, std::string("alpha")};
  for (double c : sweep.centers) *o.csv += "," + detail::num(c);
  *o.csv += "\n";
  for (std::size_t i = 0; i < sweep.alphas.size(); ++i) {
    *o.csv += detail::num(sweep.alphas[i]);
    for (double v : sweep.values[i]) *o.csv += "," + detail::num(v);
    *o.csv += "\n";
  }
  o.report.inputs["gc"] = gc_path;
  o.report.inputs["gd"] = gd_path;
  o.report.inputs["gc_atoms"] = Json::array();
  for (const auto& a : gc.atoms()) o.report.inputs["gc_atoms"].push_back({a.position, a.weight});
  o.report.inputs["gd_atoms"] = Json::array();
  for (const auto& a : gd.atoms()) o.report.inputs["gd_atoms"].push_back({a.position, a.weight});
  o.report.inputs["alphas"] = sweep.alphas;
  o.report.inputs["centers"] = sweep.centers;

  const auto [c_lo, c_hi] = model.common_band();
  o.report.results["common_band"] = {c_lo, c_hi};
  o.report.results["alphas"] = sweep.alphas;
  o.report.results["centers"] = sweep.centers;
  o.report.results["index"] = sweep.values;
  Json pairs = Json::array();
  for (std::size_t i = 0; i < sweep.alphas.size(); ++i) {
    for (std::size_t j = i + 1; j < sweep.alphas.size(); ++j) {
      const auto sd = salience_dominance(model, sweep.alphas[i], sweep.alphas[j]);
      pairs.push_back({{"alpha_lo", sweep.alphas[i]},
                       {"alpha_hi", sweep.alphas[j]},
                       {"relation", to_string(sd.verdict.relation)},
                       {"crossing", detail::json_or_null(sd.crossing)},
                       {"crossing_in_band", sd.crossing_in_band},
                       {"region", sd.region}});
    }
  }
  o.report.results["dominance"] = std::move(pairs);
  return o;
}

inline CommandOutput cmd_verify(int trials, std::uint64_t seed, int max_atoms) {
  CommandOutput o{{"verify"}, std::nullopt};
  o.report.inputs["trials"] = trials;
  o.report.inputs["seed"] = seed;
  o.report.inputs["max_atoms"] = max_atoms;
  const auto oa = verify::check_oracle_agreement(trials, seed, max_atoms);
  o.report.results["oracle_agreement"] = {{"trials", oa.trials},
                                          {"agreements", oa.agreements},
                                          {"hat_dominates", oa.hat_dominates},
                                          {"oracle_true", oa.oracle_true}};
  const auto ir = verify::check_index_range(trials, seed, max_atoms);
  o.report.results["index_range"] = {{"trials", ir.trials},
                                     {"out_of_range", ir.out_of_range},
                                     {"min", ir.min_value},
                                     {"max", ir.max_value}};
  const auto si = verify::check_strict_increase(trials, seed, max_atoms);
  o.report.results["strict_increase"] = {{"trials", si.trials},
                                         {"non_equivalent", si.non_equivalent},
                                         {"strict", si.strict},
                                         {"verdict_failures", si.verdict_failures}};
  const auto am = verify::check_affective_monotone(trials, seed, max_atoms);
  o.report.results["affective_monotone"] = {{"trials", am.trials},
                                            {"level_violations", am.level_violations},
                                            {"mean_violations", am.mean_violations},
                                            {"skipped", am.skipped}};
  if (oa.agreements != oa.trials || ir.out_of_range || si.verdict_failures ||
      si.strict != si.non_equivalent || am.level_violations || am.mean_violations) {
    o.report.warnings.push_back("at least one randomized check failed");
  }
  return o;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polarization around chosen central positions", "polar"};
  app.require_subcommand(1);
  GlobalOptions g;
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--out", g.out_path, "Write the report to this file instead of stdout");
  app.add_option("--share-unit", g.share_unit, "Share unit of CSV inputs")
      ->check(CLI::IsMember({"auto", "percent", "proportion"}))
      ->capture_default_str();

  std::string table, axis, from, to, base, hat, g_spec = "identity", ties = "exclude", gc, gd,
                                                       svg;
  double center = 0.0, cutoff = 0.0;
  double dominance_center = 0.0;
  std::vector<double> centers, alphas, bounds;
  int year = 0, trials = 1000, max_atoms = 12;
  std::uint64_t seed = 1;
  bool oracle = false;

  auto* moments = app.add_subcommand("moments", "Mean and variance per wave");
  moments->add_option("--table", table, "Table selector")->required();

  auto* index_cmd = app.add_subcommand("index", "P(F, x*) at one center");
  index_cmd->add_option("--table", table, "Table selector")->required();
  index_cmd->add_option("--center", center, "Center x*")->required();

  auto* profile = app.add_subcommand("profile", "P(F, x*) over a list of centers");
  profile->add_option("--table", table, "Table selector")->required();
  profile->add_option("--centers", centers, "Centers (comma separated)")->delimiter(',');
  profile->add_option("--svg", svg, "Also write an SVG line chart here");

  auto* evolution = app.add_subcommand("evolution", "Wave x center matrix of P");
  evolution->add_option("--axis", axis, "lr or lc")->required();
  evolution->add_option("--centers", centers, "Centers (comma separated)")->delimiter(',');
  evolution->add_option("--svg", svg, "Also write an SVG line chart here");

  auto* election = app.add_subcommand("election", "P before and after an election");
  election->add_option("--year", year, "2004 or 2016")->required();
  election->add_option("--centers", centers, "Centers (comma separated)")->delimiter(',');

  auto* cleavage = app.add_subcommand("cleavage", "Center with the largest % change in P");
  cleavage->add_option("--axis", axis, "lr or lc")->required();
  cleavage->add_option("--from", from, "Earlier wave")->required();
  cleavage->add_option("--to", to, "Later wave")->required();
  cleavage->add_option("--centers", centers, "Centers (comma separated)")->delimiter(',');

  auto* dominance = app.add_subcommand("dominance", "Dominance verdict or region");
  dominance->add_option("--base", base, "Base table selector")->required();
  dominance->add_option("--hat", hat, "Comparison table selector")->required();
  auto* dominance_center_opt =
      dominance->add_option("--center", dominance_center, "Center x*; omit for the whole region");
  dominance->add_flag("--oracle", oracle, "Use interval enumeration");

  auto* affective = app.add_subcommand("affective", "Affective polarization level");
  affective->add_option("--table", table, "Table selector")->required();
  affective->add_option("--cutoff", cutoff, "Group boundary x*")->required();
  affective->add_option("--g", g_spec, "identity | power:<p> | plf:<file>")->capture_default_str();
  affective->add_option("--ties", ties, "exclude | left | right | split")->capture_default_str();

  auto* salience = app.add_subcommand("salience", "Issue-salience mixture sweep");
  salience->add_option("--gc", gc, "Common-value distribution CSV (position,weight)")->required();
  salience->add_option("--gd", gd, "Divisive distribution CSV (position,weight)")->required();
  salience->add_option("--alphas", alphas, "Salience weights in (0,1]")->delimiter(',')->required();
  salience->add_option("--centers", centers, "Centers (comma separated)")->delimiter(',');
  salience->add_option("--scale", bounds, "Scale bounds lo,hi (default: g_d support)")
      ->delimiter(',');

  auto* verify_cmd = app.add_subcommand("verify", "Seeded randomized property checks");
  verify_cmd->add_option("--trials", trials, "Trials per check")->capture_default_str();
  verify_cmd->add_option("--seed", seed, "Master seed")->capture_default_str();
  verify_cmd->add_option("--max-atoms", max_atoms, "Grid points per random distribution")
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "polar: " << e.what() << "\n";
    return 1;
  }

  try {
    CommandOutput result;
    if (moments->parsed()) {
      result = cmd_moments(g, table);
    } else if (index_cmd->parsed()) {
      result = cmd_index(g, table, center);
    } else if (profile->parsed()) {
      result = cmd_profile(g, table, centers, svg);
    } else if (evolution->parsed()) {
      result = cmd_evolution(g, axis, centers, svg);
    } else if (election->parsed()) {
      result = cmd_election(g, year, centers);
    } else if (cleavage->parsed()) {
      result = cmd_cleavage(g, axis, from, to, centers);
    } else if (dominance->parsed()) {
      std::optional<double> c;
      if (dominance_center_opt->count() > 0) c = dominance_center;
      result = cmd_dominance(g, base, hat, c, oracle);
    } else if (affective->parsed()) {
      result = cmd_affective(g, table, cutoff, g_spec, ties);
    } else if (salience->parsed()) {
      result = cmd_salience(gc, gd, alphas, centers, bounds);
    } else {
      result = cmd_verify(trials, seed, max_atoms);
    }

    std::string text;
    if (g.format == "csv") {
      if (!result.csv) {
        throw Error(ErrorCode::InvalidArgument, result.report.command + " has no CSV form");
      }
      text = *result.csv;
    } else {
      text = result.report.dump();
    }
    if (g.out_path.empty()) {
      out << text;
    } else {
      detail::write_text(g.out_path, text);
    }
    for (const auto& w : result.report.warnings) err << "polar: warning: " << w << "\n";
    return 0;
  } catch (const Error& e) {
    err << "polar: " << e.what() << "\n";
    return exit_code(e.code());
  }
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, out, err);
}

}  // namespace polar::io
