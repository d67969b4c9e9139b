#pragma once

// CSV ingestion and emission (UTF-8, comma separated, dot decimal).
//
// Long schema:  axis,wave,position,share      (one row per cell)
// Wide schema:  position,<wave>,<wave>,...    (one column per wave)
//
// Shares may be percents (column total near 100) or proportions (near 1).
// The unit is detected per table unless an override is given.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polar/distribution.hpp"
#include "polar/error.hpp"
#include "polar/io/survey_table.hpp"

namespace polar::io {

enum class Schema { Long, Wide };

/// Relative slack when deciding whether a total is "near" 1 or 100.
inline constexpr double kUnitDetectSlack = 0.02;

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return s;
}

inline std::vector<std::string> split_row(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                              : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

/// Non-blank lines of the input, BOM stripped.
inline std::vector<std::string> read_lines(std::istream& in) {
  std::vector<std::string> lines;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (first && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    first = false;
    if (trim(line).empty()) continue;
    lines.push_back(line);
  }
  return lines;
}

inline double number_cell(const std::string& cell, std::size_t line_no) {
  auto v = parse_number(cell);
  if (!v) {
    throw Error(ErrorCode::NonNumericCell,
                "line " + std::to_string(line_no) + ": '" + cell + "' is not a number");
  }
  return *v;
}

inline ShareUnit detect_unit(double total, const std::string& wave) {
  if (std::abs(total - 100.0) <= 100.0 * kUnitDetectSlack) return ShareUnit::Percent;
  if (std::abs(total - 1.0) <= kUnitDetectSlack) return ShareUnit::Proportion;
  throw Error(ErrorCode::AmbiguousTotal, "wave '" + wave + "' shares total " +
                                             std::to_string(total) + ", near neither 1 nor 100");
}

/// Checks that the rows cover exactly the instrument grid, then sorts them.
inline void finish_table(SurveyTable& t, std::optional<ShareUnit> unit_override) {
  const PolicyScale scale = scale_for(t.axis);
  std::vector<bool> seen(scale.grid().size(), false);
  for (const auto& r : t.rows) {
    const std::size_t i = scale.find(r.position);
    if (i == PolicyScale::npos || seen[i]) {
      throw Error(ErrorCode::PositionOffGrid, "wave '" + t.wave + "': position " +
                                                  std::to_string(r.position) +
                                                  (i == PolicyScale::npos ? " is off the grid"
                                                                          : " appears twice"));
    }
    seen[i] = true;
    if (r.share < 0.0) {
      throw Error(ErrorCode::NegativeShare, "wave '" + t.wave + "': share " + r.text + " at " +
                                                std::to_string(r.position));
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw Error(ErrorCode::PositionOffGrid, "wave '" + t.wave + "' misses instrument positions");
  }
  std::sort(t.rows.begin(), t.rows.end(),
            [](const ShareRow& a, const ShareRow& b) { return a.position < b.position; });
  t.unit = unit_override ? *unit_override : detect_unit(t.raw_total(), t.wave);
}

inline std::optional<Axis> infer_axis(const std::vector<double>& positions) {
  for (Axis a : {Axis::LeftRight0to10, Axis::LibCon1to7}) {
    const PolicyScale scale = scale_for(a);
    const auto grid = scale.grid();
    if (positions.size() != grid.size()) continue;
    std::vector<double> sorted = positions;
    std::sort(sorted.begin(), sorted.end());
    if (std::equal(sorted.begin(), sorted.end(), grid.begin())) return a;
  }
  return std::nullopt;
}

inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Parses survey tables. For the wide schema the axis is inferred from the
/// position column unless given.
inline std::vector<SurveyTable> load_csv(std::istream& in, Schema schema,
                                         std::optional<ShareUnit> unit_override = std::nullopt,
                                         std::optional<Axis> wide_axis = std::nullopt) {
  const std::vector<std::string> lines = detail::read_lines(in);
  if (lines.empty()) throw Error(ErrorCode::MalformedHeader, "empty file");
  const std::vector<std::string> header = detail::split_row(lines.front());

  std::vector<SurveyTable> tables;
  if (schema == Schema::Long) {
    if (header != std::vector<std::string>{"axis", "wave", "position", "share"}) {
      throw Error(ErrorCode::MalformedHeader, "long schema needs header axis,wave,position,share");
    }
    for (std::size_t n = 1; n < lines.size(); ++n) {
      const auto cells = detail::split_row(lines[n]);
      if (cells.size() != 4) {
        throw Error(ErrorCode::MalformedHeader, "line " + std::to_string(n + 1) + " has " +
                                                    std::to_string(cells.size()) + " cells");
      }
      const auto axis = parse_axis(cells[0]);
      if (!axis) throw Error(ErrorCode::UnknownSelector, "unknown axis '" + cells[0] + "'");
      const double pos = detail::number_cell(cells[2], n + 1);
      const double share = detail::number_cell(cells[3], n + 1);
      auto it = std::find_if(tables.begin(), tables.end(), [&](const SurveyTable& t) {
        return t.axis == *axis && t.wave == cells[1];
      });
      if (it == tables.end()) {
        tables.push_back({*axis, cells[1], {}, ShareUnit::Percent});
        it = tables.end() - 1;
      }
      it->rows.push_back({pos, cells[3], share});
    }
  } else {
    if (header.size() < 2 || header.front() != "position") {
      throw Error(ErrorCode::MalformedHeader, "wide schema needs header position,<wave>,...");
    }
    std::vector<std::vector<std::string>> rows;
    std::vector<double> positions;
    for (std::size_t n = 1; n < lines.size(); ++n) {
      auto cells = detail::split_row(lines[n]);
      if (cells.size() != header.size()) {
        throw Error(ErrorCode::MalformedHeader, "line " + std::to_string(n + 1) + " has " +
                                                    std::to_string(cells.size()) + " cells");
      }
      positions.push_back(detail::number_cell(cells[0], n + 1));
      rows.push_back(std::move(cells));
    }
    const auto axis = wide_axis ? wide_axis : detail::infer_axis(positions);
    if (!axis) {
      throw Error(ErrorCode::PositionOffGrid, "positions match neither the 0-10 nor the 1-7 scale");
    }
    for (std::size_t col = 1; col < header.size(); ++col) {
      SurveyTable t{*axis, header[col], {}, ShareUnit::Percent};
      for (std::size_t r = 0; r < rows.size(); ++r) {
        t.rows.push_back({positions[r], rows[r][col], detail::number_cell(rows[r][col], r + 2)});
      }
      tables.push_back(std::move(t));
    }
  }
  if (tables.empty()) throw Error(ErrorCode::MalformedHeader, "no data rows");
  for (auto& t : tables) detail::finish_table(t, unit_override);
  return tables;
}

inline std::vector<SurveyTable> load_csv(const std::string& path, Schema schema,
                                         std::optional<ShareUnit> unit_override = std::nullopt,
                                         std::optional<Axis> wide_axis = std::nullopt) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "'");
  return load_csv(in, schema, unit_override, wide_axis);
}

/// Long if the header is exactly the long header, wide otherwise.
inline Schema sniff_schema(std::istream& in) {
  const auto pos = in.tellg();
  std::string first;
  std::getline(in, first);
  in.clear();
  in.seekg(pos);
  if (first.rfind("\xEF\xBB\xBF", 0) == 0) first.erase(0, 3);
  return detail::split_row(first) == std::vector<std::string>{"axis", "wave", "position", "share"}
             ? Schema::Long
             : Schema::Wide;
}

/// Writes tables back out. Share cells are written from their source text,
/// so load_csv(emit_csv(t)) reproduces t exactly.
inline std::string emit_csv(const std::vector<SurveyTable>& tables, Schema schema) {
  std::ostringstream out;
  if (schema == Schema::Long) {
    out << "axis,wave,position,share\n";
    for (const auto& t : tables) {
      for (const auto& r : t.rows) {
        out << to_string(t.axis) << ',' << t.wave << ',' << detail::format_number(r.position) << ','
            << r.text << '\n';
      }
    }
    return out.str();
  }
  if (tables.empty()) throw Error(ErrorCode::InvalidArgument, "nothing to emit");
  for (const auto& t : tables) {
    if (t.axis != tables.front().axis) {
      throw Error(ErrorCode::ScaleMismatch, "wide schema needs one axis for all waves");
    }
  }
  out << "position";
  for (const auto& t : tables) out << ',' << t.wave;
  out << '\n';
  for (std::size_t r = 0; r < tables.front().rows.size(); ++r) {
    out << detail::format_number(tables.front().rows[r].position);
    for (const auto& t : tables) out << ',' << t.rows[r].text;
    out << '\n';
  }
  return out.str();
}

/// A free-form distribution file: header "position,weight", any positions.
/// Bounds default to the smallest and largest position listed.
inline WeightedDistribution load_distribution_csv(std::istream& in,
                                                  std::optional<std::pair<double, double>> bounds =
                                                      std::nullopt) {
  const std::vector<std::string> lines = detail::read_lines(in);
  if (lines.empty() ||
      detail::split_row(lines.front()) != std::vector<std::string>{"position", "weight"}) {
    throw Error(ErrorCode::MalformedHeader, "distribution file needs header position,weight");
  }
  std::map<double, double> mass;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const auto cells = detail::split_row(lines[n]);
    if (cells.size() != 2) {
      throw Error(ErrorCode::MalformedHeader, "line " + std::to_string(n + 1) + " needs 2 cells");
    }
    const double p = detail::number_cell(cells[0], n + 1);
    const double w = detail::number_cell(cells[1], n + 1);
    if (w < 0.0) throw Error(ErrorCode::NegativeShare, "line " + std::to_string(n + 1));
    mass[p] += w;
  }
  if (mass.empty()) throw Error(ErrorCode::EmptyDistribution, "no rows");
  const double lo = bounds ? bounds->first : mass.begin()->first;
  const double hi = bounds ? bounds->second : mass.rbegin()->first;
  std::vector<double> grid;
  std::vector<std::pair<double, double>> shares;
  for (const auto& [p, w] : mass) {
    grid.push_back(p);
    shares.emplace_back(p, w);
  }
  return from_shares(PolicyScale(lo, hi, std::move(grid)), shares);
}

inline WeightedDistribution load_distribution_csv(const std::string& path,
                                                  std::optional<std::pair<double, double>> bounds =
                                                      std::nullopt) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "'");
  return load_distribution_csv(in, bounds);
}

/// Knots "distance,value" for a piecewise-linear animosity function.
inline std::vector<std::pair<double, double>> load_knots_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "'");
  const std::vector<std::string> lines = detail::read_lines(in);
  if (lines.empty() ||
      detail::split_row(lines.front()) != std::vector<std::string>{"distance", "value"}) {
    throw Error(ErrorCode::MalformedHeader, "knot file needs header distance,value");
  }
  std::vector<std::pair<double, double>> knots;
  for (std::size_t n = 1; n < lines.size(); ++n) {
    const auto cells = detail::split_row(lines[n]);
    if (cells.size() != 2) {
      throw Error(ErrorCode::MalformedHeader, "line " + std::to_string(n + 1) + " needs 2 cells");
    }
    knots.emplace_back(detail::number_cell(cells[0], n + 1), detail::number_cell(cells[1], n + 1));
  }
  return knots;
}

}  // namespace polar::io
