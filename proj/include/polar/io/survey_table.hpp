#pragma once

// Survey tables: self-placement shares on an instrument scale for one wave,
// plus the embedded ANES tables (shares exactly as printed, as strings).

#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "polar/distribution.hpp"
#include "polar/error.hpp"

namespace polar::io {

enum class Axis { LeftRight0to10, LibCon1to7 };

constexpr std::string_view to_string(Axis a) {
  return a == Axis::LeftRight0to10 ? "lr" : "lc";
}

inline std::optional<Axis> parse_axis(std::string_view s) {
  if (s == "lr" || s == "left-right") return Axis::LeftRight0to10;
  if (s == "lc" || s == "lib-con") return Axis::LibCon1to7;
  return std::nullopt;
}

inline PolicyScale scale_for(Axis a) {
  return a == Axis::LeftRight0to10 ? PolicyScale::integer_range(0, 10)
                                   : PolicyScale::integer_range(1, 7);
}

enum class ShareUnit { Percent, Proportion };

constexpr std::string_view to_string(ShareUnit u) {
  return u == ShareUnit::Percent ? "percent" : "proportion";
}

struct ShareRow {
  double position;
  std::string text;  // the share exactly as written in the source
  double share;      // parsed value of text

  friend bool operator==(const ShareRow&, const ShareRow&) = default;
};

struct SurveyTable {
  Axis axis;
  std::string wave;  // "2008", "2016-pre", "2016-post", ...
  std::vector<ShareRow> rows;
  ShareUnit unit = ShareUnit::Percent;

  double raw_total() const {
    double t = 0.0;
    for (const auto& r : rows) t += r.share;
    return t;
  }

  friend bool operator==(const SurveyTable&, const SurveyTable&) = default;
};

/// Strict decimal parse of a whole cell; nullopt on any leftover characters.
inline std::optional<double> parse_number(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

inline WeightedDistribution to_distribution(const SurveyTable& table) {
  std::vector<std::pair<double, double>> shares;
  shares.reserve(table.rows.size());
  for (const auto& r : table.rows) shares.emplace_back(r.position, r.share);
  return from_shares(scale_for(table.axis), shares);
}

namespace detail {

inline SurveyTable make_table(Axis axis, std::string wave,
                              std::initializer_list<std::string_view> shares) {
  SurveyTable t{axis, std::move(wave), {}, ShareUnit::Percent};
  const PolicyScale scale = scale_for(axis);
  std::size_t i = 0;
  for (std::string_view s : shares) {
    t.rows.push_back({scale.grid()[i++], std::string(s), *parse_number(s)});
  }
  return t;
}

}  // namespace detail

/// Fixture collections: "lr" (left-right, 0-10, by year), "lc" (liberal-
/// conservative, 1-7, pre-election, by year) and "lc-election" (1-7, before
/// and after the 2004 and 2016 elections).
struct FixtureSet {
  std::string collection;
  SurveyTable table;
};

inline std::vector<FixtureSet> fixtures() {
  using detail::make_table;
  constexpr Axis LR = Axis::LeftRight0to10;
  constexpr Axis LC = Axis::LibCon1to7;
  return {
      {"lr", make_table(LR, "2004", {"1.169", "2.682", "4.478", "6.211", "7.316", "28.280",
                                     "9.868", "14.086", "12.395", "5.558", "7.956"})},
      {"lr", make_table(LR, "2008", {"1.641", "2.478", "3.880", "5.126", "6.516", "30.580",
                                     "11.313", "12.148", "10.739", "6.731", "8.849"})},
      {"lr", make_table(LR, "2012", {"1.790", "1.769", "4.359", "5.405", "6.802", "33.277",
                                     "10.281", "11.607", "9.689", "5.207", "9.815"})},
      {"lr", make_table(LR, "2016", {"2.734", "2.623", "4.845", "6.007", "6.717", "29.168",
                                     "10.594", "9.796", "11.612", "6.815", "9.090"})},
      {"lr", make_table(LR, "2020", {"4.469", "2.784", "5.825", "7.018", "7.728", "25.292",
                                     "7.998", "10.074", "10.935", "5.366", "12.511"})},
      {"lc", make_table(LC, "2004", {"3.04", "11.63", "10.39", "33.49", "15.82", "21.62", "4.01"})},
      {"lc", make_table(LC, "2008", {"3.68", "13.03", "11.80", "29.06", "15.96", "22.40", "4.07"})},
      {"lc", make_table(LC, "2012", {"3.14", "11.16", "11.68", "34.42", "15.59", "19.40", "4.62"})},
      {"lc", make_table(LC, "2016", {"4.27", "15.00", "12.29", "27.11", "15.44", "21.20", "4.69"})},
      {"lc", make_table(LC, "2020", {"5.04", "15.76", "12.10", "27.03", "12.04", "21.70", "6.32"})},
      {"lc-election",
       make_table(LC, "2004-pre", {"3.04", "11.63", "10.39", "33.49", "15.82", "21.62", "4.01"})},
      {"lc-election",
       make_table(LC, "2004-post", {"2.54", "10.84", "14.31", "32.44", "16.68", "19.88", "3.30"})},
      {"lc-election",
       make_table(LC, "2016-pre", {"4.27", "15.00", "12.29", "27.11", "15.44", "21.20", "4.69"})},
      {"lc-election",
       make_table(LC, "2016-post", {"3.62", "14.52", "13.42", "29.11", "14.35", "20.70", "4.28"})},
  };
}

/// Printed summary rows (average position, variance) keyed like fixtures().
struct PrintedMoments {
  std::string collection;
  std::string wave;
  double mean;
  double variance;
};

inline std::vector<PrintedMoments> printed_moments() {
  return {
      {"lr", "2004", 5.875, 5.336},          {"lr", "2008", 5.925, 5.426},
      {"lr", "2012", 5.858, 5.397},          {"lr", "2016", 5.803, 6.108},
      {"lr", "2020", 5.723, 7.376},          {"lc", "2004", 4.283, 2.147},
      {"lc", "2008", 4.241, 2.334},          {"lc", "2012", 4.248, 2.132},
      {"lc", "2016", 4.168, 2.503},          {"lc", "2020", 4.156, 2.738},
      {"lc-election", "2004-pre", 4.283, 2.147}, {"lc-election", "2004-post", 4.227, 2.013},
      {"lc-election", "2016-pre", 4.168, 2.503}, {"lc-election", "2016-post", 4.153, 2.375},
  };
}

/// All fixture tables of one collection, in wave order.
inline std::vector<SurveyTable> fixture_collection(std::string_view collection) {
  std::vector<SurveyTable> out;
  for (auto& f : fixtures()) {
    if (f.collection == collection) out.push_back(std::move(f.table));
  }
  if (out.empty()) {
    throw Error(ErrorCode::UnknownSelector, "no fixture collection '" + std::string(collection) + "'");
  }
  return out;
}

inline SurveyTable fixture(std::string_view collection, std::string_view wave) {
  for (auto& t : fixture_collection(collection)) {
    if (t.wave == wave) return t;
  }
  throw Error(ErrorCode::UnknownSelector,
              "no wave '" + std::string(wave) + "' in collection '" + std::string(collection) + "'");
}

}  // namespace polar::io
