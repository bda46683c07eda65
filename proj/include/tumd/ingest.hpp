#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tumd/error.hpp"
#include "tumd/format.hpp"
#include "tumd/trajectory.hpp"

namespace tumd {

// Column mapping for delimited trajectory input. Columns are looked up by
// header name.
struct Schema {
  std::string id_col = "id";
  std::string t_col = "t";
  std::string x_col = "x";
  std::string y_col = "y";
  char delimiter = ',';
};

struct Rejection {
  std::string id;
  std::string reason;

  friend bool operator==(const Rejection&, const Rejection&) = default;
};

struct IngestReport {
  std::size_t admitted = 0;
  std::vector<Rejection> rejected;
  std::size_t duplicates_dropped = 0;
  // Rows dropped for unparseable or out-of-range cells.
  std::size_t rows_rejected = 0;
};

struct IngestResult {
  std::vector<Trajectory> trajectories;
  IngestReport report;
};

struct Violation {
  std::string code;
  std::size_t index = 0;

  friend bool operator==(const Violation&, const Violation&) = default;
};

namespace detail {

inline std::vector<std::string_view> split_row(std::string_view line, char delim) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      cells.push_back(trim(line.substr(start)));
      break;
    }
    cells.push_back(trim(line.substr(start, pos - start)));
    start = pos + 1;
  }
  for (auto& c : cells) {
    if (c.size() >= 2 && c.front() == '"' && c.back() == '"') c = c.substr(1, c.size() - 2);
  }
  return cells;
}

inline std::optional<int> parse_int(std::string_view s) {
  if (s.empty()) return std::nullopt;
  int value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace detail

// Accepts numeric seconds or "YYYY-MM-DD HH:MM:SS[.fff]" (a 'T' separator
// and trailing 'Z' are tolerated), interpreted as UTC.
inline std::optional<double> parse_timestamp(std::string_view text) {
  text = trim(text);
  if (auto numeric = parse_double(text)) return numeric;

  if (!text.empty() && text.back() == 'Z') text.remove_suffix(1);
  if (text.size() < 19 || text[4] != '-' || text[7] != '-' || (text[10] != ' ' && text[10] != 'T') ||
      text[13] != ':' || text[16] != ':')
    return std::nullopt;

  const auto year = detail::parse_int(text.substr(0, 4));
  const auto month = detail::parse_int(text.substr(5, 2));
  const auto day = detail::parse_int(text.substr(8, 2));
  const auto hour = detail::parse_int(text.substr(11, 2));
  const auto minute = detail::parse_int(text.substr(14, 2));
  const auto second = parse_double(text.substr(17));
  if (!year || !month || !day || !hour || !minute || !second) return std::nullopt;
  if (*hour > 23 || *minute > 59 || *second < 0.0 || *second >= 61.0) return std::nullopt;

  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{*year}, std::chrono::month{static_cast<unsigned>(*month)},
                           std::chrono::day{static_cast<unsigned>(*day)}};
  if (!ymd.ok()) return std::nullopt;
  const auto days_since_epoch = sys_days{ymd}.time_since_epoch().count();
  return static_cast<double>(days_since_epoch) * 86400.0 + *hour * 3600.0 + *minute * 60.0 + *second;
}

// Checks every Trajectory invariant. min_fixes == 0 skips the length check.
inline std::vector<Violation> validate_trajectory(const Trajectory& traj, std::size_t min_fixes = 0) {
  std::vector<Violation> out;
  const auto& f = traj.fixes;

  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f[i].t) || !std::isfinite(f[i].x) || !std::isfinite(f[i].y)) {
      out.push_back({"non_finite", i});
      break;
    }
  }
  if (traj.mode == CoordinateMode::geographic) {
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (std::isfinite(f[i].x) && (f[i].x < -180.0 || f[i].x > 180.0)) {
        out.push_back({"lon_out_of_range", i});
        break;
      }
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (std::isfinite(f[i].y) && (f[i].y < -90.0 || f[i].y > 90.0)) {
        out.push_back({"lat_out_of_range", i});
        break;
      }
    }
  }
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (!(f[i].t > f[i - 1].t)) {
      out.push_back({"non_monotonic_t", i});
      break;
    }
  }
  if (min_fixes > 0 && f.size() < min_fixes) out.push_back({"too_few_fixes", f.size()});
  return out;
}

// Reads header-bearing delimited text into one trajectory per distinct id.
// Rows with unparseable or invalid cells are skipped and counted; exact
// duplicate (id, t) rows keep the first occurrence. Output order follows
// first appearance of each id in the input.
inline IngestResult parse_trajectories(std::istream& source, const Schema& schema, CoordinateMode mode,
                                       std::size_t min_fixes) {
  if (min_fixes == 0) throw Error("bad_min_fixes", "min_fixes must be positive");

  std::string line;
  if (!std::getline(source, line)) throw Error("missing_header", "input has no header row");
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);

  const auto header = detail::split_row(line, schema.delimiter);
  auto column = [&](const std::string& name) {
    const auto it = std::find(header.begin(), header.end(), std::string_view(name));
    if (it == header.end()) throw Error("missing_column", "column '" + name + "' not found in header");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t id_idx = column(schema.id_col);
  const std::size_t t_idx = column(schema.t_col);
  const std::size_t x_idx = column(schema.x_col);
  const std::size_t y_idx = column(schema.y_col);
  const std::size_t needed = std::max({id_idx, t_idx, x_idx, y_idx}) + 1;

  struct Pending {
    std::vector<Fix> fixes;
  };
  std::vector<std::string> order;
  std::unordered_map<std::string, Pending> by_id;
  IngestResult result;

  while (std::getline(source, line)) {
    if (trim(line).empty()) continue;
    const auto cells = detail::split_row(line, schema.delimiter);
    if (cells.size() < needed || cells[id_idx].empty()) {
      ++result.report.rows_rejected;
      continue;
    }
    const std::string id(cells[id_idx]);
    auto [it, inserted] = by_id.try_emplace(id);
    if (inserted) order.push_back(id);

    const auto t = parse_timestamp(cells[t_idx]);
    const auto x = parse_double(cells[x_idx]);
    const auto y = parse_double(cells[y_idx]);
    if (!t || !x || !y) {
      ++result.report.rows_rejected;
      continue;
    }
    if (mode == CoordinateMode::geographic && (*x < -180.0 || *x > 180.0 || *y < -90.0 || *y > 90.0)) {
      ++result.report.rows_rejected;
      continue;
    }
    it->second.fixes.push_back({*t, *x, *y});
  }

  for (const auto& id : order) {
    auto& fixes = by_id[id].fixes;
    std::stable_sort(fixes.begin(), fixes.end(), [](const Fix& a, const Fix& b) { return a.t < b.t; });
    const auto last = std::unique(fixes.begin(), fixes.end(), [](const Fix& a, const Fix& b) { return a.t == b.t; });
    result.report.duplicates_dropped += static_cast<std::size_t>(fixes.end() - last);
    fixes.erase(last, fixes.end());

    if (fixes.size() < min_fixes) {
      result.report.rejected.push_back({id, "too_few_fixes"});
      continue;
    }
    result.trajectories.push_back({id, std::move(fixes), mode});
  }
  result.report.admitted = result.trajectories.size();
  return result;
}

// Inverse of parse_trajectories: one row per fix, shortest round-trip
// decimal text.
inline void write_trajectories(std::ostream& out, const std::vector<Trajectory>& trajectories,
                               const Schema& schema = {}) {
  const char d = schema.delimiter;
  out << schema.id_col << d << schema.t_col << d << schema.x_col << d << schema.y_col << '\n';
  for (const auto& traj : trajectories) {
    for (const auto& f : traj.fixes)
      out << traj.id << d << format_double(f.t) << d << format_double(f.x) << d << format_double(f.y) << '\n';
  }
}

}  // namespace tumd
