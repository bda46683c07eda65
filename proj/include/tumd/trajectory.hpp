#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tumd/error.hpp"

namespace tumd {

enum class CoordinateMode { geographic, planar };

inline std::string_view to_string(CoordinateMode mode) {
  return mode == CoordinateMode::geographic ? "geographic" : "planar";
}

inline CoordinateMode parse_coordinate_mode(std::string_view text) {
  if (text == "geographic" || text == "geo") return CoordinateMode::geographic;
  if (text == "planar") return CoordinateMode::planar;
  throw Error("bad_mode", "unknown coordinate mode '" + std::string(text) + "'");
}

// One timestamped position. x/y are lon/lat degrees in geographic mode and
// metres east/north in planar mode; t is seconds.
struct Fix {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Fix&, const Fix&) = default;
};

struct Trajectory {
  std::string id;
  std::vector<Fix> fixes;
  CoordinateMode mode = CoordinateMode::planar;

  std::size_t size() const { return fixes.size(); }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

}  // namespace tumd
