#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tumd/density.hpp"
#include "tumd/format.hpp"
#include "tumd/pipeline.hpp"

namespace tumd {

enum class PlotKind { scatter, donut, density1d, density2d };

struct ScatterPoint {
  std::string id;
  double x = 0.0;
  double y = 0.0;
  std::optional<ZoneLabel> zone;
  bool highlighted = false;
};

struct ScatterData {
  static constexpr PlotKind kind = PlotKind::scatter;
  std::string title;
  std::string x_label;
  std::string y_label;
  double threshold = kDefaultThreshold;
  std::vector<ScatterPoint> points;
};

// One point per corpus instance; the classified subset is highlighted.
inline ScatterData scatter_data(const PassResult& pass, double threshold = kDefaultThreshold) {
  ScatterData s;
  s.title = pass.branch.empty() ? "pass 1" : "pass 2 " + pass.branch;
  s.x_label = pass.x_node;
  s.y_label = pass.y_node;
  s.threshold = threshold;
  s.points.reserve(pass.size());
  for (std::size_t i = 0; i < pass.size(); ++i)
    s.points.push_back({pass.ids[i], pass.x_scores[i], pass.y_scores[i], pass.zones[i], pass.classified(i)});
  return s;
}

struct RingSegment {
  std::string label;
  std::string parent;  // outer segment label for inner-ring entries
  std::size_t count = 0;
  double percent = 0.0;  // of the whole corpus
  bool subdivision = false;  // inner-ring entry that refines its parent
};

struct DonutData {
  static constexpr PlotKind kind = PlotKind::donut;
  std::size_t total = 0;
  std::vector<RingSegment> outer;
  std::vector<RingSegment> inner;
};

// Outer ring: first-pass behaviors. Inner ring: refinement of each pure
// segment; common and hybrid segments pass through unsubdivided so both
// rings cover the corpus. Empty segments are omitted.
inline DonutData donut_data(const Breakdown& bd) {
  DonutData d;
  d.total = bd.total;
  const double total = bd.total > 0 ? static_cast<double>(bd.total) : 1.0;
  auto pct = [&](std::size_t c) { return 100.0 * static_cast<double>(c) / total; };

  const ZoneLabel order[] = {ZoneLabel::common, ZoneLabel::uncommon_x, ZoneLabel::uncommon_y, ZoneLabel::hybrid};
  for (auto z : order) {
    const auto count = bd.first[z];
    if (count == 0) continue;
    const auto label = zone_behavior(z, bd.x_node, bd.y_node);
    d.outer.push_back({label, "", count, pct(count), false});

    const BranchBreakdown* branch = z == ZoneLabel::uncommon_x ? &bd.x_branch
                                    : z == ZoneLabel::uncommon_y ? &bd.y_branch
                                                                 : nullptr;
    if (branch == nullptr || !branch->refined) {
      d.inner.push_back({label, label, count, pct(count), false});
      continue;
    }
    const ZoneLabel inner_order[] = {ZoneLabel::uncommon_x, ZoneLabel::uncommon_y, ZoneLabel::hybrid, ZoneLabel::common};
    for (auto iz : inner_order) {
      const auto c = branch->counts[iz];
      if (c == 0) continue;
      auto inner_label = iz == ZoneLabel::common ? "common within " + branch->node
                                                 : zone_behavior(iz, branch->x_node, branch->y_node);
      d.inner.push_back({std::move(inner_label), label, c, pct(c), true});
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Delimited plot-data files

inline void write_delimited(std::ostream& out, const ScatterData& s) {
  out << "id,x_score,y_score,zone,highlighted\n";
  for (const auto& p : s.points)
    out << p.id << ',' << format_double(p.x) << ',' << format_double(p.y) << ','
        << (p.zone ? std::string(to_string(*p.zone)) : "") << ',' << (p.highlighted ? 1 : 0) << '\n';
}

inline void write_delimited(std::ostream& out, const DonutData& d) {
  out << "ring,label,parent,count,percent\n";
  for (const auto& s : d.outer) out << "outer," << s.label << ",," << s.count << ',' << format_double(s.percent) << '\n';
  for (const auto& s : d.inner)
    out << "inner," << s.label << ',' << s.parent << ',' << s.count << ',' << format_double(s.percent) << '\n';
}

inline void write_delimited(std::ostream& out, const Density1D& d) {
  out << "# label=" << d.label << " transformed=" << (d.transformed ? 1 : 0)
      << " lambda=" << format_double(d.transform.lambda) << " shift=" << format_double(d.transform.shift)
      << " degenerate=" << (d.degenerate ? 1 : 0) << '\n';
  out << "bin_lo,bin_hi,density\n";
  for (std::size_t b = 0; b < d.density.size(); ++b) {
    const double lo = d.lo + static_cast<double>(b) * d.bin_width;
    out << format_double(lo) << ',' << format_double(lo + d.bin_width) << ',' << format_double(d.density[b]) << '\n';
  }
}

inline void write_delimited(std::ostream& out, const Density2D& d) {
  out << "# x=" << d.x_label << " y=" << d.y_label << " transformed=" << (d.transformed ? 1 : 0)
      << " x_lambda=" << format_double(d.x_transform.lambda) << " y_lambda=" << format_double(d.y_transform.lambda)
      << " degenerate=" << (d.degenerate ? 1 : 0) << '\n';
  out << "x_lo,x_hi,y_lo,y_hi,density\n";
  for (std::size_t bx = 0; bx < d.x_bins; ++bx)
    for (std::size_t by = 0; by < d.y_bins; ++by) {
      const double xl = d.x_lo + static_cast<double>(bx) * d.x_width;
      const double yl = d.y_lo + static_cast<double>(by) * d.y_width;
      out << format_double(xl) << ',' << format_double(xl + d.x_width) << ',' << format_double(yl) << ','
          << format_double(yl + d.y_width) << ',' << format_double(d.density[bx * d.y_bins + by]) << '\n';
    }
}

}  // namespace tumd
