#pragma once

#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>
#include <string>

#include "tumd/plots.hpp"

namespace tumd {

namespace detail {

inline std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline const char* zone_color(std::optional<ZoneLabel> z) {
  if (!z) return "#c8c8c8";
  switch (*z) {
    case ZoneLabel::common: return "#9e9e9e";
    case ZoneLabel::uncommon_y: return "#1f77b4";
    case ZoneLabel::uncommon_x: return "#d62728";
    case ZoneLabel::hybrid: return "#9467bd";
  }
  return "#000000";
}

}  // namespace detail

// Unit-square scatter with threshold lines.
inline std::string render_svg(const ScatterData& s) {
  constexpr double size = 400.0, margin = 50.0;
  auto px = [&](double v) { return margin + v * size; };
  auto py = [&](double v) { return margin + (1.0 - v) * size; };
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"500\" viewBox=\"0 0 500 500\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"500\" height=\"500\" fill=\"white\"/>\n";
  o << "<text x=\"250\" y=\"25\" text-anchor=\"middle\" font-size=\"14\">" << detail::xml_escape(s.title) << "</text>\n";
  o << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\"" << size << "\" height=\"" << size
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<line x1=\"" << detail::fmt3(px(s.threshold)) << "\" y1=\"" << margin << "\" x2=\"" << detail::fmt3(px(s.threshold))
    << "\" y2=\"" << margin + size << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
  o << "<line x1=\"" << margin << "\" y1=\"" << detail::fmt3(py(s.threshold)) << "\" x2=\"" << margin + size << "\" y2=\""
    << detail::fmt3(py(s.threshold)) << "\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
  o << "<text x=\"250\" y=\"490\" text-anchor=\"middle\" font-size=\"12\">" << detail::xml_escape(s.x_label)
    << " outlier score</text>\n";
  o << "<text x=\"15\" y=\"250\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 15 250)\">"
    << detail::xml_escape(s.y_label) << " outlier score</text>\n";
  // Background points first so highlighted ones stay visible.
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& p : s.points) {
      if (p.highlighted != (pass == 1)) continue;
      o << "<circle cx=\"" << detail::fmt3(px(p.x)) << "\" cy=\"" << detail::fmt3(py(p.y)) << "\" r=\"3\" fill=\""
        << detail::zone_color(p.highlighted ? p.zone : std::nullopt) << "\" fill-opacity=\"0.8\"><title>"
        << detail::xml_escape(p.id) << "</title></circle>\n";
    }
  o << "</svg>\n";
  return o.str();
}

inline std::string render_svg(const DonutData& d) {
  constexpr double cx = 250.0, cy = 250.0;
  static const char* palette[] = {"#9e9e9e", "#d62728", "#1f77b4", "#9467bd", "#ff7f0e",
                                  "#2ca02c", "#8c564b", "#e377c2", "#17becf", "#bcbd22"};
  std::map<std::string, std::string> colors;
  auto color_of = [&](const std::string& label) {
    auto [it, inserted] = colors.try_emplace(label, palette[colors.size() % std::size(palette)]);
    return it->second;
  };
  auto arc = [&](double r_in, double r_out, double a0, double a1) {
    if (a1 - a0 >= 2.0 * std::numbers::pi - 1e-9) a1 = a0 + 2.0 * std::numbers::pi - 1e-4;
    const int large = (a1 - a0) > std::numbers::pi ? 1 : 0;
    auto pt = [&](double r, double a) { return detail::fmt3(cx + r * std::sin(a)) + " " + detail::fmt3(cy - r * std::cos(a)); };
    return "M " + pt(r_out, a0) + " A " + detail::fmt3(r_out) + " " + detail::fmt3(r_out) + " 0 " + std::to_string(large) +
           " 1 " + pt(r_out, a1) + " L " + pt(r_in, a1) + " A " + detail::fmt3(r_in) + " " + detail::fmt3(r_in) + " 0 " +
           std::to_string(large) + " 0 " + pt(r_in, a0) + " Z";
  };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"500\" viewBox=\"0 0 500 500\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"500\" height=\"500\" fill=\"white\"/>\n";
  auto ring = [&](const std::vector<RingSegment>& segs, double r_in, double r_out) {
    double a = 0.0;
    for (const auto& s : segs) {
      const double span = 2.0 * std::numbers::pi * s.percent / 100.0;
      o << "<path d=\"" << arc(r_in, r_out, a, a + span) << "\" fill=\"" << color_of(s.label)
        << "\" stroke=\"white\"><title>" << detail::xml_escape(s.label) << " " << detail::fmt3(s.percent)
        << "%</title></path>\n";
      a += span;
    }
  };
  ring(d.outer, 170.0, 230.0);
  ring(d.inner, 100.0, 165.0);
  double ly = 20.0;
  for (const auto& [label, color] : colors) {
    o << "<rect x=\"5\" y=\"" << ly - 9 << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>";
    o << "<text x=\"20\" y=\"" << ly << "\" font-size=\"10\">" << detail::xml_escape(label) << "</text>\n";
    ly += 13.0;
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace tumd
