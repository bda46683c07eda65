#pragma once

#include <cstdio>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tumd/config.hpp"
#include "tumd/ingest.hpp"
#include "tumd/kmeans.hpp"
#include "tumd/pipeline.hpp"
#include "tumd/plots.hpp"

namespace tumd {

inline constexpr const char* kReportSchema = "tumd.report/1";

struct InstanceRecord {
  std::string id;
  std::vector<std::pair<std::string, double>> scores;  // node -> score
  ZoneLabel pass1_zone = ZoneLabel::common;
  std::string pass1_behavior;
  std::string pass2_branch;  // empty when not refined
  std::optional<ZoneLabel> pass2_zone;
  std::string pass2_behavior;
};

struct ReportDocument {
  std::size_t corpus_size = 0;
  std::vector<std::pair<std::string, std::string>> config;
  std::optional<IngestReport> ingest;
  std::vector<std::pair<std::string, double>> radii;  // node -> radius
  std::vector<std::string> constant_columns;
  std::vector<InstanceRecord> instances;
  DonutData breakdown;
  EffectivenessReport effectiveness;
  Breakdown counts;
  ExemplarResult exemplars;
  std::vector<std::string> summary;
};

namespace detail {

inline std::string percent_text(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f%%", 100.0 * fraction);
  return buf;
}

inline std::vector<std::string> verbal_summary(const Breakdown& bd, const EffectivenessReport& e) {
  std::vector<std::string> out;
  const double total = bd.total > 0 ? static_cast<double>(bd.total) : 1.0;
  auto share = [&](std::size_t c) { return percent_text(static_cast<double>(c) / total); };
  out.push_back("corpus: " + std::to_string(bd.total) + " trajectories");
  out.push_back(std::string(e.pass1_effective ? "pass 1 effective" : "pass 1 ineffective") + ": " +
                percent_text(e.pass1_uncommon_fraction) + " of instances show uncommon behavior (common " +
                share(bd.first[ZoneLabel::common]) + ", pure " + bd.x_node + " " + share(bd.first[ZoneLabel::uncommon_x]) +
                ", pure " + bd.y_node + " " + share(bd.first[ZoneLabel::uncommon_y]) + ", hybrid " +
                share(bd.first[ZoneLabel::hybrid]) + ")");
  for (const auto* b : {&e.x_branch, &e.y_branch}) {
    const auto* bb = bd.branch(b->node);
    std::string leaves = bb && bb->refined ? "pure " + bb->x_node + " or pure " + bb->y_node : "a single child node";
    out.push_back("pass 2 " + b->node + " branch " + (b->successful ? "successful" : "unsuccessful") + ": " +
                  std::to_string(b->refined_to_leaf) + " of " + std::to_string(b->pure_instances) + " pure " + b->node +
                  " instances refine to " + leaves + " (" + percent_text(b->fraction) + ")");
  }
  out.push_back(e.pass2_effective ? "pass 2 effective" : "pass 2 ineffective");
  out.push_back(e.overall_effective ? "overall: effective" : "overall: ineffective");
  return out;
}

inline nlohmann::ordered_json zone_counts_json(const ZoneCounts& c, const std::string& x, const std::string& y) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (auto z : {ZoneLabel::common, ZoneLabel::uncommon_y, ZoneLabel::uncommon_x, ZoneLabel::hybrid})
    j[std::string(to_string(z))] = {{"behavior", zone_behavior(z, x, y)}, {"count", c[z]}};
  return j;
}

}  // namespace detail

inline ReportDocument make_report(const DatasetDescription& desc, const EffectivenessReport& eff,
                                  const ExemplarResult& exemplars, std::vector<std::pair<std::string, std::string>> config = {},
                                  std::optional<IngestReport> ingest = std::nullopt) {
  ReportDocument doc;
  doc.corpus_size = desc.first.size();
  doc.config = std::move(config);
  doc.ingest = std::move(ingest);
  doc.counts = desc.breakdown;
  doc.breakdown = donut_data(desc.breakdown);
  doc.effectiveness = eff;
  doc.exemplars = exemplars;
  doc.summary = detail::verbal_summary(desc.breakdown, eff);

  std::vector<const PassResult*> passes{&desc.first};
  if (desc.refine_x) passes.push_back(&*desc.refine_x);
  if (desc.refine_y) passes.push_back(&*desc.refine_y);
  for (const auto* p : passes) {
    doc.radii.emplace_back(p->x_node, p->radius_x);
    doc.radii.emplace_back(p->y_node, p->radius_y);
  }
  const auto& reg = VariableRegistry::instance();
  for (std::size_t c = 0; c < desc.standardization.constant.size(); ++c)
    if (desc.standardization.constant[c]) doc.constant_columns.push_back(reg.name(c));

  for (std::size_t i = 0; i < desc.first.size(); ++i) {
    InstanceRecord rec;
    rec.id = desc.first.ids[i];
    for (const auto* p : passes) {
      rec.scores.emplace_back(p->x_node, p->x_scores[i]);
      rec.scores.emplace_back(p->y_node, p->y_scores[i]);
    }
    rec.pass1_zone = *desc.first.zones[i];
    rec.pass1_behavior = zone_behavior(rec.pass1_zone, desc.first.x_node, desc.first.y_node);
    for (const auto* p : passes) {
      if (p == &desc.first || !p->zones[i]) continue;
      rec.pass2_branch = p->branch;
      rec.pass2_zone = p->zones[i];
      rec.pass2_behavior = *p->zones[i] == ZoneLabel::common ? "common within " + p->branch
                                                             : zone_behavior(*p->zones[i], p->x_node, p->y_node);
    }
    doc.instances.push_back(std::move(rec));
  }
  return doc;
}

enum class ReportFormat { structured, delimited, summary };

inline nlohmann::ordered_json report_json(const ReportDocument& doc) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["schema"] = kReportSchema;

  ordered_json meta;
  meta["corpus_size"] = doc.corpus_size;
  ordered_json cfg = ordered_json::object();
  for (const auto& [k, v] : doc.config) cfg[k] = v;
  meta["config"] = cfg;
  if (doc.ingest) {
    ordered_json rej = ordered_json::array();
    for (const auto& r : doc.ingest->rejected) rej.push_back({{"id", r.id}, {"reason", r.reason}});
    meta["ingest"] = {{"admitted", doc.ingest->admitted},
                      {"rejected", rej},
                      {"duplicates_dropped", doc.ingest->duplicates_dropped},
                      {"rows_rejected", doc.ingest->rows_rejected}};
  }
  ordered_json radii = ordered_json::object();
  for (const auto& [node, r] : doc.radii) radii[node] = r;
  meta["radii"] = radii;
  meta["constant_columns"] = doc.constant_columns;
  j["metadata"] = meta;

  const auto& bd = doc.counts;
  ordered_json passes;
  passes["pass1"] = {{"x", bd.x_node}, {"y", bd.y_node}, {"zones", detail::zone_counts_json(bd.first, bd.x_node, bd.y_node)}};
  for (const auto* b : {&bd.x_branch, &bd.y_branch}) {
    if (!b->refined) continue;
    passes["pass2_" + b->node] = {
        {"x", b->x_node}, {"y", b->y_node}, {"zones", detail::zone_counts_json(b->counts, b->x_node, b->y_node)}};
  }
  j["passes"] = passes;

  auto ring_json = [](const std::vector<RingSegment>& ring) {
    ordered_json arr = ordered_json::array();
    for (const auto& s : ring) {
      ordered_json e = {{"label", s.label}, {"count", s.count}, {"percent", s.percent}};
      if (!s.parent.empty()) e["parent"] = s.parent;
      arr.push_back(e);
    }
    return arr;
  };
  j["breakdown"] = {{"outer", ring_json(doc.breakdown.outer)}, {"inner", ring_json(doc.breakdown.inner)}};

  const auto& e = doc.effectiveness;
  auto branch_json = [](const BranchEffectiveness& b) {
    return ordered_json{{"node", b.node},
                        {"pure_instances", b.pure_instances},
                        {"refined_to_leaf", b.refined_to_leaf},
                        {"fraction", b.fraction},
                        {"successful", b.successful}};
  };
  j["effectiveness"] = {{"pass1_effective", e.pass1_effective},
                        {"pass1_uncommon_fraction", e.pass1_uncommon_fraction},
                        {"pass2_kinematic_successful", e.pass2_kinematic_successful},
                        {"pass2_geometric_successful", e.pass2_geometric_successful},
                        {"pass2_effective", e.pass2_effective},
                        {"overall_effective", e.overall_effective},
                        {"branches", ordered_json::array({branch_json(e.x_branch), branch_json(e.y_branch)})}};
  j["summary"] = doc.summary;

  // Ids grouped by behavior, first pass then refinements.
  ordered_json groups = ordered_json::object();
  for (const auto& rec : doc.instances) groups[rec.pass1_behavior].push_back(rec.id);
  for (const auto& rec : doc.instances)
    if (rec.pass2_zone) groups[rec.pass2_behavior].push_back(rec.id);
  j["behaviors"] = groups;

  ordered_json clusters = ordered_json::array();
  for (const auto& ex : doc.exemplars.exemplars)
    clusters.push_back({{"cluster", ex.cluster}, {"exemplar", ex.id}, {"size", ex.cluster_size}});
  j["exemplars"] = {{"k", doc.exemplars.k}, {"inertia", doc.exemplars.inertia}, {"clusters", clusters}};

  ordered_json instances = ordered_json::array();
  for (const auto& rec : doc.instances) {
    ordered_json scores = ordered_json::object();
    for (const auto& [node, s] : rec.scores) scores[node] = s;
    ordered_json r = {{"id", rec.id},
                      {"scores", scores},
                      {"pass1", {{"zone", to_string(rec.pass1_zone)}, {"behavior", rec.pass1_behavior}}}};
    if (rec.pass2_zone)
      r["pass2"] = {{"branch", rec.pass2_branch}, {"zone", to_string(*rec.pass2_zone)}, {"behavior", rec.pass2_behavior}};
    instances.push_back(r);
  }
  j["instances"] = instances;
  return j;
}

inline std::string emit_report(const ReportDocument& doc, ReportFormat format) {
  std::ostringstream out;
  switch (format) {
    case ReportFormat::structured:
      out << report_json(doc).dump(2) << '\n';
      break;
    case ReportFormat::delimited: {
      out << "id";
      if (!doc.instances.empty())
        for (const auto& [node, s] : doc.instances.front().scores) out << ",score_" << node;
      out << ",pass1_zone,pass1_behavior,pass2_branch,pass2_zone,pass2_behavior\n";
      for (const auto& rec : doc.instances) {
        out << rec.id;
        for (const auto& [node, s] : rec.scores) out << ',' << format_double(s);
        out << ',' << to_string(rec.pass1_zone) << ',' << rec.pass1_behavior << ',' << rec.pass2_branch << ','
            << (rec.pass2_zone ? std::string(to_string(*rec.pass2_zone)) : "") << ',' << rec.pass2_behavior << '\n';
      }
      break;
    }
    case ReportFormat::summary:
      for (const auto& line : doc.summary) out << line << '\n';
      break;
  }
  return out.str();
}

}  // namespace tumd
