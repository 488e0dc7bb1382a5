#include "signsight/io/report.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace signsight::io {
namespace {

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

nlohmann::json viewpoint_json(const ViewpointResult& v) {
  const VisibilityRecord& a = v.actual;
  return {
      {"column", a.column},
      {"arc_position", a.d_length},
      {"d_width", a.d_width},
      {"viewpoint", {a.viewpoint.x(), a.viewpoint.y(), a.viewpoint.z()}},
      {"E_geo", a.e_geo},
      {"E_occ", a.e_occ},
      {"E_sight", a.e_sight},
      {"E_visibility", a.e_visibility},
      {"A_view", a.a_view},
      {"A_occ", a.a_occ},
      {"occlusion_ratio", a.occlusion_ratio},
      {"occlusion_distribution", a.distribution},
      {"sight_angle", a.sight_angle},
      {"E_geoI", v.ideal.e_geo},
      {"E_sightI", v.ideal.e_sight},
      {"E_visibilityI", v.ideal.e_visibility},
      {"CognitiveDouble", v.recognizability.ratio},
      {"recognizable", v.recognizability.recognizable ? 1 : 0},
      {"degenerate", a.degenerate || v.recognizability.degenerate},
  };
}

}  // namespace

void write_text_report(std::ostream& out, const EvaluationResult& result) {
  for (const SignReport& s : result.signs) {
    out << "Sign " << s.id << " (type " << s.type << ", " << s.side << ")\n";
    if (!s.ok) {
      out << "  FAILED: " << s.error << "\n\n";
      continue;
    }
    out << "  sightDistance: " << num(s.sight_distance) << "\n";
    out << "  sampledLength: " << num(s.sampled_length) << "\n";
    out << "  drivingWidth: " << num(s.driving_width) << "\n";
    out << "  laneCount: " << s.lanes.size() << "\n";
    out << "  laneWidth: " << num(s.lane_width) << "\n";
    out << "  environmentPoints: " << s.environment_points << "\n";
    out << "  flags: short_field=" << s.short_field << " vrd_exceeds_sight_distance=" << s.vrd_exceeds_sight_distance
        << " fallback_outlines_used=" << s.fallback_outlines_used << "\n";
    for (const auto& w : s.warnings) out << "  warning: " << w << "\n";
    for (const LaneReport& lane : s.lanes) {
      out << "  Lane " << lane.lane << "\n";
      out << "    arcPosition Visibility VisibilityI CognitiveDouble Recognizable\n";
      for (const ViewpointResult& v : lane.viewpoints) {
        out << "    " << num(v.actual.d_length) << " " << num(v.actual.e_visibility) << " "
            << num(v.ideal.e_visibility) << " " << num(v.recognizability.ratio) << " "
            << (v.recognizability.recognizable ? 1 : 0) << "\n";
      }
      out << "    maxCognitiveDistance: " << num(lane.verdict.max_cog_length) << "\n";
      out << "    minCognitiveDistance: " << num(lane.verdict.vrd) << "\n";
      out << "    timely: " << (lane.verdict.timely ? 1 : 0) << "\n";
    }
    out << "\n";
  }
  out << "Summary: " << result.signs.size() << " sign(s), " << result.failures() << " failed\n";
  for (const SignReport& s : result.signs) {
    if (!s.ok) out << "  failed " << s.id << ": " << s.error << "\n";
  }
}

std::string json_report(const EvaluationResult& result) {
  nlohmann::json signs = nlohmann::json::array();
  for (const SignReport& s : result.signs) {
    nlohmann::json sign = {
        {"id", s.id},
        {"type", s.type},
        {"side", s.side},
        {"ok", s.ok},
    };
    if (!s.ok) {
      sign["error"] = s.error;
      signs.push_back(std::move(sign));
      continue;
    }
    sign["sight_distance"] = s.sight_distance;
    sign["sampled_length"] = s.sampled_length;
    sign["driving_width"] = s.driving_width;
    sign["lane_width"] = s.lane_width;
    sign["environment_points"] = s.environment_points;
    sign["flags"] = {
        {"short_field", s.short_field},
        {"vrd_exceeds_sight_distance", s.vrd_exceeds_sight_distance},
        {"fallback_outlines_used", s.fallback_outlines_used},
    };
    sign["warnings"] = s.warnings;
    nlohmann::json lanes = nlohmann::json::array();
    for (const LaneReport& lane : s.lanes) {
      nlohmann::json vps = nlohmann::json::array();
      for (const auto& v : lane.viewpoints) vps.push_back(viewpoint_json(v));
      lanes.push_back({
          {"lane", lane.lane},
          {"viewpoints", std::move(vps)},
          {"maxCognitiveDistance", lane.verdict.max_cog_length},
          {"minCognitiveDistance", lane.verdict.vrd},
          {"timely", lane.verdict.timely ? 1 : 0},
      });
    }
    sign["lanes"] = std::move(lanes);
    signs.push_back(std::move(sign));
  }
  nlohmann::json doc = {{"format", "signsight-report"}, {"version", 1}, {"signs", std::move(signs)}};
  return doc.dump(2) + "\n";
}

void write_field_csv(std::ostream& out, const EvaluationResult& result) {
  out << "sign,lane,arc_position,e_visibility,e_visibility_ideal,cognitive_double,recognizable\n";
  for (const SignReport& s : result.signs) {
    for (const LaneReport& lane : s.lanes) {
      for (const auto& v : lane.viewpoints) {
        out << s.id << "," << lane.lane << "," << num(v.actual.d_length) << "," << num(v.actual.e_visibility) << ","
            << num(v.ideal.e_visibility) << "," << num(v.recognizability.ratio) << ","
            << (v.recognizability.recognizable ? 1 : 0) << "\n";
      }
    }
  }
}

void write_reports(const std::filesystem::path& dir, const EvaluationResult& result, bool export_field) {
  std::filesystem::create_directories(dir);
  auto open = [&](const char* name) {
    std::ofstream f(dir / name);
    if (!f) throw Error(ErrorKind::Io, "cannot write '" + (dir / name).string() + "'");
    return f;
  };
  {
    auto f = open("report.txt");
    write_text_report(f, result);
  }
  {
    auto f = open("report.json");
    f << json_report(result);
  }
  if (export_field) {
    auto f = open("field.csv");
    write_field_csv(f, result);
  }
}

}  // namespace signsight::io
