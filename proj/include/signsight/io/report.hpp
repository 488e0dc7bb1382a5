#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "signsight/pipeline.hpp"

namespace signsight::io {

/// Human-readable report: per sign and lane, one line per viewpoint with the
/// arc position, E^visibility, E^visibilityI, CognitiveDouble and the bit,
/// then maxCognitiveDistance, minCognitiveDistance and the timely verdict.
void write_text_report(std::ostream& out, const EvaluationResult& result);

/// Structured report: {"signs": [...]} with one object per sign and nested
/// lane arrays. Stable key names; doubles printed round-trip.
std::string json_report(const EvaluationResult& result);

/// CSV rows "sign,lane,arc_position,e_visibility,e_visibility_ideal,cognitive_double,recognizable".
void write_field_csv(std::ostream& out, const EvaluationResult& result);

/// Writes report.txt, report.json and, when asked, field.csv into `dir`.
void write_reports(const std::filesystem::path& dir, const EvaluationResult& result, bool export_field);

}  // namespace signsight::io
