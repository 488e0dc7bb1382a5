#include "signsight/params.hpp"

#include <cmath>
#include <string>

#include "signsight/errors.hpp"
#include "signsight/units.hpp"

namespace signsight {
namespace {

struct Field {
  const char* key;
  double ModelParams::*member;
  Dimension dim;
};

constexpr Field kFields[] = {
    {"alpha", &ModelParams::alpha, Dimension::Scalar},
    {"beta", &ModelParams::beta, Dimension::Scalar},
    {"lambda", &ModelParams::lambda, Dimension::Scalar},
    {"eta", &ModelParams::eta, Dimension::Scalar},
    {"gamma", &ModelParams::gamma, Dimension::Scalar},
    {"delta", &ModelParams::delta, Dimension::Scalar},
    {"sigma", &ModelParams::sigma, Dimension::Scalar},
    {"standard_distance", &ModelParams::standard_distance, Dimension::Length},
    {"retina_distance", &ModelParams::retina_distance, Dimension::Length},
    {"alpha_radius", &ModelParams::alpha_radius, Dimension::Length},
    {"eye_height", &ModelParams::eye_height, Dimension::Length},
    {"lane_width", &ModelParams::lane_width, Dimension::Length},
    {"shoulder_width", &ModelParams::shoulder_width, Dimension::Length},
    {"mount_height", &ModelParams::mount_height, Dimension::Length},
    {"overhead_height", &ModelParams::overhead_height, Dimension::Length},
    {"depression", &ModelParams::depression, Dimension::Angle},
    {"pass_angle", &ModelParams::pass_angle, Dimension::Angle},
    {"v85", &ModelParams::v85, Dimension::Speed},
    {"design_speed", &ModelParams::design_speed, Dimension::Speed},
    {"reaction_time", &ModelParams::reaction_time, Dimension::Time},
    {"viewpoint_interval", &ModelParams::viewpoint_interval, Dimension::Length},
    {"band_width", &ModelParams::band_width, Dimension::Length},
    {"band_low", &ModelParams::band_low, Dimension::Length},
    {"band_high", &ModelParams::band_high, Dimension::Length},
    {"marking_half_height", &ModelParams::marking_half_height, Dimension::Length},
    {"marking_margin", &ModelParams::marking_margin, Dimension::Length},
    {"solid_threshold", &ModelParams::solid_threshold, Dimension::Length},
    {"slice_thickness", &ModelParams::slice_thickness, Dimension::Length},
    {"panel_exclusion", &ModelParams::panel_exclusion, Dimension::Length},
};

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorKind::Validation, what); }

}  // namespace

void ModelParams::validate() const {
  for (const Field& f : kFields) {
    if (!std::isfinite(this->*f.member)) fail(std::string(f.key) + " must be finite");
  }
  if (std::abs(alpha + beta - 1.0) > 1e-9) fail("alpha + beta must equal 1");
  if (alpha < 0 || beta < 0) fail("alpha and beta must be non-negative");
  if (std::abs(gamma + delta - 1.0) > 1e-9) fail("gamma + delta must equal 1");
  if (gamma < 0 || delta < 0) fail("gamma and delta must be non-negative");
  if (lambda < 6.0) fail("lambda must be >= 6");
  if (!(eta > 0)) fail("eta must be > 0");
  if (!(sigma > 0 && sigma < 1)) fail("sigma must lie in (0, 1)");
  if (!(standard_distance > 0 && standard_distance <= 3.0)) fail("standard_distance must lie in (0, 3] m");
  const double lengths[] = {retina_distance, alpha_radius, lane_width,   mount_height,     overhead_height,
                            band_width,      solid_threshold, slice_thickness, viewpoint_interval,
                            marking_margin + marking_half_height};
  for (double v : lengths) {
    if (!(v > 0)) fail("all lengths must be > 0");
  }
  if (eye_height < 0 || shoulder_width < 0 || panel_exclusion < 0) fail("heights and widths must be >= 0");
  if (!(band_high > band_low)) fail("band_high must exceed band_low");
  if (!(v85 > 0) || !(design_speed > 0)) fail("speeds must be > 0");
  if (!(reaction_time > 0)) fail("reaction_time must be > 0");
}

void ModelParams::set(std::string_view key, std::string_view value) {
  if (key == "run_length") {
    if (value == "segments") {
      run_length = RunLength::Segments;
    } else if (value == "half_segment_ends") {
      run_length = RunLength::HalfSegmentEnds;
    } else {
      fail("run_length must be 'segments' or 'half_segment_ends'");
    }
    return;
  }
  for (const Field& f : kFields) {
    if (key == f.key) {
      this->*f.member = parse_quantity(value, f.dim);
      return;
    }
  }
  fail("unknown parameter '" + std::string(key) + "'");
}

const std::vector<std::string>& ModelParams::keys() {
  static const std::vector<std::string> k = [] {
    std::vector<std::string> out;
    for (const Field& f : kFields) out.emplace_back(f.key);
    out.emplace_back("run_length");
    return out;
  }();
  return k;
}

}  // namespace signsight
