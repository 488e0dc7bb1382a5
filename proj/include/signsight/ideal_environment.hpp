#pragma once

#include <optional>

#include "signsight/scene.hpp"
#include "signsight/visibility.hpp"

namespace signsight {

/// The sign mounted by the book on a straight road: right outline along the
/// y axis through the origin, traffic approaching from +y toward -y.
struct IdealScene {
  SignInstance sign;         ///< canonical panel posed at the ideal center and normal
  double gfov = 0;           ///< V^fI, radians
  double design_speed = 0;   ///< m/s
};

/// [cos(dep) sin(pass), cos(dep) cos(pass), sin(dep)]
Point3 ideal_normal(double depression, double pass_angle);

/// Right-side signs stand at (shoulder, 0, mount height); overhead signs at
/// (-d_sign, 0, overhead height), where d_sign is required.
IdealScene build_ideal_scene(const SignLibraryEntry& entry, const ModelParams& params, SignSide side,
                             std::optional<double> d_sign = std::nullopt);

/// (-d_width, d_length, eye height)
Point3 corresponding_viewpoint(const VisibilityRecord& record, const ModelParams& params);

struct IdealVisibility {
  double e_geo = 0;
  double e_sight = 0;
  double e_visibility = 0;
  double sight_angle = 0;
};

/// E^geoI * E^sightI, with the sight direction along -y.
IdealVisibility ideal_visibility(const IdealScene& scene, const Point3& viewpoint, const SignLibraryEntry& entry,
                                 const ModelParams& params);

}  // namespace signsight
