#pragma once

#include <string_view>

namespace signsight {

enum class Dimension { Scalar, Length, Speed, Time, Angle };

constexpr double kMetersPerSecondPerMph = 0.44704;
constexpr double kMetersPerSecondPerKmh = 1.0 / 3.6;

inline double mph(double v) { return v * kMetersPerSecondPerMph; }
inline double to_mph(double mps) { return mps / kMetersPerSecondPerMph; }

/// Parses "<number> [unit]" into SI. A bare number is taken as SI, except
/// for angles where it means degrees. Throws Error(Parse) on malformed
/// input and Error(Validation) on a unit of the wrong dimension.
double parse_quantity(std::string_view text, Dimension dim);

}  // namespace signsight
