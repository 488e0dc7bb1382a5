#include "signsight/units.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "signsight/errors.hpp"
#include "signsight/geometry.hpp"

namespace signsight {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Unit {
  std::string_view name;
  Dimension dim;
  double factor;
};

constexpr Unit kUnits[] = {
    {"m", Dimension::Length, 1.0},
    {"mm", Dimension::Length, 1e-3},
    {"cm", Dimension::Length, 1e-2},
    {"km", Dimension::Length, 1e3},
    {"m/s", Dimension::Speed, 1.0},
    {"mps", Dimension::Speed, 1.0},
    {"km/h", Dimension::Speed, kMetersPerSecondPerKmh},
    {"kmh", Dimension::Speed, kMetersPerSecondPerKmh},
    {"kph", Dimension::Speed, kMetersPerSecondPerKmh},
    {"mph", Dimension::Speed, kMetersPerSecondPerMph},
    {"s", Dimension::Time, 1.0},
    {"ms", Dimension::Time, 1e-3},
    {"deg", Dimension::Angle, kPi / 180.0},
    {"rad", Dimension::Angle, 1.0},
};

}  // namespace

double parse_quantity(std::string_view text, Dimension dim) {
  const std::string t(trim(text));
  char* end = nullptr;
  const double value = std::strtod(t.c_str(), &end);
  if (t.empty() || end == t.c_str()) {
    throw Error(ErrorKind::Parse, "cannot parse quantity '" + std::string(text) + "'");
  }
  const std::string_view unit = trim(std::string_view(end));
  if (unit.empty()) {
    return dim == Dimension::Angle ? deg_to_rad(value) : value;
  }
  for (const Unit& u : kUnits) {
    if (u.name != unit) continue;
    if (u.dim != dim) {
      throw Error(ErrorKind::Validation, "unit '" + std::string(unit) + "' has the wrong dimension in '" +
                                             std::string(text) + "'");
    }
    return value * u.factor;
  }
  throw Error(ErrorKind::Validation, "unknown unit '" + std::string(unit) + "'");
}

}  // namespace signsight
