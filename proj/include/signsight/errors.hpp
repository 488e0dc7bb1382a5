#pragma once

#include <stdexcept>
#include <string>

namespace signsight {

enum class ErrorKind {
  DegeneratePolygon,
  BehindPupil,
  NoIntersection,
  DegeneratePanel,
  DegenerateHeading,
  FallbackRequired,
  DegenerateStep,
  DegenerateCrossSection,
  SignBoundary,
  UnknownSignType,
  Validation,
  Io,
  Parse,
};

const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so callers can branch
/// on the category without parsing messages.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegeneratePolygon: return "DegeneratePolygon";
    case ErrorKind::BehindPupil: return "BehindPupil";
    case ErrorKind::NoIntersection: return "NoIntersection";
    case ErrorKind::DegeneratePanel: return "DegeneratePanel";
    case ErrorKind::DegenerateHeading: return "DegenerateHeading";
    case ErrorKind::FallbackRequired: return "FallbackRequired";
    case ErrorKind::DegenerateStep: return "DegenerateStep";
    case ErrorKind::DegenerateCrossSection: return "DegenerateCrossSection";
    case ErrorKind::SignBoundary: return "SignBoundaryError";
    case ErrorKind::UnknownSignType: return "UnknownSignType";
    case ErrorKind::Validation: return "ValidationError";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::Parse: return "ParseError";
  }
  return "Error";
}

}  // namespace signsight
