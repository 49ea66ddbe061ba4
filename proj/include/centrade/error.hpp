#pragma once

#include <stdexcept>
#include <string>

namespace centrade {

enum class Errc {
  InvalidOverlap,
  InvalidScaleSize,
  OverlapNotAllowed,
  ScaleMismatch,
  TooFewGroups,
  NormalizationError,
  ParseError,
  UnknownGrade,
  NonAdjacentBoundary,
  NegativeCount,
  DuplicateCell,
  UnsupportedShape,
  OverlappingRegions,
  EmptyGraph,
  InvalidArgument,
};

inline const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidOverlap: return "InvalidOverlap";
    case Errc::InvalidScaleSize: return "InvalidScaleSize";
    case Errc::OverlapNotAllowed: return "OverlapNotAllowed";
    case Errc::ScaleMismatch: return "ScaleMismatch";
    case Errc::TooFewGroups: return "TooFewGroups";
    case Errc::NormalizationError: return "NormalizationError";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownGrade: return "UnknownGrade";
    case Errc::NonAdjacentBoundary: return "NonAdjacentBoundary";
    case Errc::NegativeCount: return "NegativeCount";
    case Errc::DuplicateCell: return "DuplicateCell";
    case Errc::UnsupportedShape: return "UnsupportedShape";
    case Errc::OverlappingRegions: return "OverlappingRegions";
    case Errc::EmptyGraph: return "EmptyGraph";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Error";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace centrade
