#include "onion/error.hpp"

namespace onion {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FormatMismatch: return "FormatMismatch";
    case ErrorCode::ZeroState: return "ZeroState";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::BadCut: return "BadCut";
    case ErrorCode::NotBipartite: return "NotBipartite";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::WrongFormat: return "WrongFormat";
    case ErrorCode::InterpolationInconsistent: return "InterpolationInconsistent";
    case ErrorCode::AllLeadingZero: return "AllLeadingZero";
    case ErrorCode::UnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::NotInSection: return "NotInSection";
    case ErrorCode::NoCanonicalRepresentative: return "NoCanonicalRepresentative";
    case ErrorCode::FamilyMismatch: return "FamilyMismatch";
    case ErrorCode::EmptyEnsemble: return "EmptyEnsemble";
    case ErrorCode::InvalidEnsemble: return "InvalidEnsemble";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace onion
