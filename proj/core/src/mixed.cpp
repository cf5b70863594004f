#include "onion/mixed.hpp"

namespace onion {

std::string to_string(LadderClass c) {
  switch (c) {
    case LadderClass::GHZ: return "GHZ-class";
    case LadderClass::W: return "W-class";
    case LadderClass::Biseparable: return "biseparable-class";
    case LadderClass::Separable: return "separable-class";
  }
  return "unknown";
}

LadderClass ladder_of(ClassName pure) {
  switch (pure) {
    case ClassName::GHZ: return LadderClass::GHZ;
    case ClassName::W: return LadderClass::W;
    case ClassName::B1:
    case ClassName::B2:
    case ClassName::B3: return LadderClass::Biseparable;
    case ClassName::S: return LadderClass::Separable;
    default: throw Error(ErrorCode::UnsupportedFormat, "no ladder class for this label");
  }
}

}  // namespace onion
