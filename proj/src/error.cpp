#include "bandpredict/error.hpp"
#include "bandpredict/precision.hpp"

#include <string>

namespace bandpredict {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::domain: return "domain";
    case ErrorKind::sizing: return "sizing";
    case ErrorKind::degenerate_band: return "degenerate-band";
    case ErrorKind::contract: return "contract";
    case ErrorKind::saturation: return "saturation";
    case ErrorKind::causality: return "causality";
    case ErrorKind::insufficient_data: return "insufficient-data";
    case ErrorKind::alignment: return "alignment";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

std::string_view to_string(Precision p) noexcept {
  return p == Precision::standard ? RealTraits<double>::name : RealTraits<Extended>::name;
}

Precision parse_precision(std::string_view text) {
  if (text == "double" || text == "standard") return Precision::standard;
  if (text == "extended") return Precision::extended;
  fail(ErrorKind::parameter, "unknown precision '" + std::string(text) + "' (expected double|extended)");
}

}  // namespace bandpredict
