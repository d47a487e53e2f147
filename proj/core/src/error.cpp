#include "pencillab/error.hpp"

namespace pencillab {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidProfile: return "InvalidProfile";
    case ErrorCode::RiemannHurwitzViolation: return "RiemannHurwitzViolation";
    case ErrorCode::FormulationMismatch: return "FormulationMismatch";
    case ErrorCode::ProfileInfeasible: return "ProfileInfeasible";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::DegeneratePencil: return "DegeneratePencil";
    case ErrorCode::BasePointPresent: return "BasePointPresent";
    case ErrorCode::CharacteristicObstruction: return "CharacteristicObstruction";
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::ChainMismatch: return "ChainMismatch";
    case ErrorCode::PointCollision: return "PointCollision";
    case ErrorCode::ZeroCount: return "ZeroCount";
    case ErrorCode::EmptyVariety: return "EmptyVariety";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace pencillab
