#include "gmfineq/error.hpp"

#include <sstream>

namespace gmfineq {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::GroupTooLarge: return "GroupTooLarge";
    case ErrorCode::NotCyclic: return "NotCyclic";
    case ErrorCode::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorCode::NotUnitModulus: return "NotUnitModulus";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::BlockCountMismatch: return "BlockCountMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotPsd: return "NotPsd";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ResultTooLarge: return "ResultTooLarge";
    case ErrorCode::NegativeEntry: return "NegativeEntry";
    case ErrorCode::BadLevels: return "BadLevels";
    case ErrorCode::BadArity: return "BadArity";
    case ErrorCode::BadPartition: return "BadPartition";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ResidueBreach: return "ResidueBreach";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::ReproductionFailed: return "ReproductionFailed";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownId: return "UnknownId";
  }
  return "Unknown";
}

bool is_numerical_failure(ErrorCode code) {
  return code == ErrorCode::NoConvergence || code == ErrorCode::ResidueBreach ||
         code == ErrorCode::NegativeValue;
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

namespace {

std::string describe(const std::string& claim, double expected, double actual) {
  std::ostringstream os;
  os.precision(17);
  os << claim << " (expected " << expected << ", got " << actual << ")";
  return os.str();
}

}  // namespace

ReproductionError::ReproductionError(std::string claim, double expected, double actual)
    : Error(ErrorCode::ReproductionFailed, describe(claim, expected, actual)),
      claim_(std::move(claim)),
      expected_(expected),
      actual_(actual) {}

}  // namespace gmfineq
