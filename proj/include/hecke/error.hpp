#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

enum class ErrorCode {
  NotSquarefree,
  NotPrime,
  NotSplit,
  SearchExhausted,
  ZeroModulus,
  NonPrimitive,
  UnitInconsistency,
  NotCoprime,
  EvenInput,
  OracleTooLarge,
  InvalidCase,
  UnsupportedCase,
  UnsupportedClassGroup,
  BudgetExceeded,
  DegeneratePhase,
  NoStationaryPoint,
  NonConvexPhase,
  HessianViolation,
  AbscissaTooSmall,
  InvalidArgument,
};

inline const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NotSquarefree: return "NotSquarefree";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotSplit: return "NotSplit";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::ZeroModulus: return "ZeroModulus";
    case ErrorCode::NonPrimitive: return "NonPrimitive";
    case ErrorCode::UnitInconsistency: return "UnitInconsistency";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::EvenInput: return "EvenInput";
    case ErrorCode::OracleTooLarge: return "OracleTooLarge";
    case ErrorCode::InvalidCase: return "InvalidCase";
    case ErrorCode::UnsupportedCase: return "UnsupportedCase";
    case ErrorCode::UnsupportedClassGroup: return "UnsupportedClassGroup";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::DegeneratePhase: return "DegeneratePhase";
    case ErrorCode::NoStationaryPoint: return "NoStationaryPoint";
    case ErrorCode::NonConvexPhase: return "NonConvexPhase";
    case ErrorCode::HessianViolation: return "HessianViolation";
    case ErrorCode::AbscissaTooSmall: return "AbscissaTooSmall";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hecke
