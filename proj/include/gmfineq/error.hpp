#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gmfineq {

enum class ErrorCode {
  InvalidPermutation,
  GroupTooLarge,
  NotCyclic,
  NotAHomomorphism,
  NotUnitModulus,
  DimensionMismatch,
  DegreeTooLarge,
  BlockCountMismatch,
  NotHermitian,
  NotPsd,
  NoConvergence,
  ResultTooLarge,
  NegativeEntry,
  BadLevels,
  BadArity,
  BadPartition,
  InvalidArgument,
  ResidueBreach,
  NegativeValue,
  ReproductionFailed,
  ParseError,
  UnknownId,
};

std::string_view to_string(ErrorCode code);

/// True for failures that signal numerical trouble rather than bad input.
bool is_numerical_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by validate_character; carries the element indices (into the
/// group's element list) of the first pair with chi(st) != chi(s)chi(t).
class HomomorphismError : public Error {
 public:
  HomomorphismError(std::size_t first, std::size_t second, const std::string& what)
      : Error(ErrorCode::NotAHomomorphism, what), first_(first), second_(second) {}

  std::size_t first() const noexcept { return first_; }
  std::size_t second() const noexcept { return second_; }

 private:
  std::size_t first_;
  std::size_t second_;
};

class ReproductionError : public Error {
 public:
  ReproductionError(std::string claim, double expected, double actual);

  const std::string& claim() const noexcept { return claim_; }
  double expected() const noexcept { return expected_; }
  double actual() const noexcept { return actual_; }

 private:
  std::string claim_;
  double expected_;
  double actual_;
};

}  // namespace gmfineq
