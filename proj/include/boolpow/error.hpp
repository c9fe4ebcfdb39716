// Error codes shared by every module.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace boolpow {

enum class Errc {
  ArityMismatch,
  OutOfRange,
  DegenerateCarrier,
  SearchBudgetExceeded,
  SizeBudgetExceeded,
  NoMalcevTerm,
  ContextMismatch,
  EmptyInput,
  NotGood,
  TypeMismatch,
  OverlappingDomains,
  NotBijective,
  NotRepresentable,
  EmptyOrFull,
  FilterViolation,
  EmptyRestriction,
  NotAutomorphism,
  IdempotentMismatch,
  PointMismatch,
  PointNotFixed,
  NotExtendable,
  TailLabelViolation,
  IllegalTriple,
  NotSinglePoint,
  NotStabilizing,
  OrbitCollision,
  NotEmbedding,
  SourceMismatch,
  ArityOrder,
  ExtensionFailure,
  NotIdempotentOnSk,
  PatternMismatch,
  NotLoopOrRing,
  PreconditionNotGood,
  TypeWitnessFailure,
  EmptyGeneratorSet,
  ParseError,
  VerificationFailure,
  InvalidArgument,
  NoPoints,
};

std::string_view errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace boolpow
