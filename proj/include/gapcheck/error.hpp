#pragma once

#include <stdexcept>
#include <string>

namespace gapcheck {

// All toolkit errors carry a stable code string so reports and the CLI can
// classify failures without parsing messages.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

private:
  std::string code_;
};

#define GAPCHECK_ERROR(NAME)                                      \
  class NAME : public Error {                                     \
  public:                                                         \
    explicit NAME(const std::string& what) : Error(#NAME, what) {} \
  }

GAPCHECK_ERROR(EmptyInterior);
GAPCHECK_ERROR(NonConvex);
GAPCHECK_ERROR(NoAdmissibleNodes);
GAPCHECK_ERROR(StencilEscape);
GAPCHECK_ERROR(SingularDrift);
GAPCHECK_ERROR(NoConvergence);
GAPCHECK_ERROR(PerronFailure);
GAPCHECK_ERROR(TailTooFat);
GAPCHECK_ERROR(LinearSolveFailure);
GAPCHECK_ERROR(PoleProximity);
GAPCHECK_ERROR(DegenerateExcited);
GAPCHECK_ERROR(NonConvexPotential);
GAPCHECK_ERROR(ConfigError);

#undef GAPCHECK_ERROR

}  // namespace gapcheck
