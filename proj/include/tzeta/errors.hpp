#pragma once

#include <stdexcept>
#include <string>

namespace tzeta {

/// Broad failure classes. The command line tool maps these onto exit codes,
/// so a new error type only needs to pick the right category.
enum class ErrorCategory { Domain, Convergence, Internal };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

#define TZETA_DEFINE_ERROR(Name, Category)                               \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(Category, what) {}    \
  };

// Argument sits on a pole of the function being evaluated.
TZETA_DEFINE_ERROR(PoleError, ErrorCategory::Domain)
TZETA_DEFINE_ERROR(RangeError, ErrorCategory::Domain)
TZETA_DEFINE_ERROR(DomainError, ErrorCategory::Domain)
TZETA_DEFINE_ERROR(ShapeError, ErrorCategory::Domain)
// An empty spectral sum was requested (a 1x1 torus has only the zero mode).
TZETA_DEFINE_ERROR(DegenerateError, ErrorCategory::Domain)
TZETA_DEFINE_ERROR(DescriptorError, ErrorCategory::Domain)
TZETA_DEFINE_ERROR(ZeroDenominatorError, ErrorCategory::Domain)
TZETA_DEFINE_ERROR(ConvergenceError, ErrorCategory::Convergence)
TZETA_DEFINE_ERROR(IllConditionedError, ErrorCategory::Convergence)
// Residual dropped into the rounding noise of the inputs; a slope fitted
// through such points would be meaningless.
TZETA_DEFINE_ERROR(SignalLostError, ErrorCategory::Convergence)

#undef TZETA_DEFINE_ERROR

}  // namespace tzeta
