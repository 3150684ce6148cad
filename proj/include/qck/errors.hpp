#pragma once

#include <stdexcept>
#include <string>

namespace qck {

/// Base of every error the library raises. `kind()` is the stable name used
/// in CLI reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what) : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define QCK_DEFINE_ERROR(Name)                                           \
  class Name : public Error {                                            \
   public:                                                               \
    explicit Name(const std::string& what) : Error(#Name, what) {}       \
  };

QCK_DEFINE_ERROR(DomainError)
QCK_DEFINE_ERROR(NumericalBreakdown)
QCK_DEFINE_ERROR(DegenerateBasis)
QCK_DEFINE_ERROR(AdmissibilityError)
QCK_DEFINE_ERROR(ConformalDomainError)
QCK_DEFINE_ERROR(DegenerateMetric)
QCK_DEFINE_ERROR(NotKahler)
QCK_DEFINE_ERROR(NotB0)
QCK_DEFINE_ERROR(FrameError)
QCK_DEFINE_ERROR(NotSasakian)
QCK_DEFINE_ERROR(NotSpaceForm)
QCK_DEFINE_ERROR(TypeConstraintError)
QCK_DEFINE_ERROR(ChartError)
QCK_DEFINE_ERROR(ConfigError)

#undef QCK_DEFINE_ERROR

}  // namespace qck
