#pragma once

#include <stdexcept>
#include <string>

namespace confgas {

enum class ErrorKind {
  Domain,
  Accuracy,
  Geometry,
  Model,
  NoBracket,
  NonMonotone,
  Singularity,
  Resource,
  Convergence,
  Truncation,
};

const char* to_string(ErrorKind kind);

/// Base class for every error raised by the library. The kind is carried
/// separately so the CLI can map failures to exit codes without RTTI.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define CONFGAS_DEFINE_ERROR(Name, Kind)                                \
  class Name : public Error {                                           \
   public:                                                              \
    explicit Name(const std::string& what) : Error(ErrorKind::Kind, what) {} \
  };

CONFGAS_DEFINE_ERROR(DomainError, Domain)
CONFGAS_DEFINE_ERROR(GeometryError, Geometry)
CONFGAS_DEFINE_ERROR(ModelError, Model)
CONFGAS_DEFINE_ERROR(NoBracketError, NoBracket)
CONFGAS_DEFINE_ERROR(NonMonotoneError, NonMonotone)
CONFGAS_DEFINE_ERROR(SingularityError, Singularity)
CONFGAS_DEFINE_ERROR(ResourceError, Resource)
CONFGAS_DEFINE_ERROR(ConvergenceError, Convergence)
CONFGAS_DEFINE_ERROR(TruncationError, Truncation)

#undef CONFGAS_DEFINE_ERROR

/// Raised when a requested accuracy cannot be certified; carries the bound
/// that was actually achieved.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double achieved_bound)
      : Error(ErrorKind::Accuracy, what), achieved_bound_(achieved_bound) {}
  double achieved_bound() const noexcept { return achieved_bound_; }

 private:
  double achieved_bound_;
};

}  // namespace confgas
