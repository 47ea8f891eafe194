#pragma once

#include <stdexcept>
#include <string>

namespace msmono {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point query landed on the jump set, where the field is two-valued.
class OnJumpSet : public Error {
 public:
  using Error::Error;
};

// A gradient query at the crack tip.
class AtSingularPoint : public Error {
 public:
  using Error::Error;
};

// Successive panel refinements kept disagreeing beyond the tolerance.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

// A circle touches the jump set without crossing it transversally.
class TangentialContact : public Error {
 public:
  using Error::Error;
};

class JumpOnCircle : public Error {
 public:
  using Error::Error;
};

class JumpInsideArc : public Error {
 public:
  using Error::Error;
};

class WrongCrossingCount : public Error {
 public:
  using Error::Error;
};

class ArcTooLong : public Error {
 public:
  using Error::Error;
};

// Grid resolution too coarse for the Lipschitz slack to clear the margin.
class CertificationInconclusive : public Error {
 public:
  using Error::Error;
};

// Malformed model / trace / run configuration. `field` names the offending key.
class SchemaError : public Error {
 public:
  SchemaError(std::string field, const std::string& what)
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace msmono
