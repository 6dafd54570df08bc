#ifndef MVKIT_ERROR_HPP
#define MVKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mvkit {

/// Every failure the library can signal. Usage errors (bad shapes, unknown
/// names, elements outside their algebra) are distinct from verification
/// failures, which mean a checked mathematical property did not hold.
enum class ErrorKind {
  InvalidUnit,
  EmptyProduct,
  UnsupportedQuotient,
  ElementNotInAlgebra,
  UnboundVariable,
  InfiniteCarrierExhaustive,
  ShapeMismatch,
  NotGammaAlgebra,
  InvalidIdeal,
  UnsupportedShape,
  CarrierTooLarge,
  NotPerfect,
  NotLocal,
  NotStrictlyOrdered,
  OutOfUnitInterval,
  BaseNotSupported,
  VerificationFailed,
  SyntaxError,
  UnknownName,
  ArityError,
};

inline const char *error_kind_name(ErrorKind k) {
  switch (k) {
  case ErrorKind::InvalidUnit: return "InvalidUnit";
  case ErrorKind::EmptyProduct: return "EmptyProduct";
  case ErrorKind::UnsupportedQuotient: return "UnsupportedQuotient";
  case ErrorKind::ElementNotInAlgebra: return "ElementNotInAlgebra";
  case ErrorKind::UnboundVariable: return "UnboundVariable";
  case ErrorKind::InfiniteCarrierExhaustive: return "InfiniteCarrierExhaustive";
  case ErrorKind::ShapeMismatch: return "ShapeMismatch";
  case ErrorKind::NotGammaAlgebra: return "NotGammaAlgebra";
  case ErrorKind::InvalidIdeal: return "InvalidIdeal";
  case ErrorKind::UnsupportedShape: return "UnsupportedShape";
  case ErrorKind::CarrierTooLarge: return "CarrierTooLarge";
  case ErrorKind::NotPerfect: return "NotPerfect";
  case ErrorKind::NotLocal: return "NotLocal";
  case ErrorKind::NotStrictlyOrdered: return "NotStrictlyOrdered";
  case ErrorKind::OutOfUnitInterval: return "OutOfUnitInterval";
  case ErrorKind::BaseNotSupported: return "BaseNotSupported";
  case ErrorKind::VerificationFailed: return "VerificationFailed";
  case ErrorKind::SyntaxError: return "SyntaxError";
  case ErrorKind::UnknownName: return "UnknownName";
  case ErrorKind::ArityError: return "ArityError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind k, const std::string &msg) {
  throw Error(k, msg);
}

} // namespace mvkit

#endif
