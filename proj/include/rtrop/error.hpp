#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rtrop {

enum class ErrorCode {
  LengthMismatch,
  SingularBasis,
  NoRealization,
  NotPure,
  NotAFlat,
  IndexOutOfRange,
  DegenerateSupport,
  NotACircuit,
  NotMaximal,
  UnclassifiableFlag,
  PreconditionFailed,
  RouteDisagreement,
  UnrecognizedLocalPicture,
  EmptyBox,
  MalformedInput,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SingularBasis: return "SingularBasis";
    case ErrorCode::NoRealization: return "NoRealization";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::NotAFlat: return "NotAFlat";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DegenerateSupport: return "DegenerateSupport";
    case ErrorCode::NotACircuit: return "NotACircuit";
    case ErrorCode::NotMaximal: return "NotMaximal";
    case ErrorCode::UnclassifiableFlag: return "UnclassifiableFlag";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::RouteDisagreement: return "RouteDisagreement";
    case ErrorCode::UnrecognizedLocalPicture: return "UnrecognizedLocalPicture";
    case ErrorCode::EmptyBox: return "EmptyBox";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI can map it onto a machine-readable error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace rtrop
