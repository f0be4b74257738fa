#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dragondim {

enum class Errc {
  OutOfRange,
  CapacityExceeded,
  IndexOutOfRange,
  DomainError,
  Degenerate,
  AlreadyRational,
  IrrationalAngle,
  EmptySet,
  DepthTooShallow,
  InvalidArgument,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::CapacityExceeded: return "CapacityExceeded";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DomainError: return "DomainError";
    case Errc::Degenerate: return "Degenerate";
    case Errc::AlreadyRational: return "AlreadyRational";
    case Errc::IrrationalAngle: return "IrrationalAngle";
    case Errc::EmptySet: return "EmptySet";
    case Errc::DepthTooShallow: return "DepthTooShallow";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised when a requested depth exceeds a configured cap. When the failing
/// operation is a certified evaluation, the error bound reachable at the cap
/// is attached.
class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what,
                         std::optional<double> achieved_bound = std::nullopt)
      : Error(Errc::CapacityExceeded, what), achieved_bound_(achieved_bound) {}

  std::optional<double> achieved_bound() const noexcept { return achieved_bound_; }

 private:
  std::optional<double> achieved_bound_;
};

}  // namespace dragondim
