#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace splicemult {

enum class ErrorKind {
  ParseError,
  NotATree,
  NotNegativeDefinite,
  BadWeight,
  TooSmall,
  NotMinimal,
  UnknownVertex,
  NotAnEdge,
  NotAnEnd,
  IndexMismatch,
  GraphMismatch,
  SingularMatrix,
  RankDeficient,
  NotSymmetric,
  CapExceeded,
  EmptySet,
  MonomialConditionFails,
  MaxBlowupsExceeded,
  NonIntegerMultiplicity,
  InternalInconsistency,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so the
// command-line front end can map it onto an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace splicemult
