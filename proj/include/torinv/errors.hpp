#pragma once

#include <stdexcept>
#include <string>

namespace torinv {

/// An internal certificate (exactness, flasqueness, order identity) failed.
/// Signals a bug, never a property of the input.
class CertificationError : public std::runtime_error {
public:
  explicit CertificationError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace torinv
