#pragma once

#include <stdexcept>
#include <string>

namespace umps {

// Thrown when a computation would exceed a configured resource cap. The
// message names the offending size so callers can adjust the cap or the
// parameters.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace umps
