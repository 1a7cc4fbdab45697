#pragma once

#include <stdexcept>

namespace tlink {

// Raised for malformed input files, invalid configuration and broken
// invariants. The message names the offending field, row or id.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace tlink
