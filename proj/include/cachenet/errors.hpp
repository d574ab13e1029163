#pragma once

#include <stdexcept>
#include <string>

namespace cachenet {

// Thrown when an iterative evaluation fails to converge or produces a
// non-finite value. Domain violations use std::domain_error instead.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace cachenet
