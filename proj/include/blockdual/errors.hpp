#pragma once

#include <stdexcept>
#include <string>

namespace blockdual {

// Raised when an input violates a domain invariant (weight mismatch, wild
// ramification, ell = p, ...). The CLI maps this to exit code 1.
class validation_error : public std::runtime_error {
  public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace blockdual
