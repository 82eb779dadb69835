#pragma once

#include <stdexcept>
#include <string>

namespace tkl {

// Raised when a redundant internal cross-check fails (index-set closure,
// transform realness, disagreeing classifier routes). Always a bug in this
// library, never bad user input.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

}  // namespace tkl
