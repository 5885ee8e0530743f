#pragma once

#include <stdexcept>

namespace fcmj {

// Malformed input text: JSON documents, numeric literals, mode names.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structurally invalid instance (see validate() for the individual checks).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Schedule that violates a cycle limit or does not match the component set.
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace fcmj
