#pragma once

#include <stdexcept>
#include <string>

namespace sgk {

// Error taxonomy mirrored by the CLI exit codes: reference/syntax problems,
// violated preconditions or structural invariants, and exceeded internal
// iteration bounds are distinguishable by type.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unknown names, malformed input, shape mismatches in user-supplied data.
struct reference_error : error {
  using error::error;
};

// A precondition or structural invariant of the kernel does not hold.
struct invariant_error : error {
  using error::error;
};

// An internal truncation bound was exceeded (safety valve; the mathematics
// guarantees termination, this guards against runaway inputs).
struct truncation_error : error {
  using error::error;
};

// A domain (box containment) check failed or could not be decided.
struct domain_error_fail : error {
  std::string witness;
  domain_error_fail(const std::string& msg, std::string w)
      : error(msg), witness(std::move(w)) {}
};

}  // namespace sgk
