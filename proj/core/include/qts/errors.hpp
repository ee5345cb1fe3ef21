#pragma once

#include <stdexcept>
#include <string>

namespace qts {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape disagreement between operands.
struct dim_error : error {
  using error::error;
};

// Malformed external input: JSON documents, rational literals, CLI specs.
struct input_error : error {
  using error::error;
};

// Valid data outside the supported domain, e.g. irrational joint spectrum.
struct unsupported_error : error {
  using error::error;
};

// Operation invoked on data violating its mathematical precondition.
struct precondition_error : error {
  using error::error;
};

// A certified verdict was required but only a heuristic one is available.
struct uncertified_error : error {
  using error::error;
};

// A randomized search exhausted its budget; carries the trail of verdicts.
struct retry_exhausted : error {
  using error::error;
};

}  // namespace qts
