#pragma once

#include <stdexcept>

namespace elimdeg {

// Malformed input: bad files, unknown vertices, ill-formed sequences or models.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A search guard was exceeded; no partial answer is produced.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace elimdeg
