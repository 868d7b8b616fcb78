#pragma once

#include <stdexcept>
#include <string>

namespace gch {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad arguments, bad configs, violated preconditions.
struct invalid_input : error {
  using error::error;
};

// A computation produced non-finite values (blow-up mid-step and the like).
struct overflow_detected : error {
  using error::error;
};

// File and stream problems: unreadable snapshots, unwritable outputs.
struct io_failure : error {
  using error::error;
};

}  // namespace gch
