#pragma once

#include <stdexcept>
#include <string>

namespace mtb::cli {

/// Process exit codes.
enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kInternal = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File missing, unreadable, unwritable, or not in a supported format.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A self-check failed (for example the report did not match its schema).
struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mtb::cli
