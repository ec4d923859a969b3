#pragma once

#include <stdexcept>
#include <string>

namespace coreloss {

// Error taxonomy mirrors the CLI exit codes: usage 1, data 2, numeric 3.

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: CSV schema violations, vocabulary
/// mismatches, version/checksum failures, shape mismatches.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure: divergent training, rank-deficient fits, non-finite
/// intermediates.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace coreloss
