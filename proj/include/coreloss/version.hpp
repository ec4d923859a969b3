#pragma once

namespace coreloss {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Bump when the on-disk layout of model files or split sidecars changes.
inline constexpr int kModelFormatVersion = 1;
inline constexpr int kSplitFormatVersion = 1;

}  // namespace coreloss
