#pragma once

#include <cstdint>
#include <string>

#include "pencillab/error.hpp"

namespace pencillab::checked {

inline constexpr std::int64_t kInputLimit = std::int64_t{1} << 31;

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::InvalidArgument, "integer overflow");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) fail(ErrorCode::InvalidArgument, "integer overflow");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::InvalidArgument, "integer overflow");
  return r;
}

/// Rejects inputs whose magnitude reaches 2^31.
inline std::int64_t bounded(std::int64_t v, const char* name) {
  if (v >= kInputLimit || v <= -kInputLimit)
    fail(ErrorCode::InvalidArgument, std::string(name) + " exceeds 2^31 in magnitude");
  return v;
}

}  // namespace pencillab::checked
