// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace sqdaa {

enum class ErrorCode {
  InvalidArgument,
  ParseError,
  DimensionMismatch,
  NumericError,
  IoError,
  RuntimeError,
};

/// Exception carrying a coarse error category, mapped 1:1 onto the C API
/// status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace detail

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) detail::fail(code, what);
}

}  // namespace sqdaa
