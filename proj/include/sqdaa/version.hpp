// Copyright (c) 2026 The sqdaa project contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace sqdaa {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace sqdaa
