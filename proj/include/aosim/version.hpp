// Copyright (c) 2026 the aosim authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace aosim {
inline constexpr const char* kVersion = "aosim 0.1.0";
}
