// SPDX-FileCopyrightText: Copyright (c) 2026 The rwgf authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

namespace rwgf {

inline constexpr std::string_view kVersion = "0.1.0";

}  // namespace rwgf
