#pragma once

#include <string_view>

namespace balnum::cli {

inline constexpr std::string_view kToolVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

}  // namespace balnum::cli
