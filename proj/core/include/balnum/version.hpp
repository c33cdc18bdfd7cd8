#pragma once

#define BALNUM_VERSION_MAJOR 1
#define BALNUM_VERSION_MINOR 0
#define BALNUM_VERSION_PATCH 0

namespace balnum {

inline constexpr const char* version_string = "1.0.0";

}  // namespace balnum
