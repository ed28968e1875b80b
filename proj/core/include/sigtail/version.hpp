#pragma once

#define SIGTAIL_VERSION_MAJOR 0
#define SIGTAIL_VERSION_MINOR 1
#define SIGTAIL_VERSION_PATCH 0
#define SIGTAIL_VERSION_STRING "0.1.0"

namespace sigtail {
inline const char* version() { return SIGTAIL_VERSION_STRING; }
}
