#ifndef OSA_VERSION_HPP
#define OSA_VERSION_HPP

#define OSA_VERSION_MAJOR 0
#define OSA_VERSION_MINOR 1
#define OSA_VERSION_PATCH 0

namespace osa {
inline constexpr const char* kVersion = "0.1.0";
}

#endif  // OSA_VERSION_HPP
