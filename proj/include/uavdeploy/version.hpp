#ifndef UAVDEPLOY_VERSION_HPP
#define UAVDEPLOY_VERSION_HPP

namespace uavdeploy {

inline constexpr const char* kToolName = "uavdeploy";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace uavdeploy

#endif
