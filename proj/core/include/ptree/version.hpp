#pragma once

namespace ptree {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ptree
