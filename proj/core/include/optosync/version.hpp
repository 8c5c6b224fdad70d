#pragma once

namespace optosync {

inline constexpr const char* kVersion = "0.1.0";

}
