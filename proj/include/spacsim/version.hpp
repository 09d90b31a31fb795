#pragma once

namespace spacsim {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace spacsim
