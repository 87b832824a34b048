#pragma once

namespace autofb {

inline constexpr const char* kToolName = "autofb";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace autofb
