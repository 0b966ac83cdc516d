#pragma once

namespace flagtype {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace flagtype
