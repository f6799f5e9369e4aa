#pragma once

namespace cqed {

inline constexpr const char* engine_version = "0.1.0";

} // namespace cqed
