#pragma once

namespace anderson {

inline constexpr const char* kVersionTag = "anderson_pairs 0.1.0";

}  // namespace anderson
