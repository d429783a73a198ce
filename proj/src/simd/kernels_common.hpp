#pragma once

#include <cstddef>

namespace spinlab::simd::detail {

// Rotation recurrences are reset to exact sin/cos at multiples of this step.
inline constexpr std::size_t kResyncPeriod = 256;

}  // namespace spinlab::simd::detail
