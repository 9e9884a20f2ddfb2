#pragma once

#include <array>
#include <string_view>

namespace pcm {

/// Judgment scale used for random matrices and for random index tables.
enum class Scale { discrete, continuous };

[[nodiscard]] std::string_view to_string(Scale scale) noexcept;
/// Accepts "discrete" or "continuous"; throws ValidationError otherwise.
[[nodiscard]] Scale parse_scale(std::string_view text);

/// Saaty's 17-value scale in increasing order.
inline constexpr std::array<double, 17> kSaatyScale = {
    1.0 / 9, 1.0 / 8, 1.0 / 7, 1.0 / 6, 1.0 / 5, 1.0 / 4, 1.0 / 3, 1.0 / 2, 1.0,
    2.0,     3.0,     4.0,     5.0,     6.0,     7.0,     8.0,     9.0};

}  // namespace pcm
