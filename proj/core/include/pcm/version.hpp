#pragma once

#include <string_view>

namespace pcm {

/// Library version as "major.minor.patch".
[[nodiscard]] std::string_view library_version() noexcept;

}  // namespace pcm
