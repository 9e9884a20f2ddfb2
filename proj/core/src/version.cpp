#include "pcm/version.hpp"

namespace pcm {

std::string_view library_version() noexcept { return PCM_VERSION_STRING; }

}  // namespace pcm
