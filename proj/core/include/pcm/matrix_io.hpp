#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "pcm/matrix.hpp"

namespace pcm {

// Text format:
//
//   4
//   1    8    1  5
//   1/8  1    3  7
//   1    1/3  1  9
//   1/5  1/7  1/9 1
//
// The first non-blank line holds n, followed by n rows of n entries. Entries
// are decimals or fractions `p/q`. Blank lines and lines starting with '#'
// are ignored. Reciprocity is checked at kParsedReciprocityTolerance.

[[nodiscard]] PairwiseComparisonMatrix parse_matrix(std::string_view text);
[[nodiscard]] PairwiseComparisonMatrix read_matrix_file(
    const std::filesystem::path& path);

/// Renders an entry as `k` or `1/k` when it is exactly an integer or the
/// reciprocal of one, otherwise with 17 significant digits. Parsing the
/// result yields the same double.
[[nodiscard]] std::string format_entry(double value);
[[nodiscard]] std::string format_matrix(const PairwiseComparisonMatrix& a);
void write_matrix_file(const std::filesystem::path& path,
                       const PairwiseComparisonMatrix& a);

}  // namespace pcm
