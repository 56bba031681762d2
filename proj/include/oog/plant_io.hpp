#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "oog/state_space.hpp"

namespace oog {

// Plant text format. Sections A, B, Cp, Dp, Cr, Dr in any order, each written
// as the section name, then "rows cols", then the entries row-major. Tokens
// are whitespace separated; '#' starts a comment running to the end of the
// line. Dp and Dr may be omitted and default to zero.
//
//   # first-order lag
//   A
//   1 1
//   -1
//   B
//   1 1
//   1
//   ...

/// Throws ParseError on malformed input or inconsistent dimensions.
[[nodiscard]] TwoOutputPlant read_plant(std::istream& in);
[[nodiscard]] TwoOutputPlant read_plant_file(const std::filesystem::path& path);

/// Entries are written with shortest round-trip formatting, so reading the
/// output back reproduces the plant bit for bit.
void write_plant(std::ostream& out, const TwoOutputPlant& plant);
void write_plant_file(const std::filesystem::path& path, const TwoOutputPlant& plant);

/// Shortest decimal string that parses back to exactly `value`.
[[nodiscard]] std::string format_double(double value);

}  // namespace oog
