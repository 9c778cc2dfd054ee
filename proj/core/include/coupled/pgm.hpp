#pragma once

#include "coupled/linalg.hpp"

#include <filesystem>
#include <iosfwd>

namespace coupled::pgm {

/// Reads a binary (P5) graymap with maxval <= 255 into a rows x cols matrix
/// of intensities in [0, 255]. ASCII (P2), color (P3/P6) and 16-bit files
/// are rejected with FormatError.
[[nodiscard]] Matrix read(std::istream& is);
[[nodiscard]] Matrix load(const std::filesystem::path& path);

/// Writes P5 with maxval 255; entries are rounded and clamped to [0, 255].
void write(std::ostream& os, MatrixCRef image);
void save(const std::filesystem::path& path, MatrixCRef image);

}  // namespace coupled::pgm
