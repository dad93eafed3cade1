#pragma once

#include <string>

#include "holo/types.hpp"

namespace holo {

// Portable graymap I/O. Import accepts binary (P5) and ASCII (P2) maps with
// 8- or 16-bit samples and maps values linearly onto [0,1]. Export clamps to
// [0,1] and writes binary P5 (16-bit big-endian samples by default, per the
// PGM spec).
ImageGrid read_pgm(const std::string& path);
void write_pgm(const std::string& path, const ImageGrid& img, int bits = 16);

// Log-scaled intensity preview with the zero frequency shifted to the
// center, for visual inspection of detector data.
ImageGrid log_view_centered(const ImageGrid& intensity);

}  // namespace holo
