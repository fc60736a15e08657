#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lightnn {

/// Raw decoded IDX image tensor (u8 pixels, row-major).
struct IdxImages {
    int count = 0;
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> pixels;  // count*rows*cols bytes
};

/// Decodes an IDX3 image file (big-endian magic 0x00000803). Throws
/// ParseError on wrong magic, truncation or trailing bytes.
IdxImages parse_idx_images(std::span<const std::uint8_t> bytes);

/// Decodes an IDX1 label file (magic 0x00000801). Labels above 9 are
/// rejected as BadValue.
std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> encode_idx_images(const IdxImages& images);
std::vector<std::uint8_t> encode_idx_labels(const std::vector<std::uint8_t>& labels);

} // namespace lightnn
