#include "lightnn/idx.hpp"

#include <cstring>

#include "lightnn/errors.hpp"

namespace lightnn {

namespace {

constexpr std::uint32_t kImagesMagic = 0x00000803;
constexpr std::uint32_t kLabelsMagic = 0x00000801;

std::uint32_t read_be32(std::span<const std::uint8_t> bytes, std::size_t offset) {
    if (offset + 4 > bytes.size())
        throw ParseError(ParseError::Code::Truncated, "IDX stream truncated in header");
    return (static_cast<std::uint32_t>(bytes[offset]) << 24) |
           (static_cast<std::uint32_t>(bytes[offset + 1]) << 16) |
           (static_cast<std::uint32_t>(bytes[offset + 2]) << 8) |
           static_cast<std::uint32_t>(bytes[offset + 3]);
}

void write_be32(std::vector<std::uint8_t>& out, std::uint32_t value) {
    out.push_back(static_cast<std::uint8_t>(value >> 24));
    out.push_back(static_cast<std::uint8_t>(value >> 16));
    out.push_back(static_cast<std::uint8_t>(value >> 8));
    out.push_back(static_cast<std::uint8_t>(value));
}

} // namespace

IdxImages parse_idx_images(std::span<const std::uint8_t> bytes) {
    const std::uint32_t magic = read_be32(bytes, 0);
    if (magic != kImagesMagic)
        throw ParseError(ParseError::Code::BadMagic,
                         "expected IDX image magic 0x00000803, got 0x" + std::to_string(magic));
    IdxImages images;
    images.count = static_cast<int>(read_be32(bytes, 4));
    images.rows = static_cast<int>(read_be32(bytes, 8));
    images.cols = static_cast<int>(read_be32(bytes, 12));
    const std::size_t payload =
        static_cast<std::size_t>(images.count) * images.rows * images.cols;
    if (bytes.size() < 16 + payload)
        throw ParseError(ParseError::Code::Truncated, "IDX image stream truncated in payload");
    if (bytes.size() > 16 + payload)
        throw ParseError(ParseError::Code::TrailingData, "trailing bytes after IDX image payload");
    images.pixels.assign(bytes.begin() + 16, bytes.end());
    return images;
}

std::vector<std::uint8_t> parse_idx_labels(std::span<const std::uint8_t> bytes) {
    const std::uint32_t magic = read_be32(bytes, 0);
    if (magic != kLabelsMagic)
        throw ParseError(ParseError::Code::BadMagic,
                         "expected IDX label magic 0x00000801, got 0x" + std::to_string(magic));
    const std::size_t count = read_be32(bytes, 4);
    if (bytes.size() < 8 + count)
        throw ParseError(ParseError::Code::Truncated, "IDX label stream truncated in payload");
    if (bytes.size() > 8 + count)
        throw ParseError(ParseError::Code::TrailingData, "trailing bytes after IDX label payload");
    std::vector<std::uint8_t> labels(bytes.begin() + 8, bytes.end());
    for (std::uint8_t label : labels)
        if (label > 9)
            throw ParseError(ParseError::Code::BadValue,
                             "label value out of range: " + std::to_string(label));
    return labels;
}

std::vector<std::uint8_t> encode_idx_images(const IdxImages& images) {
    std::vector<std::uint8_t> out;
    out.reserve(16 + images.pixels.size());
    write_be32(out, kImagesMagic);
    write_be32(out, static_cast<std::uint32_t>(images.count));
    write_be32(out, static_cast<std::uint32_t>(images.rows));
    write_be32(out, static_cast<std::uint32_t>(images.cols));
    out.insert(out.end(), images.pixels.begin(), images.pixels.end());
    return out;
}

std::vector<std::uint8_t> encode_idx_labels(const std::vector<std::uint8_t>& labels) {
    std::vector<std::uint8_t> out;
    out.reserve(8 + labels.size());
    write_be32(out, kLabelsMagic);
    write_be32(out, static_cast<std::uint32_t>(labels.size()));
    out.insert(out.end(), labels.begin(), labels.end());
    return out;
}

} // namespace lightnn
