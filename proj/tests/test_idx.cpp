#include <doctest.h>

#include <cstdint>
#include <vector>

#include "lightnn/errors.hpp"
#include "lightnn/idx.hpp"

using namespace lightnn;

namespace {

std::vector<std::uint8_t> image_fixture() {
    // one 2x2 image: magic 0x00000803, count 1, rows 2, cols 2
    return {0, 0, 8, 3, 0, 0, 0, 1, 0, 0, 0, 2, 0, 0, 0, 2, 0, 255, 7, 9};
}

std::vector<std::uint8_t> label_fixture() {
    // three labels: magic 0x00000801, count 3
    return {0, 0, 8, 1, 0, 0, 0, 3, 3, 1, 4};
}

} // namespace

TEST_CASE("image fixture decodes byte for byte") {
    const auto images = parse_idx_images(image_fixture());
    CHECK(images.count == 1);
    CHECK(images.rows == 2);
    CHECK(images.cols == 2);
    REQUIRE(images.pixels.size() == 4);
    CHECK(images.pixels[0] == 0);
    CHECK(images.pixels[1] == 255);
    CHECK(images.pixels[2] == 7);
    CHECK(images.pixels[3] == 9);
}

TEST_CASE("label fixture decodes in order") {
    const auto labels = parse_idx_labels(label_fixture());
    CHECK(labels == std::vector<std::uint8_t>{3, 1, 4});
}

TEST_CASE("zero-count files are valid and empty") {
    const std::vector<std::uint8_t> empty_labels{0, 0, 8, 1, 0, 0, 0, 0};
    CHECK(parse_idx_labels(empty_labels).empty());
    const std::vector<std::uint8_t> empty_images{0, 0, 8, 3, 0, 0, 0, 0,
                                                 0, 0, 0, 2, 0, 0, 0, 2};
    CHECK(parse_idx_images(empty_images).count == 0);
}

TEST_CASE("wrong magic is rejected") {
    auto bytes = image_fixture();
    bytes[2] = 9;
    CHECK_THROWS_AS(parse_idx_images(bytes), ParseError);
    auto labels = label_fixture();
    labels[3] = 3;  // image magic in a label file
    CHECK_THROWS_AS(parse_idx_labels(labels), ParseError);
}

TEST_CASE("truncated payloads are rejected") {
    auto bytes = image_fixture();
    bytes.pop_back();
    CHECK_THROWS_AS(parse_idx_images(bytes), ParseError);
    CHECK_THROWS_AS(parse_idx_images(std::vector<std::uint8_t>{0, 0, 8}), ParseError);
    auto labels = label_fixture();
    labels.pop_back();
    CHECK_THROWS_AS(parse_idx_labels(labels), ParseError);
}

TEST_CASE("trailing bytes are rejected") {
    auto bytes = image_fixture();
    bytes.push_back(0);
    CHECK_THROWS_AS(parse_idx_images(bytes), ParseError);
    auto labels = label_fixture();
    labels.push_back(1);
    CHECK_THROWS_AS(parse_idx_labels(labels), ParseError);
}

TEST_CASE("labels above 9 are rejected") {
    std::vector<std::uint8_t> labels{0, 0, 8, 1, 0, 0, 0, 1, 12};
    CHECK_THROWS_AS(parse_idx_labels(labels), ParseError);
}

TEST_CASE("encode then decode is the identity") {
    const auto images = parse_idx_images(image_fixture());
    CHECK(encode_idx_images(images) == image_fixture());
    const auto labels = parse_idx_labels(label_fixture());
    CHECK(encode_idx_labels(labels) == label_fixture());
}
