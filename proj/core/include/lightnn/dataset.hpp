#pragma once

#include <cstdint>
#include <filesystem>
#include <utility>
#include <vector>

#include "lightnn/idx.hpp"
#include "lightnn/types.hpp"

namespace lightnn {

enum class Split { Train, Test };

/// Preprocessed image set: rows are flattened images scaled to [0, 1].
struct Dataset {
    Matrix images;            // N x (rows*cols)
    std::vector<int> labels;  // class indices
    Split split = Split::Train;

    long size() const { return images.rows(); }
};

/// Scales raw u8 pixels by 1/255 and flattens each image to one row.
Dataset preprocess(const IdxImages& raw, const std::vector<std::uint8_t>& labels, Split split);

/// Default cache directory; honours the LIGHTNN_CACHE environment variable,
/// otherwise ~/.cache/lightnn.
std::filesystem::path default_cache_dir();

/// Loads MNIST from `<cache>/mnist/{train-images,train-labels,t10k-images,
/// t10k-labels}` (raw IDX or the same names with a .gz suffix). On a cold
/// cache downloads the four canonical files unless `offline` is set, in
/// which case an OfflineError is thrown.
std::pair<Dataset, Dataset> fetch_or_load(const std::filesystem::path& cache_dir, bool offline);

} // namespace lightnn
