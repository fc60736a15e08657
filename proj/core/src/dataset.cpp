#include "lightnn/dataset.hpp"

#include <cstdlib>
#include <fstream>
#include <zlib.h>

#define CPPHTTPLIB_NO_EXCEPTIONS 0
#include <httplib.h>

#include "lightnn/errors.hpp"

namespace lightnn {

Dataset preprocess(const IdxImages& raw, const std::vector<std::uint8_t>& labels, Split split) {
    if (static_cast<std::size_t>(raw.count) != labels.size())
        throw InputError("image count does not match label count");
    Dataset set;
    set.split = split;
    const long pixels_per_image = static_cast<long>(raw.rows) * raw.cols;
    set.images.resize(raw.count, pixels_per_image);
    for (long n = 0; n < raw.count; ++n)
        for (long p = 0; p < pixels_per_image; ++p)
            set.images(n, p) =
                raw.pixels[static_cast<std::size_t>(n * pixels_per_image + p)] / 255.0;
    set.labels.assign(labels.begin(), labels.end());
    return set;
}

std::filesystem::path default_cache_dir() {
    if (const char* env = std::getenv("LIGHTNN_CACHE")) return env;
    if (const char* home = std::getenv("HOME"))
        return std::filesystem::path(home) / ".cache" / "lightnn";
    return ".lightnn-cache";
}

namespace {

struct MnistFile {
    const char* cache_name;
    const char* remote_name;
    bool is_images;
    int expected_count;
};

constexpr MnistFile kFiles[4] = {
    {"train-images", "train-images-idx3-ubyte.gz", true, 60000},
    {"train-labels", "train-labels-idx1-ubyte.gz", false, 60000},
    {"t10k-images", "t10k-images-idx3-ubyte.gz", true, 10000},
    {"t10k-labels", "t10k-labels-idx1-ubyte.gz", false, 10000},
};

// Download mirrors tried in order; all serve the canonical gzip files.
constexpr const char* kMirrors[] = {
    "https://ossci-datasets.s3.amazonaws.com",
    "https://storage.googleapis.com",
};
constexpr const char* kMirrorPaths[] = {
    "/mnist/",
    "/cvdf-datasets/mnist/",
};

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::uint8_t> read_gz(const std::filesystem::path& path) {
    gzFile gz = gzopen(path.string().c_str(), "rb");
    if (!gz) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> data;
    std::uint8_t buffer[1 << 16];
    int got;
    while ((got = gzread(gz, buffer, sizeof(buffer))) > 0)
        data.insert(data.end(), buffer, buffer + got);
    const bool failed = got < 0;
    gzclose(gz);
    if (failed) throw IoError("gzip decode failed for " + path.string());
    return data;
}

std::vector<std::uint8_t> load_cached(const std::filesystem::path& dir, const MnistFile& file) {
    const auto raw = dir / file.cache_name;
    const auto gz = dir / (std::string(file.cache_name) + ".gz");
    if (std::filesystem::exists(raw)) return read_file(raw);
    if (std::filesystem::exists(gz)) return read_gz(gz);
    return {};
}

void download(const std::filesystem::path& dir, const MnistFile& file) {
    for (std::size_t m = 0; m < std::size(kMirrors); ++m) {
        httplib::Client client(kMirrors[m]);
        client.set_follow_location(true);
        client.set_connection_timeout(10);
        auto res = client.Get(std::string(kMirrorPaths[m]) + file.remote_name);
        if (res && res->status == 200) {
            const auto target = dir / (std::string(file.cache_name) + ".gz");
            std::ofstream out(target, std::ios::binary);
            out.write(res->body.data(), static_cast<std::streamsize>(res->body.size()));
            if (!out) throw IoError("failed writing " + target.string());
            return;
        }
    }
    throw IoError(std::string("download failed for ") + file.remote_name +
                  " from all mirrors");
}

} // namespace

std::pair<Dataset, Dataset> fetch_or_load(const std::filesystem::path& cache_dir, bool offline) {
    const auto dir = cache_dir / "mnist";
    std::vector<std::vector<std::uint8_t>> contents(4);
    for (int f = 0; f < 4; ++f) {
        contents[f] = load_cached(dir, kFiles[f]);
        if (contents[f].empty()) {
            if (offline)
                throw OfflineError(std::string("offline and no cached copy of ") +
                                   kFiles[f].cache_name + " under " + dir.string());
            std::filesystem::create_directories(dir);
            download(dir, kFiles[f]);
            contents[f] = load_cached(dir, kFiles[f]);
            if (contents[f].empty())
                throw IoError(std::string("downloaded file unreadable: ") + kFiles[f].cache_name);
        }
    }

    auto build = [&](int image_idx, int label_idx, Split split) {
        const auto images = parse_idx_images(contents[static_cast<std::size_t>(image_idx)]);
        const auto labels = parse_idx_labels(contents[static_cast<std::size_t>(label_idx)]);
        if (images.count != kFiles[image_idx].expected_count ||
            static_cast<int>(labels.size()) != kFiles[label_idx].expected_count ||
            images.rows != 28 || images.cols != 28)
            throw IoError("MNIST file sizes do not match the distribution's documented sizes");
        return preprocess(images, labels, split);
    };
    return {build(0, 1, Split::Train), build(2, 3, Split::Test)};
}

} // namespace lightnn
