#pragma once

#include <unistd.h>

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "calp/image.hpp"

namespace calp::testing {

/// Uniform random image with intensities in [lo, hi].
inline GrayImage random_image(int width, int height, std::uint32_t seed, int lo = 0,
                              int hi = 255) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(lo, hi);
    GrayImage image(width, height);
    for (auto& p : image.pixels) p = static_cast<std::uint8_t>(dist(rng));
    return image;
}

/// 16x16 image whose pixels are a random permutation of 0..255, so every
/// compared pair is strictly unequal.
inline GrayImage permutation_image(std::uint32_t seed) {
    std::vector<std::uint8_t> values(256);
    std::iota(values.begin(), values.end(), 0);
    std::mt19937 rng(seed);
    std::shuffle(values.begin(), values.end(), rng);
    return GrayImage(16, 16, std::move(values));
}

inline GrayImage from_rows(const std::vector<std::vector<int>>& rows) {
    const int height = static_cast<int>(rows.size());
    const int width = static_cast<int>(rows.front().size());
    GrayImage image(width, height);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            image.at(r, c) = static_cast<std::uint8_t>(rows[r][c]);
        }
    }
    return image;
}

inline void write_gray_png(const std::filesystem::path& path, const GrayImage& image) {
    cv::Mat mat(image.height, image.width, CV_8UC1);
    for (int r = 0; r < image.height; ++r) {
        std::copy(image.row(r), image.row(r) + image.width, mat.ptr<std::uint8_t>(r));
    }
    cv::imwrite(path.string(), mat);
}

/// pixels are (r, g, b) triples in row-major order.
inline void write_rgb_png(const std::filesystem::path& path, int width, int height,
                          const std::vector<std::array<std::uint8_t, 3>>& pixels) {
    cv::Mat mat(height, width, CV_8UC3);
    for (int r = 0; r < height; ++r) {
        auto* row = mat.ptr<cv::Vec3b>(r);
        for (int c = 0; c < width; ++c) {
            const auto& px = pixels[static_cast<std::size_t>(r) * width + c];
            row[c] = cv::Vec3b(px[2], px[1], px[0]); // OpenCV stores BGR
        }
    }
    cv::imwrite(path.string(), mat);
}

inline void write_gray_jpeg(const std::filesystem::path& path, const GrayImage& image) {
    cv::Mat mat(image.height, image.width, CV_8UC1);
    for (int r = 0; r < image.height; ++r) {
        std::copy(image.row(r), image.row(r) + image.width, mat.ptr<std::uint8_t>(r));
    }
    cv::imwrite(path.string(), mat, {cv::IMWRITE_JPEG_QUALITY, 95});
}

/// Self-deleting scratch directory.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("calp_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter.fetch_add(1)));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline std::string read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// Corpus of `classes` classes, each holding `copies` identical random
/// images (distinct across classes). Returns the root.
inline std::filesystem::path make_duplicate_corpus(const TempDir& dir, int classes, int copies,
                                                   std::uint32_t seed) {
    const std::filesystem::path root = dir.path() / "corpus";
    for (int c = 0; c < classes; ++c) {
        const std::filesystem::path class_dir = root / ("person" + std::to_string(c));
        std::filesystem::create_directories(class_dir);
        const GrayImage image = random_image(16, 16, seed + static_cast<std::uint32_t>(c));
        for (int i = 0; i < copies; ++i) {
            write_gray_png(class_dir / ("img" + std::to_string(i) + ".png"), image);
        }
    }
    return root;
}

} // namespace calp::testing
