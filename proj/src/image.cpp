#include "calp/image.hpp"

#include <cmath>
#include <filesystem>
#include <string>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "calp/errors.hpp"

namespace calp {

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> pixels)
    : width(width), height(height), pixels(std::move(pixels)) {
    if (width < 0 || height < 0 ||
        this->pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw DimensionError("pixel buffer size " + std::to_string(this->pixels.size()) +
                             " does not match " + std::to_string(width) + "x" +
                             std::to_string(height));
    }
}

GrayImage::GrayImage(int width, int height, std::uint8_t fill)
    : width(width), height(height),
      pixels(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

std::uint8_t luma_bt601(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    long v = std::lround(0.299 * r + 0.587 * g + 0.114 * b);
    if (v < 0) v = 0;
    if (v > 255) v = 255;
    return static_cast<std::uint8_t>(v);
}

GrayImage load_image(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec) || ec) {
        throw IoError("cannot read image file: " + path.string());
    }
    cv::Mat raw = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    if (raw.empty()) {
        throw FormatError("cannot decode image file: " + path.string());
    }
    if (raw.depth() != CV_8U) {
        throw FormatError("unsupported pixel depth (expected 8-bit) in: " + path.string());
    }
    const int channels = raw.channels();
    if (channels != 1 && channels != 3 && channels != 4) {
        throw FormatError("unsupported channel count " + std::to_string(channels) +
                          " in: " + path.string());
    }

    GrayImage out(raw.cols, raw.rows);
    for (int r = 0; r < raw.rows; ++r) {
        const std::uint8_t* src = raw.ptr<std::uint8_t>(r);
        std::uint8_t* dst = out.pixels.data() + static_cast<std::size_t>(r) * out.width;
        if (channels == 1) {
            std::copy(src, src + raw.cols, dst);
        } else {
            // OpenCV decodes color as BGR(A).
            for (int c = 0; c < raw.cols; ++c) {
                const std::uint8_t* px = src + static_cast<std::size_t>(c) * channels;
                dst[c] = luma_bt601(px[2], px[1], px[0]);
            }
        }
    }
    return out;
}

} // namespace calp
