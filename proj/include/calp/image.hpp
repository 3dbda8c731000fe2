#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

namespace calp {

/// 8-bit grayscale image, row-major storage.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    GrayImage() = default;

    /// Takes ownership of a pixel buffer; throws DimensionError unless
    /// buffer size == width * height.
    GrayImage(int width, int height, std::vector<std::uint8_t> pixels);

    /// Uniform image of the given size.
    GrayImage(int width, int height, std::uint8_t fill = 0);

    std::uint8_t at(int row, int col) const {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }
    std::uint8_t& at(int row, int col) {
        return pixels[static_cast<std::size_t>(row) * width + col];
    }
    const std::uint8_t* row(int r) const {
        return pixels.data() + static_cast<std::size_t>(r) * width;
    }
    std::size_t pixel_count() const { return pixels.size(); }
};

/// ITU-R BT.601 luma (0.299 R + 0.587 G + 0.114 B), rounded to nearest.
std::uint8_t luma_bt601(std::uint8_t r, std::uint8_t g, std::uint8_t b);

/// Decodes a raster image file (PNG, JPEG, and other common containers) into
/// an 8-bit grayscale image. Single-channel inputs pass through unchanged;
/// RGB/RGBA inputs are reduced with luma_bt601 (alpha ignored).
///
/// Throws IoError when the file cannot be read and FormatError when the
/// content cannot be decoded or uses an unsupported pixel depth; both name
/// the offending path.
GrayImage load_image(const std::filesystem::path& path);

} // namespace calp
