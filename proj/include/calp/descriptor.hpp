#pragma once

#include <cstdint>
#include <vector>

#include "calp/feature.hpp"
#include "calp/image.hpp"

namespace calp {

/// Parameters of the cascaded descriptor: rings at distances 1..max_radius
/// are encoded and their histograms concatenated.
struct CalpConfig {
    int max_radius = 1;
};

/// Per-pixel codes of the valid interior of an image at one ring distance.
/// For a source image of M x N pixels and ring distance d the interior is
/// (M - 2d) x (N - 2d); codes lie in [0, 63].
struct CodeImage {
    int width = 0;
    int height = 0;
    int ring_distance = 0;
    std::vector<std::uint8_t> codes;

    std::uint8_t at(int row, int col) const {
        return codes[static_cast<std::size_t>(row) * width + col];
    }
    bool empty() const { return codes.empty(); }
    std::size_t size() const { return codes.size(); }
};

/// Pair comparison bit: 0 when e <= f, 1 when e > f. Ties map to 0.
inline int code_bit(std::uint8_t e, std::uint8_t f) { return e > f ? 1 : 0; }

/// 6-bit code of the pixel at (row, col), 0-indexed, for ring distance d.
/// Bits 5..3 compare the row above the reference against the row below
/// (top-left vs bottom-left, top vs bottom, top-right vs bottom-right);
/// bits 2..0 compare the left column against the right column (top-left vs
/// top-right, left vs right, bottom-left vs bottom-right). The reference
/// pixel itself is never read.
///
/// Throws DimensionError when (row, col) is not in the valid interior
/// [d, height-1-d] x [d, width-1-d].
int calp_code(const GrayImage& image, int row, int col, int d);

/// Codes of every valid interior pixel at ring distance d.
/// Throws DimensionError when the image is smaller than (2d+1) x (2d+1).
CodeImage calp_code_image(const GrayImage& image, int d);

/// 64-bin L1-normalized histogram of a code image.
/// Throws EvaluationError on an empty code image.
std::vector<double> calp_histogram(const CodeImage& code_image);

/// Concatenated per-ring histograms for d = 1..max_radius, ascending;
/// 64 * max_radius bins. Throws ParameterError for max_radius < 1 and
/// DimensionError when the image is too small for any ring.
FeatureVector calp_feature(const GrayImage& image, const CalpConfig& config);

/// Scales codes to display intensities: c -> round(c * 255 / 63).
/// Throws EvaluationError on an empty code image.
GrayImage render_feature_image(const CodeImage& code_image);

} // namespace calp
