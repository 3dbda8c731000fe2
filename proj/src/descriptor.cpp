#include "calp/descriptor.hpp"

#include <cmath>
#include <string>

#include "calp/errors.hpp"

namespace calp {

namespace {

void require_large_enough(const GrayImage& image, int d) {
    if (d < 1) {
        throw ParameterError("ring distance must be >= 1, got " + std::to_string(d));
    }
    if (image.width < 2 * d + 1 || image.height < 2 * d + 1) {
        throw DimensionError("image " + std::to_string(image.width) + "x" +
                             std::to_string(image.height) + " too small for ring distance " +
                             std::to_string(d) + " (needs at least " + std::to_string(2 * d + 1) +
                             "x" + std::to_string(2 * d + 1) + ")");
    }
}

} // namespace

int calp_code(const GrayImage& image, int row, int col, int d) {
    require_large_enough(image, d);
    if (row < d || row > image.height - 1 - d || col < d || col > image.width - 1 - d) {
        throw DimensionError("pixel (" + std::to_string(row) + "," + std::to_string(col) +
                             ") outside the valid interior for ring distance " +
                             std::to_string(d));
    }
    const std::uint8_t* top = image.row(row - d);
    const std::uint8_t* mid = image.row(row);
    const std::uint8_t* bot = image.row(row + d);
    const int l = col - d, r = col + d;
    int horizontal = (code_bit(top[l], bot[l]) << 5) | (code_bit(top[col], bot[col]) << 4) |
                     (code_bit(top[r], bot[r]) << 3);
    int vertical = (code_bit(top[l], top[r]) << 2) | (code_bit(mid[l], mid[r]) << 1) |
                   code_bit(bot[l], bot[r]);
    return horizontal | vertical;
}

CodeImage calp_code_image(const GrayImage& image, int d) {
    require_large_enough(image, d);
    CodeImage out;
    out.ring_distance = d;
    out.width = image.width - 2 * d;
    out.height = image.height - 2 * d;
    out.codes.resize(static_cast<std::size_t>(out.width) * out.height);

    // Row-pointer kernel: three source rows per output row, six comparisons
    // per pixel, no per-pixel bounds checks.
    for (int orow = 0; orow < out.height; ++orow) {
        const int irow = orow + d;
        const std::uint8_t* top = image.row(irow - d);
        const std::uint8_t* mid = image.row(irow);
        const std::uint8_t* bot = image.row(irow + d);
        std::uint8_t* dst = out.codes.data() + static_cast<std::size_t>(orow) * out.width;
        for (int ocol = 0; ocol < out.width; ++ocol) {
            const int l = ocol, c = ocol + d, r = ocol + 2 * d;
            dst[ocol] = static_cast<std::uint8_t>(
                ((top[l] > bot[l]) << 5) | ((top[c] > bot[c]) << 4) | ((top[r] > bot[r]) << 3) |
                ((top[l] > top[r]) << 2) | ((mid[l] > mid[r]) << 1) | (bot[l] > bot[r]));
        }
    }
    return out;
}

std::vector<double> calp_histogram(const CodeImage& code_image) {
    if (code_image.empty()) {
        throw EvaluationError("cannot build a histogram of an empty code image");
    }
    std::vector<std::size_t> counts(64, 0);
    for (std::uint8_t code : code_image.codes) ++counts[code];
    const double total = static_cast<double>(code_image.codes.size());
    std::vector<double> bins(64, 0.0);
    for (std::size_t k = 0; k < 64; ++k) bins[k] = static_cast<double>(counts[k]) / total;
    return bins;
}

FeatureVector calp_feature(const GrayImage& image, const CalpConfig& config) {
    if (config.max_radius < 1) {
        throw ParameterError("cascade depth must be >= 1, got " +
                             std::to_string(config.max_radius));
    }
    FeatureVector feature;
    feature.name = "calp";
    feature.segment_length = 64;
    feature.bins.reserve(64 * static_cast<std::size_t>(config.max_radius));
    for (int d = 1; d <= config.max_radius; ++d) {
        std::vector<double> histogram = calp_histogram(calp_code_image(image, d));
        feature.bins.insert(feature.bins.end(), histogram.begin(), histogram.end());
    }
    return feature;
}

GrayImage render_feature_image(const CodeImage& code_image) {
    if (code_image.empty()) {
        throw EvaluationError("cannot render an empty code image");
    }
    GrayImage out(code_image.width, code_image.height);
    for (std::size_t i = 0; i < code_image.codes.size(); ++i) {
        out.pixels[i] =
            static_cast<std::uint8_t>(std::lround(code_image.codes[i] * 255.0 / 63.0));
    }
    return out;
}

} // namespace calp
