#include "calp/baselines.hpp"

#include <string>

#include "calp/errors.hpp"

namespace calp {

namespace {

void require_3x3(const GrayImage& image, const char* descriptor) {
    if (image.width < 3 || image.height < 3) {
        throw DimensionError(std::string(descriptor) + " needs an image of at least 3x3, got " +
                             std::to_string(image.width) + "x" + std::to_string(image.height));
    }
}

void require_threshold(int threshold, const char* descriptor) {
    if (threshold < 0) {
        throw ParameterError(std::string(descriptor) + " threshold must be >= 0, got " +
                             std::to_string(threshold));
    }
}

FeatureVector normalized(const char* name, std::vector<std::size_t> counts, std::size_t total) {
    FeatureVector feature;
    feature.name = name;
    feature.segment_length = counts.size();
    feature.bins.resize(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k) {
        feature.bins[k] = static_cast<double>(counts[k]) / static_cast<double>(total);
    }
    return feature;
}

} // namespace

FeatureVector lbp_feature(const GrayImage& image) {
    require_3x3(image, "lbp");
    std::vector<std::size_t> counts(256, 0);
    for (int row = 1; row < image.height - 1; ++row) {
        const std::uint8_t* top = image.row(row - 1);
        const std::uint8_t* mid = image.row(row);
        const std::uint8_t* bot = image.row(row + 1);
        for (int col = 1; col < image.width - 1; ++col) {
            const std::uint8_t center = mid[col];
            // neighbors clockwise from top-left, weights 2^0..2^7; ties -> 1
            int code = ((top[col - 1] >= center) << 0) | ((top[col] >= center) << 1) |
                       ((top[col + 1] >= center) << 2) | ((mid[col + 1] >= center) << 3) |
                       ((bot[col + 1] >= center) << 4) | ((bot[col] >= center) << 5) |
                       ((bot[col - 1] >= center) << 6) | ((mid[col - 1] >= center) << 7);
            ++counts[code];
        }
    }
    const std::size_t total =
        static_cast<std::size_t>(image.height - 2) * static_cast<std::size_t>(image.width - 2);
    return normalized("lbp", std::move(counts), total);
}

FeatureVector cslbp_feature(const GrayImage& image, int threshold) {
    require_3x3(image, "cslbp");
    require_threshold(threshold, "cslbp");
    std::vector<std::size_t> counts(16, 0);
    for (int row = 1; row < image.height - 1; ++row) {
        const std::uint8_t* top = image.row(row - 1);
        const std::uint8_t* mid = image.row(row);
        const std::uint8_t* bot = image.row(row + 1);
        for (int col = 1; col < image.width - 1; ++col) {
            // center-symmetric pairs of the clockwise-from-top-left ordering:
            // (TL,BR), (T,B), (TR,BL), (R,L); bit set when g_p - g_opp - t >= 0
            int code = ((top[col - 1] - bot[col + 1] >= threshold) << 0) |
                       ((top[col] - bot[col] >= threshold) << 1) |
                       ((top[col + 1] - bot[col - 1] >= threshold) << 2) |
                       ((mid[col + 1] - mid[col - 1] >= threshold) << 3);
            ++counts[code];
        }
    }
    const std::size_t total =
        static_cast<std::size_t>(image.height - 2) * static_cast<std::size_t>(image.width - 2);
    return normalized("cslbp", std::move(counts), total);
}

FeatureVector csltp_feature(const GrayImage& image, int threshold) {
    require_3x3(image, "csltp");
    require_threshold(threshold, "csltp");
    auto ternary = [threshold](int d) {
        if (d > threshold) return 2;   // s = +1
        if (d < -threshold) return 0;  // s = -1
        return 1;                      // s = 0
    };
    std::vector<std::size_t> counts(9, 0);
    for (int row = 1; row < image.height - 1; ++row) {
        const std::uint8_t* top = image.row(row - 1);
        const std::uint8_t* bot = image.row(row + 1);
        for (int col = 1; col < image.width - 1; ++col) {
            const int s1 = ternary(top[col - 1] - bot[col + 1]);
            const int s2 = ternary(top[col + 1] - bot[col - 1]);
            ++counts[3 * s1 + s2];
        }
    }
    const std::size_t total =
        static_cast<std::size_t>(image.height - 2) * static_cast<std::size_t>(image.width - 2);
    return normalized("csltp", std::move(counts), total);
}

} // namespace calp
