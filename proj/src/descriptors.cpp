#include "calp/descriptors.hpp"

#include "calp/errors.hpp"
#include "parallel.hpp"

namespace calp {

DescriptorConfig DescriptorConfig::with_defaults(DescriptorKind kind) {
    DescriptorConfig config;
    config.kind = kind;
    switch (kind) {
        case DescriptorKind::calp:
            config.radius = 1;
            break;
        case DescriptorKind::cslbp:
            config.threshold = 0;
            break;
        case DescriptorKind::csltp:
            config.threshold = 1;
            break;
        case DescriptorKind::lbp:
            break;
    }
    return config;
}

std::string descriptor_name(DescriptorKind kind) {
    switch (kind) {
        case DescriptorKind::calp: return "calp";
        case DescriptorKind::lbp: return "lbp";
        case DescriptorKind::cslbp: return "cslbp";
        case DescriptorKind::csltp: return "csltp";
    }
    throw ParameterError("unknown descriptor kind");
}

DescriptorKind parse_descriptor(const std::string& name) {
    if (name == "calp") return DescriptorKind::calp;
    if (name == "lbp") return DescriptorKind::lbp;
    if (name == "cslbp") return DescriptorKind::cslbp;
    if (name == "csltp") return DescriptorKind::csltp;
    throw ParameterError("unknown descriptor '" + name +
                         "' (expected calp, lbp, cslbp, or csltp)");
}

std::size_t feature_length(const DescriptorConfig& config) {
    switch (config.kind) {
        case DescriptorKind::calp:
            if (config.radius < 1) {
                throw ParameterError("cascade depth must be >= 1, got " +
                                     std::to_string(config.radius));
            }
            return 64 * static_cast<std::size_t>(config.radius);
        case DescriptorKind::lbp: return 256;
        case DescriptorKind::cslbp: return 16;
        case DescriptorKind::csltp: return 9;
    }
    throw ParameterError("unknown descriptor kind");
}

FeatureVector compute_feature(const GrayImage& image, const DescriptorConfig& config) {
    switch (config.kind) {
        case DescriptorKind::calp: return calp_feature(image, CalpConfig{config.radius});
        case DescriptorKind::lbp: return lbp_feature(image);
        case DescriptorKind::cslbp: return cslbp_feature(image, config.threshold);
        case DescriptorKind::csltp: return csltp_feature(image, config.threshold);
    }
    throw ParameterError("unknown descriptor kind");
}

std::vector<FeatureVector> extract_features(const Dataset& dataset,
                                            const DescriptorConfig& config) {
    const std::size_t n = dataset.image_count();
    std::vector<const GrayImage*> images;
    images.reserve(n);
    for (const auto& cls : dataset.classes) {
        for (const auto& entry : cls.images) images.push_back(&entry.image);
    }
    std::vector<FeatureVector> features(n);
    detail::parallel_for(n, [&](std::size_t i) { features[i] = compute_feature(*images[i], config); });
    return features;
}

} // namespace calp
