#pragma once

#include <string>
#include <vector>

#include "calp/baselines.hpp"
#include "calp/dataset.hpp"
#include "calp/descriptor.hpp"

namespace calp {

enum class DescriptorKind { calp, lbp, cslbp, csltp };

/// Descriptor selection plus its parameters. `radius` applies to the
/// cascaded descriptor, `threshold` to cslbp/csltp; the other fields are
/// ignored by descriptors that do not use them.
struct DescriptorConfig {
    DescriptorKind kind = DescriptorKind::calp;
    int radius = 1;
    int threshold = 0;

    static DescriptorConfig with_defaults(DescriptorKind kind);
};

/// "calp" | "lbp" | "cslbp" | "csltp".
std::string descriptor_name(DescriptorKind kind);

/// Parses a descriptor name; throws ParameterError for unknown names.
DescriptorKind parse_descriptor(const std::string& name);

/// Bin count of the configured descriptor (64 * radius for calp; 256 / 16 / 9
/// for lbp / cslbp / csltp).
std::size_t feature_length(const DescriptorConfig& config);

/// Feature of one image under the configured descriptor.
FeatureVector compute_feature(const GrayImage& image, const DescriptorConfig& config);

/// Features of every dataset image in flat-index order. Extraction runs in
/// parallel across images; results are assembled deterministically.
std::vector<FeatureVector> extract_features(const Dataset& dataset, const DescriptorConfig& config);

} // namespace calp
