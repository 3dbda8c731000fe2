#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "calp/descriptors.hpp"
#include "calp/matching.hpp"

namespace calp {

/// One stored image: corpus-relative path, class label, and feature bins.
struct StoreRecord {
    std::string relative_path;
    std::string label;
    std::vector<double> bins;
};

/// Persistent feature file. Versioned tab-separated text: '#' key=value
/// header lines, then one record per line (path, label, bins as
/// shortest-round-trip decimals). Numerically lossless.
struct FeatureStore {
    static constexpr int kFormatVersion = 1;

    DescriptorConfig descriptor;
    std::size_t bin_count = 0;
    std::string root;
    int skipped_files = 0;
    std::vector<StoreRecord> records;

    /// Labeled features in record order; class ids follow first appearance
    /// (records are sorted by label, so ids are label-ordered).
    FeatureSet to_feature_set() const;

    /// Class labels indexed by the ids of to_feature_set().
    std::vector<std::string> class_labels() const;

    /// Record index of a relative path, or npos.
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t find_record(const std::string& relative_path) const;
};

/// Serializes a store. Writes to a temporary file and renames, so a failed
/// write leaves nothing behind. Throws IoError on write failure and
/// DatasetError on invariant violations (mismatched bin counts, duplicate or
/// unrepresentable paths).
void write_store(const FeatureStore& store, const std::filesystem::path& path);

/// Parses a store file; validates version, bin counts, and path uniqueness.
/// Throws IoError / DatasetError.
FeatureStore read_store(const std::filesystem::path& path);

} // namespace calp
