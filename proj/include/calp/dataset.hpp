#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "calp/image.hpp"

namespace calp {

/// One corpus image: absolute path, path relative to the corpus root
/// ("<class>/<file>", '/' separators), and the decoded pixels.
struct ImageEntry {
    std::filesystem::path path;
    std::string relative_path;
    GrayImage image;
};

/// One class: directory name and its images in file-name lexicographic order.
struct DatasetClass {
    std::string label;
    std::vector<ImageEntry> images;
};

/// Labeled image corpus. Classes are ordered by label; the flat image index
/// used throughout matching and evaluation enumerates classes in order and
/// images within a class in order.
struct Dataset {
    std::vector<DatasetClass> classes;
    int skipped_files = 0;

    std::size_t class_count() const { return classes.size(); }
    std::size_t image_count() const;

    /// Flat index -> class id (position of the class in `classes`).
    std::vector<int> class_ids() const;

    /// Entry at a flat index; throws ParameterError when out of range.
    const ImageEntry& image(std::size_t flat_index) const;
};

/// Seeded probe/gallery partition of the flat image indices.
struct Split {
    std::vector<std::size_t> probe;
    std::vector<std::size_t> gallery;
    double probe_fraction = 0.0;
    std::uint64_t seed = 0;
    int fold_index = 0;
};

/// Scans a directory-per-class corpus: one class per immediate subdirectory
/// of root, label = directory name, images sorted by file name. Files that
/// are not images, or that fail to decode, are skipped and counted in
/// Dataset::skipped_files (a warning per file goes to `diag` when given).
/// Decoding runs in parallel across files; the resulting order is always the
/// deterministic sorted order.
///
/// Throws DatasetError when root has no subdirectories or no image decodes.
Dataset scan_dataset(const std::filesystem::path& root, std::ostream* diag = nullptr);

/// Stratified seeded splits over per-image class ids. For every fold and
/// every class of size c, round-half-up(probe_fraction * c) images go to the
/// probe set, capped at c - 1 (singleton classes stay in the gallery). Fold
/// k draws from a sub-seed derived from (seed, k); identical arguments yield
/// identical splits on every platform.
///
/// Throws ParameterError for probe_fraction outside (0,1) or folds < 1.
std::vector<Split> make_splits(const std::vector<int>& class_ids, double probe_fraction,
                               int folds, std::uint64_t seed);
std::vector<Split> make_splits(const Dataset& dataset, double probe_fraction,
                               int folds, std::uint64_t seed);

} // namespace calp
