#include "calp/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>
#include <ostream>
#include <set>

#include "calp/errors.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace fs = std::filesystem;

namespace calp {

namespace {

bool has_image_extension(const fs::path& p) {
    static const std::set<std::string> kExtensions = {".png",  ".jpg", ".jpeg",
                                                      ".bmp",  ".pgm", ".ppm"};
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return kExtensions.count(ext) > 0;
}

} // namespace

std::size_t Dataset::image_count() const {
    std::size_t n = 0;
    for (const auto& c : classes) n += c.images.size();
    return n;
}

std::vector<int> Dataset::class_ids() const {
    std::vector<int> ids;
    ids.reserve(image_count());
    for (std::size_t c = 0; c < classes.size(); ++c) {
        ids.insert(ids.end(), classes[c].images.size(), static_cast<int>(c));
    }
    return ids;
}

const ImageEntry& Dataset::image(std::size_t flat_index) const {
    std::size_t offset = flat_index;
    for (const auto& c : classes) {
        if (offset < c.images.size()) return c.images[offset];
        offset -= c.images.size();
    }
    throw ParameterError("image index " + std::to_string(flat_index) + " out of range");
}

Dataset scan_dataset(const fs::path& root, std::ostream* diag) {
    std::error_code ec;
    if (!fs::is_directory(root, ec) || ec) {
        throw DatasetError("corpus root is not a directory: " + root.string());
    }

    std::vector<std::string> labels;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory()) labels.push_back(entry.path().filename().string());
    }
    if (labels.empty()) {
        throw DatasetError("corpus root has no class subdirectories: " + root.string());
    }
    std::sort(labels.begin(), labels.end());

    struct Candidate {
        std::size_t class_index;
        fs::path path;
        std::string file_name;
    };
    std::vector<Candidate> candidates;
    int skipped = 0;
    std::vector<std::string> warnings;

    for (std::size_t ci = 0; ci < labels.size(); ++ci) {
        std::vector<Candidate> in_class;
        for (const auto& entry : fs::directory_iterator(root / labels[ci])) {
            if (!entry.is_regular_file()) continue;
            if (!has_image_extension(entry.path())) {
                ++skipped;
                warnings.push_back("skipping non-image file: " + entry.path().string());
                continue;
            }
            in_class.push_back({ci, entry.path(), entry.path().filename().string()});
        }
        std::sort(in_class.begin(), in_class.end(),
                  [](const Candidate& a, const Candidate& b) { return a.file_name < b.file_name; });
        candidates.insert(candidates.end(), in_class.begin(), in_class.end());
    }

    // Decode in parallel; slots keep the sorted order regardless of timing.
    std::vector<std::optional<GrayImage>> decoded(candidates.size());
    std::vector<std::string> decode_errors(candidates.size());
    detail::parallel_for(candidates.size(), [&](std::size_t i) {
        try {
            decoded[i] = load_image(candidates[i].path);
        } catch (const Error& e) {
            decode_errors[i] = e.what();
        }
    });

    Dataset dataset;
    dataset.classes.resize(labels.size());
    for (std::size_t ci = 0; ci < labels.size(); ++ci) dataset.classes[ci].label = labels[ci];

    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!decoded[i]) {
            ++skipped;
            warnings.push_back("skipping undecodable file: " + decode_errors[i]);
            continue;
        }
        const Candidate& c = candidates[i];
        dataset.classes[c.class_index].images.push_back(
            {c.path, labels[c.class_index] + "/" + c.file_name, std::move(*decoded[i])});
    }

    std::erase_if(dataset.classes, [](const DatasetClass& c) { return c.images.empty(); });
    dataset.skipped_files = skipped;

    if (diag) {
        for (const auto& w : warnings) *diag << "warning: " << w << "\n";
    }
    if (dataset.classes.empty()) {
        throw DatasetError("no decodable images under corpus root: " + root.string());
    }
    return dataset;
}

std::vector<Split> make_splits(const std::vector<int>& class_ids, double probe_fraction,
                               int folds, std::uint64_t seed) {
    if (!(probe_fraction > 0.0 && probe_fraction < 1.0)) {
        throw ParameterError("probe fraction must lie in (0,1), got " +
                             std::to_string(probe_fraction));
    }
    if (folds < 1) {
        throw ParameterError("fold count must be >= 1, got " + std::to_string(folds));
    }

    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < class_ids.size(); ++i) by_class[class_ids[i]].push_back(i);

    std::vector<Split> splits;
    splits.reserve(static_cast<std::size_t>(folds));
    detail::SplitMix64 seeder(seed);
    for (int fold = 0; fold < folds; ++fold) {
        detail::SplitMix64 rng(seeder.next());
        Split split;
        split.probe_fraction = probe_fraction;
        split.seed = seed;
        split.fold_index = fold;
        for (const auto& [id, indices] : by_class) {
            std::vector<std::size_t> order = indices;
            detail::deterministic_shuffle(order, rng);
            const std::size_t c = order.size();
            // round-half-up, capped so the gallery keeps at least one image
            std::size_t probe_count = static_cast<std::size_t>(
                std::floor(probe_fraction * static_cast<double>(c) + 0.5));
            probe_count = std::min(probe_count, c - 1);
            split.probe.insert(split.probe.end(), order.begin(), order.begin() + probe_count);
            split.gallery.insert(split.gallery.end(), order.begin() + probe_count, order.end());
        }
        std::sort(split.probe.begin(), split.probe.end());
        std::sort(split.gallery.begin(), split.gallery.end());
        splits.push_back(std::move(split));
    }
    return splits;
}

std::vector<Split> make_splits(const Dataset& dataset, double probe_fraction,
                               int folds, std::uint64_t seed) {
    return make_splits(dataset.class_ids(), probe_fraction, folds, seed);
}

} // namespace calp
