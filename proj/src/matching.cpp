#include "calp/matching.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "calp/errors.hpp"
#include "parallel.hpp"

namespace calp {

double chi_square(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw DimensionError("chi-square length mismatch: " + std::to_string(x.size()) +
                             " vs " + std::to_string(y.size()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double denom = x[i] + y[i];
        if (denom > 0.0) {
            const double diff = x[i] - y[i];
            sum += diff * diff / denom;
        }
    }
    return 0.5 * sum;
}

double chi_square(const FeatureVector& x, const FeatureVector& y) {
    return chi_square(std::span<const double>(x.bins), std::span<const double>(y.bins));
}

std::size_t RankedList::rank_of(std::size_t index) const {
    for (std::size_t pos = 0; pos < items.size(); ++pos) {
        if (items[pos].index == index) return pos + 1;
    }
    return 0;
}

std::size_t FeatureSet::class_size_of(std::size_t index) const {
    const int id = class_ids[index];
    return static_cast<std::size_t>(std::count(class_ids.begin(), class_ids.end(), id));
}

RankedList rank_gallery(std::span<const FeatureVector> features, std::size_t query,
                        std::span<const std::size_t> gallery) {
    RankedList ranked;
    ranked.query = query;
    ranked.items.reserve(gallery.size());
    for (std::size_t index : gallery) {
        if (index == query) continue;
        ranked.items.push_back({index, chi_square(features[query], features[index])});
    }
    if (ranked.items.empty()) {
        throw EvaluationError("empty gallery for query " + std::to_string(query));
    }
    std::sort(ranked.items.begin(), ranked.items.end(),
              [](const RankedItem& a, const RankedItem& b) {
                  if (a.distance != b.distance) return a.distance < b.distance;
                  return a.index < b.index;
              });
    return ranked;
}

std::vector<RankedList> rank_all_leave_one_out(const FeatureSet& set) {
    std::vector<std::size_t> all(set.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    std::vector<RankedList> ranked(set.size());
    detail::parallel_for(set.size(), [&](std::size_t q) {
        ranked[q] = rank_gallery(set.features, q, all);
    });
    return ranked;
}

} // namespace calp
