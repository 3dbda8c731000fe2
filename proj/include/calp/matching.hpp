#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "calp/feature.hpp"

namespace calp {

/// Chi-square histogram distance: 1/2 * sum (x_i - y_i)^2 / (x_i + y_i).
/// Terms with a zero denominator contribute 0. Throws DimensionError on
/// length mismatch.
double chi_square(std::span<const double> x, std::span<const double> y);
double chi_square(const FeatureVector& x, const FeatureVector& y);

struct RankedItem {
    std::size_t index = 0;
    double distance = 0.0;
};

/// Gallery images ordered by ascending distance to one query; ties break by
/// ascending dataset index. The query itself never appears.
struct RankedList {
    std::size_t query = 0;
    std::vector<RankedItem> items;

    /// 1-based rank of a dataset index, or 0 when absent.
    std::size_t rank_of(std::size_t index) const;
};

/// Labeled feature vectors of one corpus in flat-index order; the universe
/// every matching and evaluation operation works on.
struct FeatureSet {
    std::vector<FeatureVector> features;
    std::vector<int> class_ids;

    std::size_t size() const { return features.size(); }
    /// Number of images sharing the class of `index` (including it).
    std::size_t class_size_of(std::size_t index) const;
};

/// Ranks the gallery against features[query]. `gallery` lists candidate
/// dataset indices; the query's own index is excluded if present. Throws
/// EvaluationError when nothing remains to rank.
RankedList rank_gallery(std::span<const FeatureVector> features, std::size_t query,
                        std::span<const std::size_t> gallery);

/// Leave-one-out ranking of every image against all others, in parallel.
/// ranked[q].query == q for every q.
std::vector<RankedList> rank_all_leave_one_out(const FeatureSet& set);

} // namespace calp
