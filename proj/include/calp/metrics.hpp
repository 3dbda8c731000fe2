#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "calp/dataset.hpp"
#include "calp/descriptors.hpp"
#include "calp/matching.hpp"

namespace calp {

/// Fraction of the top-lambda entries sharing the query's class.
/// Throws ParameterError when lambda is 0 or exceeds the list length.
double precision_at(const RankedList& ranked, std::span<const int> class_ids, std::size_t lambda);

/// Same-class hits in the top lambda divided by the query's class size
/// (query included in the denominator, so the ceiling is (c-1)/c).
double recall_at(const RankedList& ranked, std::span<const int> class_ids, std::size_t lambda);

/// Class-balanced mean precision at lambda: per-class mean over that class's
/// queries, then mean over classes. Overloads taking precomputed
/// leave-one-out rankings avoid re-ranking per lambda.
double arp(const FeatureSet& set, std::size_t lambda);
double arp(std::span<const RankedList> ranked, std::span<const int> class_ids, std::size_t lambda);

/// Class-balanced mean recall at lambda.
double arr(const FeatureSet& set, std::size_t lambda);
double arr(std::span<const RankedList> ranked, std::span<const int> class_ids, std::size_t lambda);

/// Class-balanced mean recall with the per-class cutoff lambda = |C_i|.
double arr_at_class_size(std::span<const RankedList> ranked, std::span<const int> class_ids);

/// Harmonic mean of ARP and ARR; 0 when both are 0.
double f_score(double arp_value, double arr_value);

/// Normalized modified retrieval rank of one query from the 1-based ranks of
/// its ground-truth matches. NG = ranks.size(), cutoff K = 2 * NG; ranks
/// beyond K are penalized as 1.25 * K. Result in [0, 1].
/// Throws EvaluationError when no ranks are given.
double nmrr_from_match_ranks(std::span<const std::size_t> match_ranks);

/// Mean NMRR over every image as a query under leave-one-out ranking.
/// Throws EvaluationError when a class has fewer than 2 images.
double anmrr(const FeatureSet& set);
double anmrr(std::span<const RankedList> ranked, std::span<const int> class_ids);

/// Leave-one-out rank-1 classification accuracy, as a percentage of all
/// images. Throws EvaluationError for fewer than 2 images.
double recognition_rate(const FeatureSet& set);
double recognition_rate(std::span<const RankedList> ranked, std::span<const int> class_ids);

/// Cumulative match characteristic over a probe/gallery split: cmc[r-1] is
/// the fraction of probes whose first same-class gallery image ranks <= r,
/// for r = 1..max_rank. Throws EvaluationError when a probe's class is
/// absent from the gallery or the probe set is empty.
std::vector<double> cmc(const FeatureSet& set, const Split& split, std::size_t max_rank);

/// CMC under the leave-one-out protocol (each image probes all others).
std::vector<double> cmc_leave_one_out(const FeatureSet& set, std::size_t max_rank);

/// Leave-one-out CMC from precomputed rankings.
std::vector<double> cmc(std::span<const RankedList> ranked, std::span<const int> class_ids,
                        std::size_t max_rank);

/// Rank-1 recognition rate (percent) of a single probe/gallery split.
double split_recognition_rate(const FeatureSet& set, const Split& split);

/// Per-fold recognition rates and their mean for one probe fraction.
struct FractionRates {
    double fraction = 0.0;
    std::vector<double> fold_rates;
    double mean = 0.0;
};

/// Seeded cross-validated recognition: for every fraction, `folds` stratified
/// splits are drawn and each probe is classified by its rank-1 chi-square
/// nearest gallery neighbor. Deterministic for fixed arguments.
std::vector<FractionRates> cross_validated_recognition(const FeatureSet& set,
                                                       std::span<const double> fractions,
                                                       int folds, std::uint64_t seed);
std::vector<FractionRates> cross_validated_recognition(const Dataset& dataset,
                                                       const DescriptorConfig& config,
                                                       std::span<const double> fractions,
                                                       int folds, std::uint64_t seed);

} // namespace calp
