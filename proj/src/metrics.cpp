#include "calp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "calp/errors.hpp"
#include "parallel.hpp"

namespace calp {

namespace {

void require_lambda(const RankedList& ranked, std::size_t lambda) {
    if (lambda < 1 || lambda > ranked.items.size()) {
        throw ParameterError("retrieval cutoff " + std::to_string(lambda) +
                             " outside [1, " + std::to_string(ranked.items.size()) + "]");
    }
}

std::size_t hits_in_top(const RankedList& ranked, std::span<const int> class_ids,
                        std::size_t lambda) {
    const int query_class = class_ids[ranked.query];
    std::size_t hits = 0;
    for (std::size_t pos = 0; pos < lambda; ++pos) {
        if (class_ids[ranked.items[pos].index] == query_class) ++hits;
    }
    return hits;
}

/// Mean over classes of the mean over that class's queries of a per-query
/// score (the class-balanced averaging shared by ARP and ARR).
template <typename PerQuery>
double class_balanced_mean(std::span<const RankedList> ranked, std::span<const int> class_ids,
                           PerQuery&& per_query) {
    std::map<int, std::pair<double, std::size_t>> per_class; // sum, count
    for (const RankedList& list : ranked) {
        auto& [sum, count] = per_class[class_ids[list.query]];
        sum += per_query(list);
        ++count;
    }
    double total = 0.0;
    for (const auto& [id, acc] : per_class) total += acc.first / static_cast<double>(acc.second);
    return total / static_cast<double>(per_class.size());
}

std::vector<std::size_t> class_sizes(std::span<const int> class_ids) {
    int max_id = 0;
    for (int id : class_ids) max_id = std::max(max_id, id);
    std::vector<std::size_t> sizes(static_cast<std::size_t>(max_id) + 1, 0);
    for (int id : class_ids) ++sizes[static_cast<std::size_t>(id)];
    return sizes;
}

} // namespace

double precision_at(const RankedList& ranked, std::span<const int> class_ids, std::size_t lambda) {
    require_lambda(ranked, lambda);
    return static_cast<double>(hits_in_top(ranked, class_ids, lambda)) /
           static_cast<double>(lambda);
}

double recall_at(const RankedList& ranked, std::span<const int> class_ids, std::size_t lambda) {
    require_lambda(ranked, lambda);
    const int query_class = class_ids[ranked.query];
    const auto class_size = static_cast<double>(
        std::count(class_ids.begin(), class_ids.end(), query_class));
    return static_cast<double>(hits_in_top(ranked, class_ids, lambda)) / class_size;
}

double arp(std::span<const RankedList> ranked, std::span<const int> class_ids, std::size_t lambda) {
    return class_balanced_mean(ranked, class_ids, [&](const RankedList& list) {
        return precision_at(list, class_ids, lambda);
    });
}

double arp(const FeatureSet& set, std::size_t lambda) {
    return arp(rank_all_leave_one_out(set), set.class_ids, lambda);
}

double arr(std::span<const RankedList> ranked, std::span<const int> class_ids, std::size_t lambda) {
    return class_balanced_mean(ranked, class_ids, [&](const RankedList& list) {
        return recall_at(list, class_ids, lambda);
    });
}

double arr(const FeatureSet& set, std::size_t lambda) {
    return arr(rank_all_leave_one_out(set), set.class_ids, lambda);
}

double arr_at_class_size(std::span<const RankedList> ranked, std::span<const int> class_ids) {
    const std::vector<std::size_t> sizes = class_sizes(class_ids);
    return class_balanced_mean(ranked, class_ids, [&](const RankedList& list) {
        // per-class cutoff lambda = |C_i|, capped by the list length
        const std::size_t lambda =
            std::min(sizes[static_cast<std::size_t>(class_ids[list.query])], list.items.size());
        return recall_at(list, class_ids, lambda);
    });
}

double f_score(double arp_value, double arr_value) {
    const double denom = arp_value + arr_value;
    if (denom == 0.0) return 0.0;
    return 2.0 * arp_value * arr_value / denom;
}

double nmrr_from_match_ranks(std::span<const std::size_t> match_ranks) {
    if (match_ranks.empty()) {
        throw EvaluationError("NMRR needs at least one ground-truth match");
    }
    const double ng = static_cast<double>(match_ranks.size());
    const double cutoff = 2.0 * ng;
    double rank_sum = 0.0;
    for (std::size_t rank : match_ranks) {
        const double r = static_cast<double>(rank);
        rank_sum += (r <= cutoff) ? r : 1.25 * cutoff;
    }
    const double avr = rank_sum / ng;
    const double mrr = avr - 0.5 - ng / 2.0;
    const double denom = 1.25 * cutoff - 0.5 - 0.5 * ng;
    return mrr / denom;
}

double anmrr(std::span<const RankedList> ranked, std::span<const int> class_ids) {
    double total = 0.0;
    std::vector<std::size_t> match_ranks;
    for (const RankedList& list : ranked) {
        const int query_class = class_ids[list.query];
        match_ranks.clear();
        for (std::size_t pos = 0; pos < list.items.size(); ++pos) {
            if (class_ids[list.items[pos].index] == query_class) match_ranks.push_back(pos + 1);
        }
        if (match_ranks.empty()) {
            throw EvaluationError("class " + std::to_string(query_class) +
                                  " has a single image; ANMRR needs >= 2 per class");
        }
        total += nmrr_from_match_ranks(match_ranks);
    }
    return total / static_cast<double>(ranked.size());
}

double anmrr(const FeatureSet& set) {
    return anmrr(rank_all_leave_one_out(set), set.class_ids);
}

double recognition_rate(std::span<const RankedList> ranked, std::span<const int> class_ids) {
    if (ranked.size() < 2) {
        throw EvaluationError("recognition rate needs at least 2 images");
    }
    std::size_t matches = 0;
    for (const RankedList& list : ranked) {
        if (class_ids[list.items.front().index] == class_ids[list.query]) ++matches;
    }
    return 100.0 * static_cast<double>(matches) / static_cast<double>(ranked.size());
}

double recognition_rate(const FeatureSet& set) {
    return recognition_rate(rank_all_leave_one_out(set), set.class_ids);
}

namespace {

/// 1-based rank of the first same-class gallery image for each probe.
std::vector<std::size_t> first_match_ranks(const FeatureSet& set,
                                           std::span<const std::size_t> probes,
                                           std::span<const std::size_t> gallery) {
    if (probes.empty()) {
        throw EvaluationError("empty probe set");
    }
    std::vector<std::size_t> first(probes.size(), 0);
    detail::parallel_for(probes.size(), [&](std::size_t i) {
        const RankedList ranked = rank_gallery(set.features, probes[i], gallery);
        const int probe_class = set.class_ids[probes[i]];
        for (std::size_t pos = 0; pos < ranked.items.size(); ++pos) {
            if (set.class_ids[ranked.items[pos].index] == probe_class) {
                first[i] = pos + 1;
                return;
            }
        }
    });
    for (std::size_t i = 0; i < probes.size(); ++i) {
        if (first[i] == 0) {
            throw EvaluationError("class " + std::to_string(set.class_ids[probes[i]]) +
                                  " of probe " + std::to_string(probes[i]) +
                                  " is absent from the gallery");
        }
    }
    return first;
}

std::vector<double> cmc_from_first_ranks(std::span<const std::size_t> first,
                                         std::size_t max_rank) {
    if (max_rank < 1) {
        throw ParameterError("CMC needs max_rank >= 1");
    }
    std::vector<double> scores(max_rank, 0.0);
    for (std::size_t rank = 1; rank <= max_rank; ++rank) {
        const auto hits = static_cast<double>(
            std::count_if(first.begin(), first.end(),
                          [rank](std::size_t r) { return r <= rank; }));
        scores[rank - 1] = hits / static_cast<double>(first.size());
    }
    return scores;
}

} // namespace

std::vector<double> cmc(const FeatureSet& set, const Split& split, std::size_t max_rank) {
    return cmc_from_first_ranks(first_match_ranks(set, split.probe, split.gallery), max_rank);
}

std::vector<double> cmc(std::span<const RankedList> ranked, std::span<const int> class_ids,
                        std::size_t max_rank) {
    std::vector<std::size_t> first(ranked.size(), 0);
    for (std::size_t q = 0; q < ranked.size(); ++q) {
        const int query_class = class_ids[ranked[q].query];
        for (std::size_t pos = 0; pos < ranked[q].items.size(); ++pos) {
            if (class_ids[ranked[q].items[pos].index] == query_class) {
                first[q] = pos + 1;
                break;
            }
        }
        if (first[q] == 0) {
            throw EvaluationError("class " + std::to_string(query_class) + " of probe " +
                                  std::to_string(ranked[q].query) +
                                  " is absent from the gallery");
        }
    }
    return cmc_from_first_ranks(first, max_rank);
}

std::vector<double> cmc_leave_one_out(const FeatureSet& set, std::size_t max_rank) {
    std::vector<std::size_t> all(set.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return cmc_from_first_ranks(first_match_ranks(set, all, all), max_rank);
}

double split_recognition_rate(const FeatureSet& set, const Split& split) {
    if (split.probe.empty()) {
        throw EvaluationError("empty probe set");
    }
    std::vector<unsigned char> matched(split.probe.size(), 0);
    detail::parallel_for(split.probe.size(), [&](std::size_t i) {
        const std::size_t probe = split.probe[i];
        // argmin over the gallery; ascending-index iteration keeps the
        // lowest index on distance ties
        double best = 0.0;
        std::size_t best_index = 0;
        bool have = false;
        for (std::size_t g : split.gallery) {
            if (g == probe) continue;
            const double d = chi_square(set.features[probe], set.features[g]);
            if (!have || d < best) {
                best = d;
                best_index = g;
                have = true;
            }
        }
        if (!have) {
            throw EvaluationError("empty gallery for probe " + std::to_string(probe));
        }
        matched[i] = set.class_ids[best_index] == set.class_ids[probe] ? 1 : 0;
    });
    const auto matches = static_cast<double>(
        std::count(matched.begin(), matched.end(), static_cast<unsigned char>(1)));
    return 100.0 * matches / static_cast<double>(split.probe.size());
}

std::vector<FractionRates> cross_validated_recognition(const FeatureSet& set,
                                                       std::span<const double> fractions,
                                                       int folds, std::uint64_t seed) {
    std::vector<FractionRates> results;
    results.reserve(fractions.size());
    for (double fraction : fractions) {
        const std::vector<Split> splits = make_splits(set.class_ids, fraction, folds, seed);
        FractionRates rates;
        rates.fraction = fraction;
        rates.fold_rates.reserve(splits.size());
        for (const Split& split : splits) {
            rates.fold_rates.push_back(split_recognition_rate(set, split));
        }
        rates.mean = std::accumulate(rates.fold_rates.begin(), rates.fold_rates.end(), 0.0) /
                     static_cast<double>(rates.fold_rates.size());
        results.push_back(std::move(rates));
    }
    return results;
}

std::vector<FractionRates> cross_validated_recognition(const Dataset& dataset,
                                                       const DescriptorConfig& config,
                                                       std::span<const double> fractions,
                                                       int folds, std::uint64_t seed) {
    FeatureSet set{extract_features(dataset, config), dataset.class_ids()};
    return cross_validated_recognition(set, fractions, folds, seed);
}

} // namespace calp
