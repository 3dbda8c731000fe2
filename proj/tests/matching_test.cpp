#include "calp/matching.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "calp/errors.hpp"
#include "oracle.hpp"

using namespace calp;
using namespace calp::testing;

namespace {

FeatureVector make_feature(std::vector<double> bins) {
    FeatureVector f;
    f.name = "test";
    f.segment_length = bins.size();
    f.bins = std::move(bins);
    return f;
}

std::vector<FeatureVector> from_corpus(const OracleCorpus& corpus) {
    std::vector<FeatureVector> features;
    features.reserve(corpus.features.size());
    for (const auto& bins : corpus.features) features.push_back(make_feature(bins));
    return features;
}

std::vector<std::size_t> all_indices(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return v;
}

} // namespace

TEST(ChiSquare, KnownValues) {
    const std::vector<double> a{1.0, 0.0};
    const std::vector<double> b{0.0, 1.0};
    EXPECT_DOUBLE_EQ(chi_square(a, a), 0.0);
    EXPECT_DOUBLE_EQ(chi_square(a, b), 1.0);
    const std::vector<double> zeros{0.0, 0.0};
    EXPECT_DOUBLE_EQ(chi_square(zeros, zeros), 0.0);
}

TEST(ChiSquare, PositiveForDistinctNormalizedHistograms) {
    const OracleCorpus corpus = random_corpus(1, 6, 8, 99);
    for (std::size_t i = 0; i < corpus.features.size(); ++i) {
        for (std::size_t j = i + 1; j < corpus.features.size(); ++j) {
            EXPECT_GT(chi_square(std::span<const double>(corpus.features[i]),
                                 std::span<const double>(corpus.features[j])),
                      0.0);
        }
    }
}

TEST(ChiSquare, LengthMismatchThrows) {
    const std::vector<double> a{1.0, 0.0};
    const std::vector<double> b{1.0};
    EXPECT_THROW(chi_square(std::span<const double>(a), std::span<const double>(b)),
                 DimensionError);
}

TEST(ChiSquare, SymmetricNonNegativeFinite) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<double> x(32), y(32);
        for (auto& v : x) v = dist(rng) < 0.2 ? 0.0 : dist(rng);
        for (auto& v : y) v = dist(rng) < 0.2 ? 0.0 : dist(rng);
        const double d = chi_square(std::span<const double>(x), std::span<const double>(y));
        EXPECT_GE(d, 0.0);
        EXPECT_TRUE(std::isfinite(d));
        EXPECT_DOUBLE_EQ(d, chi_square(std::span<const double>(y), std::span<const double>(x)));
    }
}

TEST(ChiSquare, HomogeneousDegreeOne) {
    const std::vector<double> x{0.2, 0.5, 0.3};
    const std::vector<double> y{0.6, 0.1, 0.3};
    const double base = chi_square(std::span<const double>(x), std::span<const double>(y));
    std::vector<double> xs = x, ys = y;
    for (auto& v : xs) v *= 3.7;
    for (auto& v : ys) v *= 3.7;
    EXPECT_NEAR(chi_square(std::span<const double>(xs), std::span<const double>(ys)), 3.7 * base,
                1e-12);
}

TEST(RankGallery, DuplicateSitsAtRankOneWithZeroDistance) {
    std::vector<FeatureVector> features{make_feature({1, 0}), make_feature({0.5, 0.5}),
                                        make_feature({1, 0})};
    const auto gallery = all_indices(features.size());
    const RankedList ranked = rank_gallery(features, 0, gallery);
    ASSERT_EQ(ranked.items.size(), 2u);
    EXPECT_EQ(ranked.items[0].index, 2u);
    EXPECT_DOUBLE_EQ(ranked.items[0].distance, 0.0);
    EXPECT_EQ(ranked.query, 0u);
    EXPECT_EQ(ranked.rank_of(2), 1u);
    EXPECT_EQ(ranked.rank_of(1), 2u);
    EXPECT_EQ(ranked.rank_of(0), 0u); // query never appears
}

TEST(RankGallery, TiesBreakByAscendingIndex) {
    std::vector<FeatureVector> features{make_feature({1, 0}), make_feature({0, 1}),
                                        make_feature({0, 1})};
    const auto gallery = all_indices(features.size());
    const RankedList ranked = rank_gallery(features, 0, gallery);
    ASSERT_EQ(ranked.items.size(), 2u);
    EXPECT_DOUBLE_EQ(ranked.items[0].distance, ranked.items[1].distance);
    EXPECT_EQ(ranked.items[0].index, 1u);
    EXPECT_EQ(ranked.items[1].index, 2u);
}

TEST(RankGallery, EmptyGalleryThrows) {
    std::vector<FeatureVector> features{make_feature({1, 0})};
    const std::vector<std::size_t> only_self{0};
    EXPECT_THROW(rank_gallery(features, 0, only_self), EvaluationError);
}

TEST(RankGallery, MatchesCountingOracle) {
    for (std::uint32_t seed = 0; seed < 10; ++seed) {
        const OracleCorpus corpus = random_corpus(3, 4, 8, seed);
        const std::vector<FeatureVector> features = from_corpus(corpus);
        const auto gallery = all_indices(features.size());
        for (std::size_t q = 0; q < features.size(); ++q) {
            const RankedList ranked = rank_gallery(features, q, gallery);
            for (std::size_t i = 0; i < features.size(); ++i) {
                if (i == q) continue;
                ASSERT_EQ(ranked.rank_of(i), corpus.rank(q, i)) << "seed " << seed;
            }
        }
    }
}

TEST(RankGallery, ScalingLeavesOrderUnchanged) {
    const OracleCorpus corpus = random_corpus(3, 3, 8, 17);
    std::vector<FeatureVector> features = from_corpus(corpus);
    std::vector<FeatureVector> scaled = features;
    for (auto& f : scaled) {
        for (auto& b : f.bins) b *= 41.5;
    }
    const auto gallery = all_indices(features.size());
    for (std::size_t q = 0; q < features.size(); ++q) {
        const RankedList a = rank_gallery(features, q, gallery);
        const RankedList b = rank_gallery(scaled, q, gallery);
        ASSERT_EQ(a.items.size(), b.items.size());
        for (std::size_t i = 0; i < a.items.size(); ++i) {
            EXPECT_EQ(a.items[i].index, b.items[i].index);
        }
    }
}

TEST(RankAllLeaveOneOut, CoversEveryQuery) {
    const OracleCorpus corpus = random_corpus(2, 3, 8, 3);
    FeatureSet set{from_corpus(corpus), corpus.labels};
    const std::vector<RankedList> ranked = rank_all_leave_one_out(set);
    ASSERT_EQ(ranked.size(), set.size());
    for (std::size_t q = 0; q < ranked.size(); ++q) {
        EXPECT_EQ(ranked[q].query, q);
        EXPECT_EQ(ranked[q].items.size(), set.size() - 1);
        for (std::size_t i = 1; i < ranked[q].items.size(); ++i) {
            EXPECT_LE(ranked[q].items[i - 1].distance, ranked[q].items[i].distance);
        }
    }
    EXPECT_EQ(set.class_size_of(0), 3u);
}
