// Acceptance suite: one test per shipping criterion, each printing a
// [CRITERION] pass/fail line via the listener in main().

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

#include "calp/baselines.hpp"
#include "calp/dataset.hpp"
#include "calp/descriptor.hpp"
#include "calp/descriptors.hpp"
#include "calp/feature_store.hpp"
#include "calp/matching.hpp"
#include "calp/metrics.hpp"
#include "oracle.hpp"
#include "test_support.hpp"

using namespace calp;
using namespace calp::testing;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int run_cli(const std::string& args) {
    const std::string command = std::string("'") + CALP_CLI_PATH + "' " + args;
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

} // namespace

TEST(Acceptance, C1_FeatureLengths) {
    const auto start = Clock::now();
    const GrayImage img = random_image(32, 32, 1);
    EXPECT_EQ(calp_feature(img, {1}).size(), 64u);
    EXPECT_EQ(calp_feature(img, {2}).size(), 128u);
    EXPECT_EQ(calp_feature(img, {3}).size(), 192u);
    EXPECT_EQ(lbp_feature(img).size(), 256u);
    EXPECT_EQ(cslbp_feature(img, 0).size(), 16u);
    EXPECT_EQ(csltp_feature(img, 1).size(), 9u);
    EXPECT_LT(seconds_since(start), 1.0);
}

TEST(Acceptance, C2_EncodingOracleEquivalence) {
    const auto start = Clock::now();
    std::size_t mismatches = 0;
    for (std::uint32_t seed = 0; seed < 1000; ++seed) {
        const GrayImage img = random_image(16, 16, seed);
        for (int d : {1, 2, 3}) {
            const CodeImage fast = calp_code_image(img, d);
            const std::vector<int> naive = oracle_calp_code_image(img, d);
            ASSERT_EQ(fast.size(), naive.size());
            for (std::size_t i = 0; i < naive.size(); ++i) {
                if (static_cast<int>(fast.codes[i]) != naive[i]) ++mismatches;
            }
        }
    }
    EXPECT_EQ(mismatches, 0u);
    EXPECT_LT(seconds_since(start), 10.0);
}

TEST(Acceptance, C3_WorkedEncodingExamples) {
    const GrayImage worked = from_rows({{5, 9, 1}, {4, 7, 8}, {6, 3, 2}});
    const int code = calp_code(worked, 1, 1, 1);
    EXPECT_EQ(code & 0b111000, 16);
    EXPECT_EQ(code & 0b000111, 5);
    EXPECT_EQ(code, 21);

    EXPECT_EQ(calp_code(GrayImage(3, 3, 42), 1, 1, 1), 0);

    const GrayImage descending = from_rows({{9, 8, 7}, {6, 5, 4}, {3, 2, 1}});
    EXPECT_EQ(calp_code(descending, 1, 1, 1), 63);
}

TEST(Acceptance, C4_ComplementAndMonotoneInvariance) {
    std::size_t violations = 0;
    for (std::uint32_t seed = 0; seed < 200; ++seed) {
        const GrayImage img = permutation_image(seed); // all compared pairs unequal
        GrayImage negated = img;
        for (auto& p : negated.pixels) p = static_cast<std::uint8_t>(255 - p);
        for (int d : {1, 2, 3}) {
            const CodeImage a = calp_code_image(img, d);
            const CodeImage b = calp_code_image(negated, d);
            for (std::size_t i = 0; i < a.size(); ++i) {
                if (63 - a.codes[i] != b.codes[i]) ++violations;
            }
        }
    }
    for (std::uint32_t seed = 0; seed < 200; ++seed) {
        const GrayImage img = random_image(16, 16, 5000 + seed, 0, 100);
        GrayImage mapped = img; // strictly increasing intensity mapping
        for (auto& p : mapped.pixels) p = static_cast<std::uint8_t>(2 * p + 11);
        for (int d : {1, 2, 3}) {
            if (calp_code_image(img, d).codes != calp_code_image(mapped, d).codes) ++violations;
        }
    }
    EXPECT_EQ(violations, 0u);
}

TEST(Acceptance, C5_MetricSanityOnSyntheticCorpora) {
    // duplicate-image corpus, end to end through the descriptor
    TempDir dir("acc_c5");
    const auto root = make_duplicate_corpus(dir, 3, 3, 42);
    const Dataset dataset = scan_dataset(root);
    const FeatureSet set{extract_features(dataset, DescriptorConfig{DescriptorKind::calp, 1, 0}),
                         dataset.class_ids()};
    const auto ranked = rank_all_leave_one_out(set);

    EXPECT_NEAR(arp(ranked, set.class_ids, 1), 1.0, 1e-9);
    EXPECT_NEAR(arp(ranked, set.class_ids, 2), 1.0, 1e-9); // min class size - 1
    EXPECT_NEAR(anmrr(ranked, set.class_ids), 0.0, 1e-9);
    EXPECT_NEAR(recognition_rate(ranked, set.class_ids), 100.0, 1e-9);
    EXPECT_NEAR(cmc(ranked, set.class_ids, 1)[0], 1.0, 1e-9);

    // worst case: two pair-classes on opposite corners of a square; the two
    // cross-class images always outrank the single match (rank 3 > K = 2)
    FeatureSet worst;
    auto add = [&worst](std::vector<double> bins, int label) {
        FeatureVector f;
        f.name = "synthetic";
        f.segment_length = bins.size();
        f.bins = std::move(bins);
        worst.features.push_back(std::move(f));
        worst.class_ids.push_back(label);
    };
    add({0.1, 0.4, 0.4, 0.1}, 0);
    add({0.4, 0.1, 0.1, 0.4}, 0);
    add({0.4, 0.1, 0.4, 0.1}, 1);
    add({0.1, 0.4, 0.1, 0.4}, 1);
    EXPECT_NEAR(anmrr(worst), 1.0, 1e-9);
}

TEST(Acceptance, C6_AnmrrHandCase) {
    const std::vector<std::size_t> ranks{1, 5}; // NG = 2, K = 4
    EXPECT_NEAR(nmrr_from_match_ranks(ranks), 3.0 / 7.0, 1e-9);
}

TEST(Acceptance, C7_ByteIdenticalReruns) {
    TempDir dir("acc_c7");
    const auto root = make_duplicate_corpus(dir, 3, 3, 77);

    auto bytes_of_run = [&](const std::string& tag) {
        const auto store = dir.path() / (tag + "_store.tsv");
        const auto retrieval = dir.path() / (tag + "_retrieval.csv");
        const auto recognition = dir.path() / (tag + "_recognition.csv");
        EXPECT_EQ(run_cli("extract " + q(root) + " --descriptor calp --radius 2 --out " +
                          q(store)),
                  0);
        EXPECT_EQ(run_cli("eval-retrieval " + q(store) + " --lambda-max 5 --out " + q(retrieval)),
                  0);
        EXPECT_EQ(run_cli("eval-recognition " + q(store) +
                          " --fractions 0.34,0.5 --folds 5 --seed 12 --max-rank 4 --out " +
                          q(recognition)),
                  0);
        return read_file_bytes(store) + "\x01" + read_file_bytes(retrieval) + "\x01" +
               read_file_bytes(recognition);
    };

    const std::string first = bytes_of_run("first");
    const std::string second = bytes_of_run("second");
    EXPECT_FALSE(first.empty());
    EXPECT_EQ(first, second);
}

TEST(Acceptance, C8_LinearScalingOfEncodingTime) {
    constexpr int kEncodesPerRun = 3;
    volatile std::uint64_t sink = 0;
    auto sample_ns = [&sink](const GrayImage& img) {
        const double interior =
            static_cast<double>(img.width - 2) * static_cast<double>(img.height - 2);
        const auto start = Clock::now();
        for (int i = 0; i < kEncodesPerRun; ++i) {
            const CodeImage codes = calp_code_image(img, 1);
            sink = sink + codes.codes[0];
        }
        const double elapsed =
            std::chrono::duration<double, std::nano>(Clock::now() - start).count();
        return elapsed / (interior * kEncodesPerRun);
    };

    const GrayImage small = random_image(512, 512, 1);
    const GrayImage large = random_image(1024, 1024, 2);
    sample_ns(small); // warm up caches and the allocator
    sample_ns(large);

    // runs interleave the two sizes so load spikes hit both measurements
    std::vector<double> small_samples, large_samples;
    for (int run = 0; run < 5; ++run) {
        small_samples.push_back(sample_ns(small));
        large_samples.push_back(sample_ns(large));
    }
    std::sort(small_samples.begin(), small_samples.end());
    std::sort(large_samples.begin(), large_samples.end());
    const double small_ns = small_samples[2]; // median of 5
    const double large_ns = large_samples[2];
    const double ratio = large_ns / small_ns;
    std::printf("    per-pixel: 512x512 %.3f ns, 1024x1024 %.3f ns, ratio %.3f\n", small_ns,
                large_ns, ratio);
    EXPECT_GE(ratio, 0.7);
    EXPECT_LE(ratio, 1.3);
}

TEST(Acceptance, C9_SuppliedCorpusDirectionalClaim) {
    const char* corpus = std::getenv("CALTECH_FACE_DIR");
    if (corpus == nullptr || corpus[0] == '\0') {
        GTEST_SKIP() << "external corpus not supplied (set CALTECH_FACE_DIR to run; "
                        "criteria 1-8 substitute for absolute paper figures)";
    }
    const Dataset dataset = scan_dataset(corpus);
    ASSERT_GE(dataset.image_count(), 2u);

    auto arp_at_10 = [&](const DescriptorConfig& config) {
        const FeatureSet set{extract_features(dataset, config), dataset.class_ids()};
        const auto ranked = rank_all_leave_one_out(set);
        return arp(ranked, set.class_ids, 10);
    };
    const double calp_arp = arp_at_10({DescriptorKind::calp, 2, 0});
    const double cslbp_arp = arp_at_10({DescriptorKind::cslbp, 1, 0});
    const double lbp_arp = arp_at_10({DescriptorKind::lbp, 1, 0});
    std::printf("    ARP@10: calp(R=2) %.4f, cslbp %.4f, lbp %.4f\n", calp_arp, cslbp_arp,
                lbp_arp);
    EXPECT_GT(calp_arp, cslbp_arp);
    EXPECT_GT(calp_arp, lbp_arp);
}

namespace {

class CriterionPrinter : public ::testing::EmptyTestEventListener {
    void OnTestEnd(const ::testing::TestInfo& info) override {
        const char* verdict = "FAIL";
        if (info.result()->Skipped()) {
            verdict = "SKIP";
        } else if (info.result()->Passed()) {
            verdict = "PASS";
        }
        std::printf("[CRITERION] %s: %s\n", info.name(), verdict);
        std::fflush(stdout);
    }
};

} // namespace

int main(int argc, char** argv) {
    ::testing::InitGoogleTest(&argc, argv);
    ::testing::UnitTest::GetInstance()->listeners().Append(new CriterionPrinter);
    return RUN_ALL_TESTS();
}
