#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "calp/descriptors.hpp"

namespace calp {

/// Batch command implementations behind the CLI. Each throws a calp::Error
/// subtype on failure; the CLI front end maps ParameterError to exit 1 and
/// other errors to exit 2. All outputs are deterministic functions of their
/// inputs: reruns produce byte-identical files.

struct ExtractOptions {
    std::filesystem::path root;
    std::filesystem::path out;
    DescriptorConfig descriptor;
};

/// Scans a corpus, extracts one feature per image, and writes a store whose
/// records are ordered by (class label, file name). Per-file skip warnings
/// go to `diag`.
void cmd_extract(const ExtractOptions& options, std::ostream& diag);

struct RetrieveOptions {
    std::filesystem::path store;
    std::string query;       // stored relative path, or an image file path
    std::size_t top_k = 10;  // clamped default; explicit overflow is an error
    bool top_k_explicit = false;
};

/// Ranks the store against the query and writes "rank,path,class,distance"
/// rows to `out`. A stored query is excluded from its own results.
void cmd_retrieve(const RetrieveOptions& options, std::ostream& out);

struct EvalRetrievalOptions {
    std::filesystem::path store;
    std::filesystem::path out;
    std::size_t lambda_max = 10;  // clamped to dataset size - 1 unless explicit
    bool lambda_max_explicit = false;
};

/// Writes a CSV with one "lambda,arp,arr,f_score" row per lambda in
/// 1..lambda_max plus a trailing "anmrr,<value>,," summary row.
void cmd_eval_retrieval(const EvalRetrievalOptions& options);

struct EvalRecognitionOptions {
    std::filesystem::path store;
    std::filesystem::path out;
    std::vector<double> fractions = {0.2, 0.3, 0.4, 0.5, 0.6};
    int folds = 10;
    std::uint64_t seed = 1;
    std::size_t max_rank = 10;  // CMC table depth, clamped to dataset size - 1
    bool max_rank_explicit = false;
};

/// Writes a "metric,fraction,fold,rank,value" CSV holding the leave-one-out
/// recognition rate, the leave-one-out CMC table, and per-fraction x
/// per-fold cross-validated recognition rates with their means.
void cmd_eval_recognition(const EvalRecognitionOptions& options);

} // namespace calp
