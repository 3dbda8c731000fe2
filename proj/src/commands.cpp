#include "calp/commands.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "calp/dataset.hpp"
#include "calp/errors.hpp"
#include "calp/feature_store.hpp"
#include "calp/matching.hpp"
#include "calp/metrics.hpp"

namespace fs = std::filesystem;

namespace calp {

namespace {

std::string fixed6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

void write_text_atomic(const fs::path& path, const std::string& content) {
    const fs::path temp = path.string() + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + temp.string());
        out << content;
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            fs::remove(temp, ec);
            throw IoError("failed while writing: " + temp.string());
        }
    }
    std::error_code ec;
    fs::rename(temp, path, ec);
    if (ec) {
        fs::remove(temp, ec);
        throw IoError("cannot move report into place: " + path.string());
    }
}

/// ANMRR (and CMC over a full split) need a ground-truth match per query.
void require_no_singleton_class(const FeatureStore& store) {
    std::map<std::string, std::size_t> counts;
    for (const StoreRecord& record : store.records) ++counts[record.label];
    for (const auto& [label, count] : counts) {
        if (count < 2) {
            throw EvaluationError("class '" + label + "' has a single image; every class needs >= 2");
        }
    }
}

std::size_t effective_limit(std::size_t requested, bool is_explicit, std::size_t maximum,
                            const char* what) {
    if (maximum < 1) {
        throw EvaluationError("store has too few records to evaluate");
    }
    if (is_explicit) {
        if (requested < 1 || requested > maximum) {
            throw ParameterError(std::string(what) + " " + std::to_string(requested) +
                                 " outside [1, " + std::to_string(maximum) + "]");
        }
        return requested;
    }
    return std::min(requested, maximum);
}

} // namespace

void cmd_extract(const ExtractOptions& options, std::ostream& diag) {
    const Dataset dataset = scan_dataset(options.root, &diag);
    const std::vector<FeatureVector> features = extract_features(dataset, options.descriptor);

    FeatureStore store;
    store.descriptor = options.descriptor;
    store.bin_count = feature_length(options.descriptor);
    store.root = options.root.string();
    store.skipped_files = dataset.skipped_files;
    store.records.reserve(features.size());

    std::size_t flat = 0;
    for (const DatasetClass& cls : dataset.classes) {
        for (const ImageEntry& entry : cls.images) {
            store.records.push_back({entry.relative_path, cls.label, features[flat].bins});
            ++flat;
        }
    }
    write_store(store, options.out);
}

void cmd_retrieve(const RetrieveOptions& options, std::ostream& out) {
    const FeatureStore store = read_store(options.store);
    if (store.records.empty()) {
        throw EvaluationError("store has no records: " + options.store.string());
    }
    FeatureSet set = store.to_feature_set();

    const std::size_t stored_index = store.find_record(options.query);
    std::size_t query_index;
    if (stored_index != FeatureStore::npos) {
        query_index = stored_index;
    } else {
        // not a stored path: treat as an image file and describe it with the
        // store's own descriptor configuration
        const GrayImage image = load_image(options.query);
        set.features.push_back(compute_feature(image, store.descriptor));
        query_index = set.features.size() - 1;
    }

    const std::size_t available =
        store.records.size() - (stored_index != FeatureStore::npos ? 1 : 0);
    const std::size_t k =
        effective_limit(options.top_k, options.top_k_explicit, available, "retrieval count k");

    std::vector<std::size_t> gallery(store.records.size());
    std::iota(gallery.begin(), gallery.end(), std::size_t{0});
    const RankedList ranked = rank_gallery(set.features, query_index, gallery);

    out << "rank,path,class,distance\n";
    for (std::size_t pos = 0; pos < k; ++pos) {
        const RankedItem& item = ranked.items[pos];
        out << (pos + 1) << ',' << store.records[item.index].relative_path << ','
            << store.records[item.index].label << ',' << fixed6(item.distance) << "\n";
    }
}

void cmd_eval_retrieval(const EvalRetrievalOptions& options) {
    const FeatureStore store = read_store(options.store);
    if (store.records.size() < 2) {
        throw EvaluationError("retrieval evaluation needs at least 2 records");
    }
    require_no_singleton_class(store);

    const FeatureSet set = store.to_feature_set();
    const std::size_t lambda_max =
        effective_limit(options.lambda_max, options.lambda_max_explicit,
                        store.records.size() - 1, "lambda-max");

    const std::vector<RankedList> ranked = rank_all_leave_one_out(set);

    std::string csv = "lambda,arp,arr,f_score\n";
    for (std::size_t lambda = 1; lambda <= lambda_max; ++lambda) {
        const double arp_value = arp(ranked, set.class_ids, lambda);
        const double arr_value = arr(ranked, set.class_ids, lambda);
        csv += std::to_string(lambda) + ',' + fixed6(arp_value) + ',' + fixed6(arr_value) + ',' +
               fixed6(f_score(arp_value, arr_value)) + "\n";
    }
    csv += "anmrr," + fixed6(anmrr(ranked, set.class_ids)) + ",,\n";
    write_text_atomic(options.out, csv);
}

void cmd_eval_recognition(const EvalRecognitionOptions& options) {
    const FeatureStore store = read_store(options.store);
    if (store.records.size() < 2) {
        throw EvaluationError("recognition evaluation needs at least 2 records");
    }
    require_no_singleton_class(store);

    const FeatureSet set = store.to_feature_set();
    const std::size_t max_rank = effective_limit(
        options.max_rank, options.max_rank_explicit, store.records.size() - 1, "max-rank");

    const std::vector<RankedList> ranked = rank_all_leave_one_out(set);
    const double loo_rate = recognition_rate(ranked, set.class_ids);
    const std::vector<double> cmc_scores = cmc(ranked, set.class_ids, max_rank);
    const std::vector<FractionRates> cross =
        cross_validated_recognition(set, options.fractions, options.folds, options.seed);

    std::string csv = "metric,fraction,fold,rank,value\n";
    csv += "loo_recognition_rate,,,," + fixed6(loo_rate) + "\n";
    for (std::size_t rank = 1; rank <= cmc_scores.size(); ++rank) {
        csv += "cmc,,," + std::to_string(rank) + ',' + fixed6(cmc_scores[rank - 1]) + "\n";
    }
    for (const FractionRates& rates : cross) {
        for (std::size_t fold = 0; fold < rates.fold_rates.size(); ++fold) {
            csv += "fold_recognition_rate," + fixed6(rates.fraction) + ',' +
                   std::to_string(fold + 1) + ",," + fixed6(rates.fold_rates[fold]) + "\n";
        }
        csv += "mean_recognition_rate," + fixed6(rates.fraction) + ",,," + fixed6(rates.mean) +
               "\n";
    }
    write_text_atomic(options.out, csv);
}

} // namespace calp
