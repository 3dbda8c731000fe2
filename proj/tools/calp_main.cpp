#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "calp/commands.hpp"
#include "calp/descriptors.hpp"
#include "calp/errors.hpp"

namespace {

calp::DescriptorConfig resolve_descriptor(const std::string& name, int radius, bool radius_set,
                                          int threshold, bool threshold_set) {
    calp::DescriptorConfig config =
        calp::DescriptorConfig::with_defaults(calp::parse_descriptor(name));
    if (radius_set) config.radius = radius;
    if (threshold_set) config.threshold = threshold;
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"CALP descriptor toolkit: feature extraction, retrieval, and "
                 "recognition benchmarking over directory-per-class image corpora"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Key-value configuration file (flags override it)");

    // extract
    std::string extract_root, extract_out, extract_descriptor = "calp";
    int extract_radius = 1, extract_threshold = 0;
    auto* extract = app.add_subcommand("extract", "Extract features into a store file");
    extract->add_option("root", extract_root, "Corpus root (<root>/<class>/<images>)")
        ->required();
    extract->add_option("--descriptor", extract_descriptor, "calp | lbp | cslbp | csltp")
        ->capture_default_str();
    auto* extract_radius_opt =
        extract->add_option("--radius", extract_radius, "Cascade depth R (calp)");
    auto* extract_threshold_opt =
        extract->add_option("--threshold", extract_threshold, "Threshold T (cslbp/csltp)");
    extract->add_option("--out", extract_out, "Store file to write")->required();

    // retrieve
    std::string retrieve_store, retrieve_query;
    std::size_t retrieve_k = 10;
    auto* retrieve = app.add_subcommand("retrieve", "Rank the store against a query image");
    retrieve->add_option("store", retrieve_store, "Feature store file")->required();
    retrieve->add_option("query", retrieve_query, "Image path or stored relative path")
        ->required();
    auto* retrieve_k_opt =
        retrieve->add_option("-k,--top", retrieve_k, "Rows to print")->capture_default_str();

    // eval-retrieval
    std::string evalret_store, evalret_out;
    std::size_t evalret_lambda_max = 10;
    auto* evalret =
        app.add_subcommand("eval-retrieval", "ARP/ARR/F-Score per cutoff plus ANMRR, as CSV");
    evalret->add_option("store", evalret_store, "Feature store file")->required();
    auto* evalret_lambda_opt =
        evalret->add_option("--lambda-max", evalret_lambda_max, "Largest retrieval cutoff")
            ->capture_default_str();
    evalret->add_option("--out", evalret_out, "CSV file to write")->required();

    // eval-recognition
    std::string evalrec_store, evalrec_out;
    std::vector<double> evalrec_fractions = {0.2, 0.3, 0.4, 0.5, 0.6};
    int evalrec_folds = 10;
    std::uint64_t evalrec_seed = 1;
    std::size_t evalrec_max_rank = 10;
    auto* evalrec = app.add_subcommand(
        "eval-recognition", "Recognition rate, CMC, and cross-validated rates, as CSV");
    evalrec->add_option("store", evalrec_store, "Feature store file")->required();
    evalrec->add_option("--fractions", evalrec_fractions, "Probe fractions")
        ->delimiter(',')
        ->capture_default_str();
    evalrec->add_option("--folds", evalrec_folds, "Folds per fraction")->capture_default_str();
    evalrec->add_option("--seed", evalrec_seed, "Split seed")->capture_default_str();
    auto* evalrec_rank_opt =
        evalrec->add_option("--max-rank", evalrec_max_rank, "CMC table depth")
            ->capture_default_str();
    evalrec->add_option("--out", evalrec_out, "CSV file to write")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (extract->parsed()) {
            calp::ExtractOptions options;
            options.root = extract_root;
            options.out = extract_out;
            options.descriptor = resolve_descriptor(
                extract_descriptor, extract_radius, extract_radius_opt->count() > 0,
                extract_threshold, extract_threshold_opt->count() > 0);
            calp::cmd_extract(options, std::cerr);
        } else if (retrieve->parsed()) {
            calp::RetrieveOptions options;
            options.store = retrieve_store;
            options.query = retrieve_query;
            options.top_k = retrieve_k;
            options.top_k_explicit = retrieve_k_opt->count() > 0;
            calp::cmd_retrieve(options, std::cout);
        } else if (evalret->parsed()) {
            calp::EvalRetrievalOptions options;
            options.store = evalret_store;
            options.out = evalret_out;
            options.lambda_max = evalret_lambda_max;
            options.lambda_max_explicit = evalret_lambda_opt->count() > 0;
            calp::cmd_eval_retrieval(options);
        } else if (evalrec->parsed()) {
            calp::EvalRecognitionOptions options;
            options.store = evalrec_store;
            options.out = evalrec_out;
            options.fractions = evalrec_fractions;
            options.folds = evalrec_folds;
            options.seed = evalrec_seed;
            options.max_rank = evalrec_max_rank;
            options.max_rank_explicit = evalrec_rank_opt->count() > 0;
            calp::cmd_eval_recognition(options);
        }
    } catch (const calp::ParameterError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const calp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
