#include "calp/feature_store.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <system_error>

#include "calp/errors.hpp"

namespace fs = std::filesystem;

namespace calp {

namespace {

constexpr std::string_view kFormatTag = "calp-store/1";

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw Error("cannot format numeric value");
    return std::string(buf, ptr);
}

double parse_double(std::string_view text, const fs::path& path) {
    double value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw DatasetError("bad numeric value '" + std::string(text) + "' in store " +
                           path.string());
    }
    return value;
}

std::size_t parse_size(std::string_view text, const fs::path& path) {
    std::size_t value{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw DatasetError("bad integer value '" + std::string(text) + "' in store " +
                           path.string());
    }
    return value;
}

void require_plain_text(const std::string& text, const char* what) {
    if (text.find('\t') != std::string::npos || text.find('\n') != std::string::npos) {
        throw DatasetError(std::string(what) + " contains a tab or newline: " + text);
    }
}

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

} // namespace

FeatureSet FeatureStore::to_feature_set() const {
    FeatureSet set;
    set.features.reserve(records.size());
    set.class_ids.reserve(records.size());
    std::map<std::string, int> ids;
    for (const StoreRecord& record : records) {
        auto [it, inserted] = ids.emplace(record.label, static_cast<int>(ids.size()));
        set.class_ids.push_back(it->second);
        FeatureVector feature;
        feature.name = descriptor_name(descriptor.kind);
        feature.segment_length =
            descriptor.kind == DescriptorKind::calp ? 64 : record.bins.size();
        feature.bins = record.bins;
        set.features.push_back(std::move(feature));
    }
    return set;
}

std::vector<std::string> FeatureStore::class_labels() const {
    std::vector<std::string> labels;
    std::set<std::string> seen;
    for (const StoreRecord& record : records) {
        if (seen.insert(record.label).second) labels.push_back(record.label);
    }
    return labels;
}

std::size_t FeatureStore::find_record(const std::string& relative_path) const {
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (records[i].relative_path == relative_path) return i;
    }
    return npos;
}

void write_store(const FeatureStore& store, const fs::path& path) {
    std::set<std::string> paths;
    for (const StoreRecord& record : store.records) {
        if (record.bins.size() != store.bin_count) {
            throw DatasetError("record " + record.relative_path + " has " +
                               std::to_string(record.bins.size()) + " bins, header says " +
                               std::to_string(store.bin_count));
        }
        require_plain_text(record.relative_path, "record path");
        require_plain_text(record.label, "record label");
        if (!paths.insert(record.relative_path).second) {
            throw DatasetError("duplicate record path: " + record.relative_path);
        }
    }
    require_plain_text(store.root, "store root");

    const fs::path temp = path.string() + ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + temp.string());
        out << "#format=" << kFormatTag << "\n";
        out << "#descriptor=" << descriptor_name(store.descriptor.kind) << "\n";
        out << "#radius=" << store.descriptor.radius << "\n";
        out << "#threshold=" << store.descriptor.threshold << "\n";
        out << "#bins=" << store.bin_count << "\n";
        out << "#root=" << store.root << "\n";
        out << "#images=" << store.records.size() << "\n";
        out << "#skipped=" << store.skipped_files << "\n";
        for (const StoreRecord& record : store.records) {
            out << record.relative_path << '\t' << record.label;
            for (double bin : record.bins) out << '\t' << format_double(bin);
            out << '\n';
        }
        out.flush();
        if (!out) {
            out.close();
            std::error_code ec;
            fs::remove(temp, ec);
            throw IoError("failed while writing store: " + temp.string());
        }
    }
    std::error_code ec;
    fs::rename(temp, path, ec);
    if (ec) {
        fs::remove(temp, ec);
        throw IoError("cannot move store into place: " + path.string());
    }
}

FeatureStore read_store(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read store file: " + path.string());

    FeatureStore store;
    std::map<std::string, std::string> header;
    std::string line;
    std::size_t line_number = 0;
    std::set<std::string> paths;
    bool in_header = true;

    auto finish_header = [&] {
        for (const char* key : {"format", "descriptor", "radius", "threshold", "bins"}) {
            if (!header.count(key)) {
                throw DatasetError("store " + path.string() + " is missing header key '" + key +
                                   "'");
            }
        }
        if (header["format"] != kFormatTag) {
            throw DatasetError("unsupported store format '" + header["format"] + "' in " +
                               path.string());
        }
        store.descriptor.kind = parse_descriptor(header["descriptor"]);
        store.descriptor.radius = static_cast<int>(parse_size(header["radius"], path));
        store.descriptor.threshold = static_cast<int>(parse_size(header["threshold"], path));
        store.bin_count = parse_size(header["bins"], path);
        store.root = header.count("root") ? header["root"] : "";
        store.skipped_files =
            header.count("skipped") ? static_cast<int>(parse_size(header["skipped"], path)) : 0;
        in_header = false;
    };

    while (std::getline(in, line)) {
        ++line_number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (in_header && line.front() == '#') {
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos) {
                throw DatasetError("malformed header line " + std::to_string(line_number) +
                                   " in store " + path.string());
            }
            header[line.substr(1, eq - 1)] = line.substr(eq + 1);
            continue;
        }
        if (in_header) finish_header();
        const std::vector<std::string_view> fields = split_tabs(line);
        if (fields.size() != store.bin_count + 2) {
            throw DatasetError("record at line " + std::to_string(line_number) + " has " +
                               std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(store.bin_count + 2) + " in store " + path.string());
        }
        StoreRecord record;
        record.relative_path = std::string(fields[0]);
        record.label = std::string(fields[1]);
        if (!paths.insert(record.relative_path).second) {
            throw DatasetError("duplicate record path '" + record.relative_path + "' in store " +
                               path.string());
        }
        record.bins.reserve(store.bin_count);
        for (std::size_t i = 2; i < fields.size(); ++i) {
            record.bins.push_back(parse_double(fields[i], path));
        }
        store.records.push_back(std::move(record));
    }

    if (in_header) {
        if (header.empty()) {
            throw DatasetError("store file is empty or has no header: " + path.string());
        }
        finish_header();
    }
    return store;
}

} // namespace calp
