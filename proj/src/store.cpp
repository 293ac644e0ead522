#include "joinscout/store.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace joinscout {

using nlohmann::json;

uint64_t fnv1a64(std::string_view bytes) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : bytes) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string content_digest(std::string_view bytes) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

std::string file_digest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return content_digest(buf.str());
}

namespace {

// Keys follow the profile's meta-feature names.
json profile_to_json(const AttributeProfile& p) {
    json j;
    j["attribute_name"] = p.attribute_name;
    j["dataset_name"] = p.dataset_name;
    j["row_count"] = p.row_count;
    j["cardinality"] = p.cardinality;
    j["uniqueness"] = p.uniqueness;
    j["incompleteness"] = p.incompleteness;
    j["entropy"] = p.entropy;
    j["average_frequency"] = p.avg_frequency;
    j["min_frequency"] = p.min_frequency;
    j["max_frequency"] = p.max_frequency;
    j["sd_frequency"] = p.sd_frequency;
    j["octiles"] = p.octiles;
    j["min_perc_frequency"] = p.min_perc_frequency;
    j["max_perc_frequency"] = p.max_perc_frequency;
    j["sd_perc_frequency"] = p.sd_perc_frequency;
    j["constancy"] = p.constancy;
    j["frequent_words"] = p.frequent_words;
    j["soundex"] = p.soundex_words;
    j["data_type"] = data_type_name(p.data_type);
    j["specific_type"] = specific_type_name(p.specific_type);
    j["percentage_data_type"] = p.pct_data_type;
    j["percentage_specific_type"] = p.pct_specific_type;
    j["longest_string"] = p.longest_string;
    j["shortest_string"] = p.shortest_string;
    j["average_string"] = p.avg_string;
    j["number_words"] = p.number_words;
    j["average_words"] = p.avg_words;
    j["min_words"] = p.min_words;
    j["max_words"] = p.max_words;
    j["sd_words"] = p.sd_words;
    return j;
}

AttributeProfile profile_from_json(const json& j) {
    AttributeProfile p;
    p.attribute_name = j.at("attribute_name").get<std::string>();
    p.dataset_name = j.at("dataset_name").get<std::string>();
    p.row_count = j.at("row_count").get<uint64_t>();
    p.cardinality = j.at("cardinality").get<uint64_t>();
    p.uniqueness = j.at("uniqueness").get<double>();
    p.incompleteness = j.at("incompleteness").get<double>();
    p.entropy = j.at("entropy").get<double>();
    p.avg_frequency = j.at("average_frequency").get<double>();
    p.min_frequency = j.at("min_frequency").get<double>();
    p.max_frequency = j.at("max_frequency").get<double>();
    p.sd_frequency = j.at("sd_frequency").get<double>();
    const auto& oct = j.at("octiles");
    if (oct.size() != p.octiles.size()) {
        throw std::runtime_error("profile document: octiles must have 8 entries");
    }
    for (size_t i = 0; i < p.octiles.size(); ++i) {
        p.octiles[i] = oct.at(i).get<double>();
    }
    p.min_perc_frequency = j.at("min_perc_frequency").get<double>();
    p.max_perc_frequency = j.at("max_perc_frequency").get<double>();
    p.sd_perc_frequency = j.at("sd_perc_frequency").get<double>();
    p.constancy = j.at("constancy").get<double>();
    p.frequent_words = j.at("frequent_words").get<std::vector<std::string>>();
    p.soundex_words = j.at("soundex").get<std::vector<std::string>>();
    const auto dt = data_type_from_name(j.at("data_type").get<std::string>());
    const auto st =
        specific_type_from_name(j.at("specific_type").get<std::string>());
    if (!dt || !st) {
        throw std::runtime_error("profile document: unknown type name");
    }
    p.data_type = *dt;
    p.specific_type = *st;
    p.pct_data_type =
        j.at("percentage_data_type").get<std::map<std::string, double>>();
    p.pct_specific_type =
        j.at("percentage_specific_type").get<std::map<std::string, double>>();
    p.longest_string = j.at("longest_string").get<double>();
    p.shortest_string = j.at("shortest_string").get<double>();
    p.avg_string = j.at("average_string").get<double>();
    p.number_words = j.at("number_words").get<double>();
    p.avg_words = j.at("average_words").get<double>();
    p.min_words = j.at("min_words").get<double>();
    p.max_words = j.at("max_words").get<double>();
    p.sd_words = j.at("sd_words").get<double>();
    // Sketch sets are stored sorted; tolerate any order on disk.
    std::sort(p.frequent_words.begin(), p.frequent_words.end());
    std::sort(p.soundex_words.begin(), p.soundex_words.end());
    return p;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
    if (!out) throw std::runtime_error("failed writing file: " + path);
}

json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed document " + path + ": " +
                                 e.what());
    }
    return j;
}

}  // namespace

std::string profile_document_path(const std::string& out_dir,
                                  const std::string& dataset_name) {
    std::string dir = out_dir.empty() ? "." : out_dir;
    if (dir.back() != '/') dir += '/';
    return dir + dataset_name + ".profile.json";
}

void save_profiles(const std::string& path, const ProfileDocument& doc) {
    json j;
    j["format_version"] = doc.format_version;
    j["dataset_name"] = doc.dataset_name;
    j["source_path"] = doc.source_path;
    j["content_digest"] = doc.digest;
    j["row_count"] = doc.row_count;
    json attrs = json::array();
    for (const auto& p : doc.attributes) attrs.push_back(profile_to_json(p));
    j["attributes"] = std::move(attrs);
    write_text_file(path, j.dump(2) + "\n");
}

ProfileDocument load_profiles(const std::string& path,
                              std::ostream* warnings) {
    const json j = read_json_file(path);
    ProfileDocument doc;
    try {
        doc.format_version = j.at("format_version").get<int>();
        if (doc.format_version != kProfileFormatVersion) {
            throw std::runtime_error(
                "unknown profile format_version " +
                std::to_string(doc.format_version) + " in " + path +
                " (supported: " + std::to_string(kProfileFormatVersion) + ")");
        }
        doc.dataset_name = j.at("dataset_name").get<std::string>();
        doc.source_path = j.at("source_path").get<std::string>();
        doc.digest = j.at("content_digest").get<std::string>();
        doc.row_count = j.at("row_count").get<uint64_t>();
        for (const auto& a : j.at("attributes")) {
            doc.attributes.push_back(profile_from_json(a));
        }
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed profile document " + path + ": " +
                                 e.what());
    }
    if (warnings && !doc.source_path.empty()) {
        std::ifstream src(doc.source_path, std::ios::binary);
        if (src) {
            std::ostringstream buf;
            buf << src.rdbuf();
            if (content_digest(buf.str()) != doc.digest) {
                *warnings << "warning: " << doc.source_path
                          << " changed since profiling (digest mismatch)\n";
            }
        }
    }
    return doc;
}

namespace {

json forest_to_json(const Forest& f) {
    json j;
    j["input_width"] = f.input_width;
    json trees = json::array();
    for (const auto& tree : f.trees) {
        json nodes = json::array();
        for (const auto& n : tree.nodes) {
            nodes.push_back(json{{"f", n.feature},
                                 {"t", n.threshold},
                                 {"l", n.left},
                                 {"r", n.right},
                                 {"p", n.positive_fraction}});
        }
        trees.push_back(std::move(nodes));
    }
    j["trees"] = std::move(trees);
    return j;
}

Forest forest_from_json(const json& j) {
    Forest f;
    f.input_width = j.at("input_width").get<int>();
    for (const auto& tree_json : j.at("trees")) {
        Tree tree;
        for (const auto& n : tree_json) {
            TreeNode node;
            node.feature = n.at("f").get<int32_t>();
            node.threshold = n.at("t").get<double>();
            node.left = n.at("l").get<int32_t>();
            node.right = n.at("r").get<int32_t>();
            node.positive_fraction = n.at("p").get<double>();
            tree.nodes.push_back(node);
        }
        f.trees.push_back(std::move(tree));
    }
    return f;
}

json params_to_json(const ForestParams& p) {
    return json{{"tree_count", p.tree_count},
                {"max_depth", p.max_depth},
                {"max_split_candidates", p.max_split_candidates},
                {"feature_subset_size", p.feature_subset_size},
                {"bootstrap", p.bootstrap},
                {"seed", p.seed}};
}

ForestParams params_from_json(const json& j) {
    ForestParams p;
    p.tree_count = j.at("tree_count").get<int>();
    p.max_depth = j.at("max_depth").get<int>();
    p.max_split_candidates = j.at("max_split_candidates").get<int>();
    p.feature_subset_size = j.at("feature_subset_size").get<int>();
    p.bootstrap = j.at("bootstrap").get<bool>();
    p.seed = j.at("seed").get<uint64_t>();
    return p;
}

}  // namespace

void save_model(const std::string& path, const ChainModel& model) {
    json j;
    j["format_version"] = kModelFormatVersion;
    j["schema_version"] = model.schema_version;
    j["chain_enabled"] = model.chain_enabled;
    j["downgrade_threshold"] = model.downgrade_threshold;
    j["seed"] = model.seed;
    j["normalization_policy"] = model.normalization_policy;
    json params = json::array();
    json forests = json::array();
    for (size_t c = 0; c < 5; ++c) {
        params.push_back(params_to_json(model.params[c]));
        forests.push_back(forest_to_json(model.forests[c]));
    }
    j["params"] = std::move(params);
    j["forests"] = std::move(forests);
    write_text_file(path, j.dump() + "\n");
}

ChainModel load_model(const std::string& path) {
    const json j = read_json_file(path);
    ChainModel model;
    try {
        const int version = j.at("format_version").get<int>();
        if (version != kModelFormatVersion) {
            throw std::runtime_error(
                "unknown model format_version " + std::to_string(version) +
                " in " + path);
        }
        model.schema_version = j.at("schema_version").get<int>();
        model.chain_enabled = j.at("chain_enabled").get<bool>();
        model.downgrade_threshold = j.at("downgrade_threshold").get<double>();
        model.seed = j.at("seed").get<uint64_t>();
        model.normalization_policy =
            j.at("normalization_policy").get<std::string>();
        const auto& params = j.at("params");
        const auto& forests = j.at("forests");
        if (params.size() != 5 || forests.size() != 5) {
            throw std::runtime_error("model document must hold 5 ensembles");
        }
        for (size_t c = 0; c < 5; ++c) {
            model.params[c] = params_from_json(params.at(c));
            model.forests[c] = forest_from_json(forests.at(c));
        }
    } catch (const json::exception& e) {
        throw std::runtime_error("malformed model document " + path + ": " +
                                 e.what());
    }
    return model;
}

}  // namespace joinscout
