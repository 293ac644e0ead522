#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "joinscout/discovery.hpp"
#include "joinscout/evalkit.hpp"
#include "joinscout/ingest.hpp"
#include "joinscout/kernels.hpp"
#include "joinscout/learner.hpp"
#include "joinscout/oracle.hpp"
#include "joinscout/profile.hpp"
#include "joinscout/store.hpp"
#include "joinscout/synth.hpp"

namespace fs = std::filesystem;
using namespace joinscout;

namespace {

std::vector<std::string> list_csv_files(const std::string& dir) {
    if (!fs::is_directory(dir)) {
        throw std::runtime_error("not a directory: " + dir);
    }
    std::vector<std::string> paths;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        if (entry.path().extension() == ".csv") {
            paths.push_back(entry.path().string());
        }
    }
    std::sort(paths.begin(), paths.end());
    if (paths.empty()) {
        throw std::runtime_error("no .csv files in " + dir);
    }
    return paths;
}

std::string dataset_stem(const std::string& path) {
    return fs::path(path).stem().string();
}

// Profiles for every dataset in the repo directory, preferring saved
// profile documents and falling back to profiling the CSV in place.
std::vector<AttributeProfile> gather_repo_profiles(
    const std::string& repo_dir, const std::string& profiles_dir,
    const LoadOptions& load_opts) {
    std::vector<AttributeProfile> repo;
    for (const auto& path : list_csv_files(repo_dir)) {
        const auto name = dataset_stem(path);
        const auto doc_path = profiles_dir.empty()
                                  ? std::string{}
                                  : profile_document_path(profiles_dir, name);
        if (!doc_path.empty() && fs::exists(doc_path)) {
            auto doc = load_profiles(doc_path, &std::cerr);
            for (auto& p : doc.attributes) repo.push_back(std::move(p));
        } else {
            auto ds = load_dataset(path, load_opts);
            for (auto& p : profile_dataset(ds)) repo.push_back(std::move(p));
        }
    }
    return repo;
}

std::string default_profiles_dir() {
    const char* env = std::getenv("JOINSCOUT_PROFILES");
    return env ? std::string(env) : std::string{};
}

void add_load_options(CLI::App* cmd, LoadOptions& opts) {
    cmd->add_option("--delimiter", opts.delimiter, "Field delimiter")
        ->default_val(",")
        ->check(CLI::TypeValidator<char>());
    cmd->add_option("--sample", opts.sample_fraction,
                    "Eligibility sample fraction")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--sample-seed", opts.sample_seed,
                    "Seed for the eligibility sample");
}

int run(int argc, char** argv) {
    CLI::App app{"joinscout: profile CSV lakes and rank joinable attributes"};
    app.require_subcommand(1);
    app.footer(
        "Environment:\n"
        "  JOINSCOUT_PROFILES   default profiles directory for discover\n"
        "  JOINSCOUT_KERNELS    force a kernel backend (scalar | avx2)\n"
        "Exit codes: 0 success, 1 usage error, 2 data error.");

    // profile
    std::vector<std::string> profile_paths;
    std::string profile_out = ".";
    LoadOptions profile_load;
    auto* cmd_profile =
        app.add_subcommand("profile", "Profile CSV datasets into documents");
    cmd_profile
        ->add_option("paths", profile_paths,
                     "CSV files or directories of CSV files")
        ->required();
    cmd_profile->add_option("--out", profile_out, "Output directory");
    add_load_options(cmd_profile, profile_load);
    cmd_profile->callback([&] {
        std::vector<std::string> expanded;
        for (const auto& path : profile_paths) {
            if (fs::is_directory(path)) {
                for (const auto& file : list_csv_files(path)) {
                    expanded.push_back(file);
                }
            } else {
                expanded.push_back(path);
            }
        }
        fs::create_directories(profile_out);
        for (const auto& path : expanded) {
            auto ds = load_dataset(path, profile_load);
            ProfileDocument doc;
            doc.dataset_name = ds.name;
            doc.source_path = path;
            doc.digest = file_digest(path);
            doc.row_count = ds.row_count;
            doc.attributes = profile_dataset(ds);
            const auto out = profile_document_path(profile_out, ds.name);
            save_profiles(out, doc);
            size_t eligible = 0;
            for (const auto& a : ds.attributes) eligible += a.eligible;
            std::cout << ds.name << ": " << ds.attributes.size()
                      << " attributes, " << eligible << " eligible -> " << out
                      << "\n";
        }
    });

    // label
    std::string label_repo;
    std::string label_out = "corpus.csv";
    LoadOptions label_load;
    auto* cmd_label = app.add_subcommand(
        "label", "Build the exact-labeled pair corpus for a lake directory");
    cmd_label->add_option("--repo", label_repo, "Directory of CSV datasets")
        ->required();
    cmd_label->add_option("--out", label_out, "Corpus CSV path");
    add_load_options(cmd_label, label_load);
    cmd_label->callback([&] {
        std::vector<Dataset> repo;
        for (const auto& path : list_csv_files(label_repo)) {
            repo.push_back(load_dataset(path, label_load));
        }
        auto corpus = label_corpus(repo);
        write_corpus(label_out, corpus);
        std::map<int, size_t> hist;
        for (const auto& r : corpus) ++hist[r.label];
        std::cout << repo.size() << " datasets, " << corpus.size()
                  << " labeled pairs -> " << label_out << "\n";
        for (const auto& [label, n] : hist) {
            std::cout << "  class " << label << " ("
                      << quality_class_name(static_cast<QualityClass>(label))
                      << "): " << n << "\n";
        }
    });

    // train
    std::string train_corpus;
    std::string train_out = "model.json";
    uint64_t train_seed = 1;
    double train_tau = 0.10;
    bool no_chain = false;
    auto* cmd_train =
        app.add_subcommand("train", "Train the class ensembles on a corpus");
    cmd_train->add_option("--corpus", train_corpus, "Labeled corpus CSV")
        ->required();
    cmd_train->add_option("--out", train_out, "Model file path");
    cmd_train->add_option("--seed", train_seed, "Training seed");
    cmd_train->add_option("--tau", train_tau, "Downgrade threshold")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0));
    cmd_train->add_flag("--no-chain", no_chain,
                        "Train the five ensembles independently");
    cmd_train->callback([&] {
        auto corpus = read_corpus(train_corpus);
        std::vector<FeatureVector> xs;
        std::vector<int> labels;
        xs.reserve(corpus.size());
        labels.reserve(corpus.size());
        for (auto& r : corpus) {
            xs.push_back(r.features);
            labels.push_back(r.label);
        }
        TrainOptions opts(train_seed);
        opts.chain_enabled = !no_chain;
        opts.downgrade_threshold = train_tau;
        auto model = train_chain(xs, labels, opts);
        save_model(train_out, model);
        std::cout << "trained on " << corpus.size() << " pairs (chain "
                  << (model.chain_enabled ? "on" : "off") << ", seed "
                  << train_seed << ") -> " << train_out << "\n";
    });

    // discover
    std::string disc_query;
    std::string disc_attribute;
    std::string disc_repo;
    std::string disc_model;
    std::string disc_profiles = default_profiles_dir();
    std::string disc_out;
    bool all_classes = false;
    bool include_none = false;
    double disc_tau = 0.10;
    LoadOptions disc_load;
    auto* cmd_discover = app.add_subcommand(
        "discover", "Rank joinable attributes for a query dataset");
    cmd_discover->add_option("--query", disc_query, "Query dataset CSV")
        ->required();
    cmd_discover->add_option("--attribute", disc_attribute,
                             "Restrict to one query attribute");
    cmd_discover->add_option("--repo", disc_repo, "Candidate lake directory")
        ->required();
    cmd_discover->add_option("--model", disc_model, "Trained model file")
        ->required();
    cmd_discover->add_option("--profiles", disc_profiles,
                             "Directory of saved profile documents "
                             "(default: $JOINSCOUT_PROFILES)");
    cmd_discover->add_option("--out", disc_out,
                             "Ranking CSV path (default: stdout)");
    cmd_discover->add_flag("--all-classes", all_classes,
                           "Keep predicted classes 1 and 2 in the ranking");
    cmd_discover->add_flag("--include-none", include_none,
                           "Keep every predicted class, class 0 included");
    cmd_discover->add_option("--tau", disc_tau, "Downgrade threshold")
        ->check(CLI::Range(std::nextafter(0.0, 1.0), 1.0));
    add_load_options(cmd_discover, disc_load);
    cmd_discover->callback([&] {
        auto model = load_model(disc_model);
        auto query_ds = load_dataset(disc_query, disc_load);
        auto query_profiles = profile_dataset(query_ds);
        if (query_profiles.empty()) {
            throw std::runtime_error("no eligible attributes in " + disc_query);
        }
        auto repo = gather_repo_profiles(disc_repo, disc_profiles, disc_load);
        DiscoveryOptions opts;
        opts.all_classes = all_classes;
        opts.include_none = include_none;
        opts.tau = disc_tau;
        Ranking ranking;
        if (!disc_attribute.empty()) {
            const AttributeProfile* query = nullptr;
            for (const auto& p : query_profiles) {
                if (p.attribute_name == disc_attribute) query = &p;
            }
            if (!query) {
                throw std::runtime_error("attribute \"" + disc_attribute +
                                         "\" is not an eligible attribute of " +
                                         query_ds.name);
            }
            ranking = discover_by_attribute(*query, repo, model, opts);
        } else {
            ranking = discover_by_dataset(query_profiles, repo, model, opts);
        }
        if (disc_out.empty()) {
            std::cout << render_ranking(ranking);
        } else {
            write_ranking(disc_out, ranking);
            std::cout << ranking.items.size() << " candidates -> " << disc_out
                      << "\n";
        }
    });

    // evaluate
    std::string eval_corpus;
    std::string eval_model;
    std::string eval_out;
    auto* cmd_evaluate = app.add_subcommand(
        "evaluate", "Score a model against an exact-labeled corpus");
    cmd_evaluate->add_option("--corpus", eval_corpus, "Labeled corpus CSV")
        ->required();
    cmd_evaluate->add_option("--model", eval_model, "Trained model file")
        ->required();
    cmd_evaluate->add_option("--out", eval_out,
                             "Report path (default: stdout)");
    cmd_evaluate->callback([&] {
        auto corpus = read_corpus(eval_corpus);
        auto model = load_model(eval_model);
        std::vector<int> truths;
        std::vector<int> preds;
        truths.reserve(corpus.size());
        preds.reserve(corpus.size());
        for (const auto& r : corpus) {
            auto p = chain_predict(model, r.features);
            preds.push_back(static_cast<int>(
                resolve_class(p, model.downgrade_threshold)));
            truths.push_back(r.label);
        }
        auto cm = confusion(truths, preds, kQualityClassCount);
        std::string report = "five-class report\n" + render_report(cm) +
                             "\nbinary report (interesting = classes 3-4)\n" +
                             render_report(binarize_matrix(cm));
        if (eval_out.empty()) {
            std::cout << report;
        } else {
            std::ofstream out(eval_out, std::ios::binary);
            if (!out) {
                throw std::runtime_error("cannot write " + eval_out);
            }
            out << report;
            std::cout << "report -> " << eval_out << "\n";
        }
    });

    // synth
    std::string synth_out;
    synth::Options synth_opts;
    auto* cmd_synth = app.add_subcommand(
        "synth", "Generate a seeded CSV lake with known join structure");
    cmd_synth->add_option("--out", synth_out, "Output directory")->required();
    cmd_synth->add_option("--seed", synth_opts.seed, "Generator seed");
    cmd_synth->add_option("--groups", synth_opts.groups,
                          "Number of engineered dataset pairs");
    cmd_synth->add_option("--noise", synth_opts.noise_datasets,
                          "Number of unrelated datasets");
    cmd_synth
        ->add_option("--missing", synth_opts.missing_rate,
                     "Missing-cell rate")
        ->check(CLI::Range(0.0, 0.5));
    cmd_synth->callback([&] {
        auto repo = synth::make_repo(synth_opts);
        synth::write_lake(synth_out, repo);
        std::cout << repo.size() << " datasets -> " << synth_out << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
