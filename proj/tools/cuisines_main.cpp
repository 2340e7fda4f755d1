// Command-line pipeline: mine -> cluster / authenticity / geo / elbow ->
// compare. Every output is a plain file written atomically; identical inputs
// and flags give byte-identical outputs regardless of --threads.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cuisines/authenticity.hpp"
#include "cuisines/clustering.hpp"
#include "cuisines/common.hpp"
#include "cuisines/corpus.hpp"
#include "cuisines/evaluation.hpp"
#include "cuisines/files.hpp"
#include "cuisines/geo.hpp"
#include "cuisines/mining.hpp"
#include "cuisines/newick.hpp"
#include "cuisines/parallel.hpp"
#include "cuisines/patterns.hpp"

namespace fs = std::filesystem;
using namespace cuisines;

namespace {

struct CommonOptions {
    std::string input;
    std::string format = "jsonl";
    std::string out = "out";
    unsigned threads = 0;  // 0 = hardware concurrency
    std::uint64_t seed = 0;
};

CorpusFormat parse_format(const std::string& name) {
    const auto format = corpus_format_from_string(name);
    if (!format) throw InputError("unknown corpus format '" + name + "'");
    return *format;
}

Metric parse_metric(const std::string& name) {
    const auto metric = metric_from_string(name);
    if (!metric) throw InputError("unknown metric '" + name + "'");
    return *metric;
}

Linkage parse_linkage(const std::string& name) {
    const auto linkage = linkage_from_string(name);
    if (!linkage) throw InputError("unknown linkage '" + name + "'");
    return *linkage;
}

std::vector<RecipeRecord> load_input(const CommonOptions& common) {
    if (common.input.empty()) throw InputError("--input is required");
    return load_corpus(common.input, parse_format(common.format));
}

void require_min_support(double min_support) {
    if (!(min_support > 0.0) || min_support > 1.0) {
        throw InputError("--min-support must be in (0, 1], got " + std::to_string(min_support));
    }
}

// ---- mine ----------------------------------------------------------------

struct MineOptions {
    double min_support = 0.2;
    std::string classes = "all";
    std::size_t max_len = 0;
};

void cmd_mine(const CommonOptions& common, const MineOptions& opts) {
    require_min_support(opts.min_support);
    const auto records = load_input(common);
    const TransactionBuild build =
        build_transactions(records, ClassSelection::parse(opts.classes));
    if (build.dropped_recipes > 0) {
        std::fprintf(stderr, "note: dropped %zu recipe(s) with no items in selected classes\n",
                     build.dropped_recipes);
    }

    MiningControls controls;
    controls.max_pattern_len = opts.max_len;
    const auto mined = mine_all(build.by_cuisine, opts.min_support, controls, common.threads);

    const fs::path out_dir(common.out);
    std::set<std::string> used_slugs;
    std::vector<SummaryRow> summary;
    for (const auto& [cuisine, db] : build.by_cuisine) {
        if (db.recipe_count() == 0) {
            std::fprintf(stderr, "warning: cuisine '%s' has no usable recipes; nothing mined\n",
                         cuisine.c_str());
        }
        const std::string file_name = pattern_file_name(cuisine);
        if (!used_slugs.insert(file_name).second) {
            throw InputError("cuisine names '" + cuisine + "' collide after slugification");
        }
        const PatternList& patterns = mined.at(cuisine);
        write_pattern_file(out_dir / file_name, cuisine, patterns, build.dictionary);

        SummaryRow row;
        row.cuisine = cuisine;
        row.recipe_count = db.recipe_count();
        row.pattern_count = patterns.size();
        for (const FrequentPattern& p : patterns) {
            const std::string text = canonical_pattern_text(p.items, build.dictionary);
            if (row.top_pattern.empty() || p.support > row.top_support ||
                (p.support == row.top_support && text < row.top_pattern)) {
                row.top_pattern = text;
                row.top_support = p.support;
            }
        }
        summary.push_back(std::move(row));
    }
    write_summary(out_dir / "summary.tsv", summary);
}

// ---- cluster / elbow share the pattern-file loading -----------------------

struct LoadedVectors {
    PatternVocabulary vocab;
    std::vector<CuisineVector> vectors;
};

LoadedVectors load_cuisine_vectors(const fs::path& out_dir) {
    const fs::path summary_path = out_dir / "summary.tsv";
    if (!fs::exists(summary_path)) {
        throw InputError("missing " + summary_path.string() + "; run `mine` first");
    }
    const auto summary = read_summary(summary_path);
    if (summary.empty()) throw InputError(summary_path.string() + ": no cuisines");

    std::map<std::string, std::vector<std::pair<std::string, double>>> per_cuisine;
    std::set<std::string> texts;
    for (const SummaryRow& row : summary) {
        const fs::path pattern_path = out_dir / pattern_file_name(row.cuisine);
        if (!fs::exists(pattern_path)) {
            throw InputError("missing pattern file " + pattern_path.string() +
                             "; run `mine` first");
        }
        auto& rows = per_cuisine[row.cuisine];
        for (const PatternRow& p : read_pattern_file(pattern_path)) {
            rows.emplace_back(p.text, p.support);
            texts.insert(p.text);
        }
    }

    LoadedVectors loaded{PatternVocabulary::from_texts(texts), {}};
    loaded.vectors.reserve(per_cuisine.size());
    for (const auto& [cuisine, rows] : per_cuisine) {
        loaded.vectors.push_back(vectorize_texts(cuisine, rows, loaded.vocab));
    }
    return loaded;
}

struct ClusterOptions {
    std::vector<std::string> metrics = {"all"};
    std::string linkage = "average";
    bool weighted = false;
};

void cmd_cluster(const CommonOptions& common, const ClusterOptions& opts) {
    const fs::path out_dir(common.out);
    const auto [vocab, vectors] = load_cuisine_vectors(out_dir);
    write_vocab(out_dir / "vocab.tsv", vocab);
    write_vectors(out_dir / "vectors.tsv", vectors, opts.weighted);

    std::vector<std::string> metric_names;
    for (const std::string& name : opts.metrics) {
        if (name == "all") {
            metric_names.insert(metric_names.end(), {"jaccard", "cosine", "euclidean"});
        } else {
            metric_names.push_back(name);
        }
    }

    const Linkage linkage = parse_linkage(opts.linkage);
    const auto rows = to_feature_rows(vectors, opts.weighted);
    for (const std::string& name : metric_names) {
        const Metric metric = parse_metric(name);
        const auto distances = pairwise_distances(rows, metric, common.threads);
        const Dendrogram tree = hac(distances, linkage);
        write_text_file_atomic(out_dir / ("tree_" + name + ".newick"), to_newick(tree));
        write_linkage_json(out_dir / ("linkage_" + name + ".json"), tree, name);
    }
}

// ---- authenticity ----------------------------------------------------------

struct AuthenticityOptions {
    std::string classes = "ingredient";
    bool global_denominator = false;
    bool mean_all = false;
    bool raw_prevalence = false;
    std::string metric = "euclidean";
    std::string linkage = "average";
    std::size_t top = 10;
};

void cmd_authenticity(const CommonOptions& common, const AuthenticityOptions& opts) {
    const auto records = load_input(common);

    PrevalenceOptions prevalence_options;
    prevalence_options.classes = ClassSelection::parse(opts.classes);
    prevalence_options.global_denominator = opts.global_denominator;
    const PrevalenceMatrix P = prevalence(records, prevalence_options);
    const RelativePrevalenceMatrix rel = relative_prevalence(P, opts.mean_all);

    const fs::path out_dir(common.out);
    write_prevalence_csv(out_dir / "prevalence.csv", P);
    write_relative_prevalence_csv(out_dir / "authenticity.csv", rel);

    std::vector<CuisineFingerprint> fingerprints;
    fingerprints.reserve(rel.cuisine_count());
    for (const std::string& cuisine : rel.cuisines) {
        fingerprints.push_back(fingerprint(rel, cuisine, opts.top));
    }
    write_fingerprints(out_dir / "fingerprints.tsv", fingerprints);

    // Cuisine feature vectors are columns of the relative-prevalence matrix
    // (raw prevalence behind a flag).
    std::vector<FeatureRow> rows;
    rows.reserve(rel.cuisine_count());
    for (std::size_t c = 0; c < rel.cuisine_count(); ++c) {
        FeatureRow row;
        row.label = rel.cuisines[c];
        if (opts.raw_prevalence) {
            row.values.reserve(P.item_count());
            for (std::size_t i = 0; i < P.item_count(); ++i) row.values.push_back(P.at(i, c));
        } else {
            row.values = rel.cuisine_column(c);
        }
        rows.push_back(std::move(row));
    }
    const auto distances = pairwise_distances(rows, parse_metric(opts.metric), common.threads);
    const Dendrogram tree = hac(distances, parse_linkage(opts.linkage));
    write_text_file_atomic(out_dir / "tree_authenticity.newick", to_newick(tree));
    write_linkage_json(out_dir / "linkage_authenticity.json", tree, opts.metric);
}

// ---- geo -------------------------------------------------------------------

struct GeoOptions {
    std::string coords;
    std::string linkage = "average";
};

void cmd_geo(const CommonOptions& common, const GeoOptions& opts) {
    if (opts.coords.empty()) throw InputError("--coords is required");
    auto coords = load_region_coordinates(opts.coords);

    std::vector<RegionCoordinates> selected;
    if (!common.input.empty()) {
        const auto records = load_input(common);
        std::set<std::string> regions;
        for (const RecipeRecord& rec : records) regions.insert(rec.region);
        const std::vector<std::string> names(regions.begin(), regions.end());
        selected = select_regions(coords, names);
    } else {
        selected = std::move(coords);
        std::sort(selected.begin(), selected.end(),
                  [](const RegionCoordinates& a, const RegionCoordinates& b) {
                      return a.region < b.region;
                  });
    }

    const Dendrogram tree = geo_tree(selected, parse_linkage(opts.linkage));
    const fs::path out_dir(common.out);
    write_text_file_atomic(out_dir / "tree_geo.newick", to_newick(tree));
    write_linkage_json(out_dir / "linkage_geo.json", tree, "haversine_km");
}

// ---- elbow -----------------------------------------------------------------

struct ElbowCliOptions {
    std::string k_range;  // "LO:HI"; empty = 1:min(8, n)
    std::size_t restarts = 8;
    bool weighted = false;
};

void cmd_elbow(const CommonOptions& common, const ElbowCliOptions& opts) {
    const fs::path out_dir(common.out);
    const auto loaded = load_cuisine_vectors(out_dir);
    const auto rows = to_feature_rows(loaded.vectors, opts.weighted);

    ElbowOptions options;
    options.restarts = opts.restarts;
    options.seed = common.seed;
    options.threads = common.threads;
    if (opts.k_range.empty()) {
        options.k_min = 1;
        options.k_max = std::min<std::size_t>(8, rows.size());
    } else {
        const auto parts = split(opts.k_range, ':');
        try {
            if (parts.size() != 2) throw std::invalid_argument(opts.k_range);
            options.k_min = std::stoul(parts[0]);
            options.k_max = std::stoul(parts[1]);
        } catch (const std::exception&) {
            throw InputError("--k-range must look like LO:HI, got '" + opts.k_range + "'");
        }
    }

    const auto results = kmeans_elbow(rows, options);
    write_elbow_csv(out_dir / "elbow.csv", results);
}

// ---- compare ----------------------------------------------------------------

struct CompareOptions {
    std::string tree_a;
    std::string tree_b;
    bool spearman = false;
};

void cmd_compare(const CommonOptions& common, const CompareOptions& opts) {
    const Dendrogram a = read_linkage_json(opts.tree_a);
    const Dendrogram b = read_linkage_json(opts.tree_b);
    const TreeComparison cmp = compare_trees(
        a, b, opts.spearman ? CorrelationKind::spearman : CorrelationKind::pearson);
    write_comparison_json(fs::path(common.out) / "comparison.json", cmp);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequent-pattern mining and hierarchical clustering of recipe corpora"};
    app.require_subcommand(1);
    app.fallthrough();

    CommonOptions common;
    app.add_option("--input", common.input, "Recipe corpus file");
    app.add_option("--format", common.format, "Corpus format: jsonl or csv");
    app.add_option("--out", common.out, "Output directory");
    app.add_option("--threads", common.threads, "Worker threads (0 = hardware)");
    app.add_option("--seed", common.seed, "Seed for randomized steps");

    MineOptions mine_opts;
    CLI::App* mine = app.add_subcommand("mine", "Mine frequent patterns per cuisine");
    mine->add_option("--min-support", mine_opts.min_support, "Support threshold in (0, 1]");
    mine->add_option("--classes", mine_opts.classes, "Item classes to mine (csv list or 'all')");
    mine->add_option("--max-len", mine_opts.max_len, "Pattern length cap (0 = unlimited)");

    ClusterOptions cluster_opts;
    CLI::App* cluster = app.add_subcommand("cluster", "Cluster cuisines from mined patterns");
    cluster->add_option("--metric", cluster_opts.metrics,
                        "jaccard, cosine, euclidean or all (repeatable)");
    cluster->add_option("--linkage", cluster_opts.linkage, "average, complete or single");
    cluster->add_flag("--weighted", cluster_opts.weighted,
                      "Use support weights instead of presence bits");

    AuthenticityOptions auth_opts;
    CLI::App* authenticity = app.add_subcommand("authenticity",
                                                "Prevalence, authenticity and fingerprints");
    authenticity->add_option("--classes", auth_opts.classes, "Item classes (default ingredient)");
    authenticity->add_flag("--global-denominator", auth_opts.global_denominator,
                           "Divide by the dataset-wide recipe count");
    authenticity->add_flag("--mean-all", auth_opts.mean_all,
                           "Average over all cuisines instead of the others");
    authenticity->add_flag("--raw-prevalence", auth_opts.raw_prevalence,
                           "Cluster on raw prevalence instead of relative");
    authenticity->add_option("--metric", auth_opts.metric, "Distance metric for the tree");
    authenticity->add_option("--linkage", auth_opts.linkage, "average, complete or single");
    authenticity->add_option("--top", auth_opts.top, "Fingerprint length per direction");

    GeoOptions geo_opts;
    CLI::App* geo = app.add_subcommand("geo", "Geographic baseline tree");
    geo->add_option("--coords", geo_opts.coords, "regions.csv with region,lat,lon");
    geo->add_option("--linkage", geo_opts.linkage, "average, complete or single");

    ElbowCliOptions elbow_opts;
    CLI::App* elbow = app.add_subcommand("elbow", "K-means WCSS scan over k");
    elbow->add_option("--k-range", elbow_opts.k_range, "LO:HI inclusive");
    elbow->add_option("--restarts", elbow_opts.restarts, "Restarts per k");
    elbow->add_flag("--weighted", elbow_opts.weighted,
                    "Use support weights instead of presence bits");

    CompareOptions compare_opts;
    CLI::App* compare = app.add_subcommand("compare", "Compare two dendrograms");
    compare->add_option("--tree-a", compare_opts.tree_a, "First linkage JSON")->required();
    compare->add_option("--tree-b", compare_opts.tree_b, "Second linkage JSON")->required();
    compare->add_flag("--spearman", compare_opts.spearman, "Rank correlation instead of Pearson");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (mine->parsed()) cmd_mine(common, mine_opts);
        if (cluster->parsed()) cmd_cluster(common, cluster_opts);
        if (authenticity->parsed()) cmd_authenticity(common, auth_opts);
        if (geo->parsed()) cmd_geo(common, geo_opts);
        if (elbow->parsed()) cmd_elbow(common, elbow_opts);
        if (compare->parsed()) cmd_compare(common, compare_opts);
    } catch (const InputError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return 1;
    }
    return 0;
}
