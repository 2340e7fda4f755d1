#ifndef CUISINES_FILES_HPP
#define CUISINES_FILES_HPP

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "cuisines/authenticity.hpp"
#include "cuisines/clustering.hpp"
#include "cuisines/evaluation.hpp"
#include "cuisines/mining.hpp"
#include "cuisines/patterns.hpp"

// On-disk report formats. Every writer goes through the atomic text writer
// and prints floats with fixed 6 decimals, so reruns are byte-identical.

namespace cuisines {

std::string pattern_file_name(std::string_view cuisine);  // patterns_<slug>.tsv

struct PatternRow {
    std::string text;
    double support = 0.0;
    std::uint64_t count = 0;
};

// Columns: cuisine, pattern, support, count. Rows sorted by support
// descending, then pattern text ascending.
void write_pattern_file(const std::filesystem::path& path, const std::string& cuisine,
                        const PatternList& patterns, const ItemDictionary& dict);
std::vector<PatternRow> read_pattern_file(const std::filesystem::path& path);

struct SummaryRow {
    std::string cuisine;
    std::size_t recipe_count = 0;
    std::string top_pattern;  // empty when the cuisine mined nothing
    double top_support = 0.0;
    std::size_t pattern_count = 0;
};

void write_summary(const std::filesystem::path& path, std::span<const SummaryRow> rows);
std::vector<SummaryRow> read_summary(const std::filesystem::path& path);

void write_vocab(const std::filesystem::path& path, const PatternVocabulary& vocab);
void write_vectors(const std::filesystem::path& path, std::span<const CuisineVector> vectors,
                   bool weighted);

void write_prevalence_csv(const std::filesystem::path& path, const PrevalenceMatrix& matrix);
void write_relative_prevalence_csv(const std::filesystem::path& path,
                                   const RelativePrevalenceMatrix& matrix);
void write_fingerprints(const std::filesystem::path& path,
                        std::span<const CuisineFingerprint> fingerprints);

// {"labels": [...], "linkage": "...", "metric": "...", "merges": [[l,r,h,size],...]}
void write_linkage_json(const std::filesystem::path& path, const Dendrogram& tree,
                        std::string_view metric_name);
Dendrogram read_linkage_json(const std::filesystem::path& path,
                             std::string* metric_name = nullptr);

void write_elbow_csv(const std::filesystem::path& path, std::span<const KMeansResult> results);

void write_comparison_json(const std::filesystem::path& path, const TreeComparison& comparison);

}  // namespace cuisines

#endif
