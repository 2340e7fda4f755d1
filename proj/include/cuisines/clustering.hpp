#ifndef CUISINES_CLUSTERING_HPP
#define CUISINES_CLUSTERING_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cuisines/common.hpp"
#include "cuisines/patterns.hpp"

// Pairwise cuisine distances, hierarchical agglomerative clustering, and
// K-means with a WCSS elbow scan.

namespace cuisines {

enum class Metric { jaccard, cosine, euclidean };
enum class Linkage { average, complete, single };

std::string_view to_string(Metric metric);
std::optional<Metric> metric_from_string(std::string_view name);
std::string_view to_string(Linkage linkage);
std::optional<Linkage> linkage_from_string(std::string_view name);

// Flattened upper triangle of a symmetric pairwise distance matrix, row-major
// over label order (the pdist layout).
class CondensedDistanceMatrix {
public:
    CondensedDistanceMatrix(std::vector<std::string> labels, std::vector<double> values,
                            std::string metric_name);

    std::size_t size() const { return labels_.size(); }
    double at(std::size_t i, std::size_t j) const;
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<double>& values() const { return values_; }
    const std::string& metric_name() const { return metric_name_; }

private:
    std::vector<std::string> labels_;
    std::vector<double> values_;  // length n(n-1)/2
    std::string metric_name_;
};

// A labelled dense feature vector; the common currency between pattern
// vectors, authenticity columns and the clustering routines.
struct FeatureRow {
    std::string label;
    std::vector<double> values;
};

std::vector<FeatureRow> to_feature_rows(std::span<const CuisineVector> vectors, bool weighted);

// jaccard treats a coordinate as present iff it is nonzero; cosine and
// euclidean use the raw values. All pairs are computed independently, so the
// fill parallelizes freely.
CondensedDistanceMatrix pairwise_distances(std::span<const FeatureRow> rows, Metric metric,
                                           unsigned threads = 1);

struct MergeStep {
    std::int32_t left = 0;   // node ids: leaves 0..n-1, merge i becomes node n+i
    std::int32_t right = 0;
    double height = 0.0;
    std::int32_t size = 0;   // leaves under the merged node
};

struct Dendrogram {
    std::vector<std::string> leaves;
    std::vector<MergeStep> merges;  // n-1 steps, heights non-decreasing
    Linkage linkage = Linkage::average;
};

// Agglomerative clustering: repeatedly merges the closest cluster pair,
// breaking distance ties by the lexicographically smallest (label-sorted)
// pair so results are identical across platforms and input orders.
Dendrogram hac(const CondensedDistanceMatrix& distances, Linkage linkage);

struct KMeansResult {
    std::size_t k = 0;
    std::vector<std::vector<double>> centroids;
    std::vector<std::size_t> assignments;
    double wcss = 0.0;
    std::uint64_t seed = 0;       // RNG seed of the winning restart
    std::size_t restarts = 0;     // candidates evaluated for this k
    std::vector<double> wcss_trace;  // per Lloyd iteration of the winner
};

struct ElbowOptions {
    std::size_t k_min = 1;
    std::size_t k_max = 1;
    std::size_t restarts = 8;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

// One k-means result per k in [k_min, k_max]. Each k runs `restarts`
// k-means++ starts; every k after the first adds one extra candidate seeded
// with the previous best centroids plus the point farthest from its centroid,
// which forces WCSS to be non-increasing in k. The nested candidate carries
// the seed of the restart it grew from.
std::vector<KMeansResult> kmeans_elbow(std::span<const FeatureRow> rows,
                                       const ElbowOptions& options);

}  // namespace cuisines

#endif
