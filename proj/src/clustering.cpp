#include "cuisines/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cuisines/parallel.hpp"

namespace cuisines {

std::string_view to_string(Metric metric) {
    switch (metric) {
        case Metric::jaccard: return "jaccard";
        case Metric::cosine: return "cosine";
        case Metric::euclidean: return "euclidean";
    }
    return "unknown";
}

std::optional<Metric> metric_from_string(std::string_view name) {
    if (name == "jaccard") return Metric::jaccard;
    if (name == "cosine") return Metric::cosine;
    if (name == "euclidean") return Metric::euclidean;
    return std::nullopt;
}

std::string_view to_string(Linkage linkage) {
    switch (linkage) {
        case Linkage::average: return "average";
        case Linkage::complete: return "complete";
        case Linkage::single: return "single";
    }
    return "unknown";
}

std::optional<Linkage> linkage_from_string(std::string_view name) {
    if (name == "average") return Linkage::average;
    if (name == "complete") return Linkage::complete;
    if (name == "single") return Linkage::single;
    return std::nullopt;
}

CondensedDistanceMatrix::CondensedDistanceMatrix(std::vector<std::string> labels,
                                                 std::vector<double> values,
                                                 std::string metric_name)
    : labels_(std::move(labels)), values_(std::move(values)),
      metric_name_(std::move(metric_name)) {
    const std::size_t n = labels_.size();
    if (n < 2) throw InputError("distance matrix needs at least 2 labels");
    if (values_.size() != n * (n - 1) / 2) {
        throw InputError("condensed distance matrix has wrong length");
    }
}

double CondensedDistanceMatrix::at(std::size_t i, std::size_t j) const {
    if (i == j) return 0.0;
    if (i > j) std::swap(i, j);
    const std::size_t n = labels_.size();
    return values_[i * (2 * n - i - 1) / 2 + (j - i - 1)];
}

std::vector<FeatureRow> to_feature_rows(std::span<const CuisineVector> vectors, bool weighted) {
    std::vector<FeatureRow> rows;
    rows.reserve(vectors.size());
    for (const CuisineVector& v : vectors) {
        FeatureRow row;
        row.label = v.cuisine;
        row.values.reserve(v.bits.size());
        if (weighted) {
            row.values = v.weights;
        } else {
            for (std::uint8_t b : v.bits) row.values.push_back(b ? 1.0 : 0.0);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

double jaccard_distance(const std::vector<double>& a, const std::vector<double>& b) {
    std::size_t inter = 0, uni = 0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const bool pa = a[d] != 0.0, pb = b[d] != 0.0;
        inter += pa && pb;
        uni += pa || pb;
    }
    if (uni == 0) return 0.0;  // two empty sets are identical
    return 1.0 - static_cast<double>(inter) / static_cast<double>(uni);
}

double cosine_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        dot += a[d] * b[d];
        na += a[d] * a[d];
        nb += b[d] * b[d];
    }
    // rounding can push dot/(|a||b|) a hair past 1 for aligned vectors
    return std::max(0.0, 1.0 - dot / (std::sqrt(na) * std::sqrt(nb)));
}

double euclidean_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        sum += diff * diff;
    }
    return std::sqrt(sum);
}

bool is_zero_vector(const std::vector<double>& v) {
    for (double x : v) {
        if (x != 0.0) return false;
    }
    return true;
}

double squared_euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        sum += diff * diff;
    }
    return sum;
}

}  // namespace

CondensedDistanceMatrix pairwise_distances(std::span<const FeatureRow> rows, Metric metric,
                                           unsigned threads) {
    const std::size_t n = rows.size();
    if (n < 2) throw InputError("pairwise distances need at least 2 vectors");
    const std::size_t dim = rows[0].values.size();
    for (const FeatureRow& row : rows) {
        if (row.values.size() != dim) {
            throw InputError("vector length mismatch for '" + row.label + "': " +
                             std::to_string(row.values.size()) + " vs " + std::to_string(dim));
        }
        if (metric == Metric::cosine && is_zero_vector(row.values)) {
            throw InputError("cosine distance undefined for all-zero vector of '" + row.label +
                             "'");
        }
    }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    pairs.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }

    std::vector<double> values(pairs.size());
    parallel_for(pairs.size(), threads, [&](std::size_t p) {
        const auto& [i, j] = pairs[p];
        const auto& a = rows[i].values;
        const auto& b = rows[j].values;
        switch (metric) {
            case Metric::jaccard: values[p] = jaccard_distance(a, b); break;
            case Metric::cosine: values[p] = cosine_distance(a, b); break;
            case Metric::euclidean: values[p] = euclidean_distance(a, b); break;
        }
    });

    std::vector<std::string> labels;
    labels.reserve(n);
    for (const FeatureRow& row : rows) labels.push_back(row.label);
    return CondensedDistanceMatrix(std::move(labels), std::move(values),
                                   std::string(to_string(metric)));
}

Dendrogram hac(const CondensedDistanceMatrix& distances, Linkage linkage) {
    const std::size_t n = distances.size();
    for (double v : distances.values()) {
        if (!std::isfinite(v) || v < 0.0) {
            throw InputError("distance matrix contains a NaN, infinite or negative entry");
        }
    }

    struct Cluster {
        std::int32_t node = 0;       // dendrogram node id
        std::int32_t size = 0;
        std::string min_label;       // lexicographically smallest leaf label
        bool active = true;
    };
    std::vector<Cluster> clusters(n);
    for (std::size_t i = 0; i < n; ++i) {
        clusters[i] = {static_cast<std::int32_t>(i), 1, distances.labels()[i], true};
    }

    // Working copy of the full matrix, updated in place as clusters merge.
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j) dist[i][j] = distances.at(i, j);
        }
    }

    Dendrogram tree;
    tree.leaves = distances.labels();
    tree.linkage = linkage;
    tree.merges.reserve(n - 1);

    for (std::size_t step = 0; step + 1 < n; ++step) {
        // Closest active pair; ties fall to the smallest label-sorted pair.
        std::size_t best_i = 0, best_j = 0;
        double best_d = std::numeric_limits<double>::infinity();
        const std::string* best_lo = nullptr;
        const std::string* best_hi = nullptr;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!clusters[i].active) continue;
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!clusters[j].active) continue;
                const double d = dist[i][j];
                const std::string* lo = &clusters[i].min_label;
                const std::string* hi = &clusters[j].min_label;
                if (*hi < *lo) std::swap(lo, hi);
                const bool better =
                    d < best_d ||
                    (d == best_d && (best_lo == nullptr || *lo < *best_lo ||
                                     (*lo == *best_lo && *hi < *best_hi)));
                if (better) {
                    best_d = d;
                    best_i = i;
                    best_j = j;
                    best_lo = lo;
                    best_hi = hi;
                }
            }
        }

        Cluster& a = clusters[best_i];
        Cluster& b = clusters[best_j];
        MergeStep merge;
        const bool a_first = a.min_label < b.min_label;
        merge.left = a_first ? a.node : b.node;
        merge.right = a_first ? b.node : a.node;
        merge.height = best_d;
        merge.size = a.size + b.size;
        tree.merges.push_back(merge);

        // Fold cluster j into slot i.
        const double size_a = a.size, size_b = b.size;
        for (std::size_t k = 0; k < n; ++k) {
            if (!clusters[k].active || k == best_i || k == best_j) continue;
            double updated = 0.0;
            switch (linkage) {
                case Linkage::average:
                    updated = (size_a * dist[best_i][k] + size_b * dist[best_j][k]) /
                              (size_a + size_b);
                    break;
                case Linkage::complete:
                    updated = std::max(dist[best_i][k], dist[best_j][k]);
                    break;
                case Linkage::single:
                    updated = std::min(dist[best_i][k], dist[best_j][k]);
                    break;
            }
            dist[best_i][k] = dist[k][best_i] = updated;
        }
        a.node = static_cast<std::int32_t>(n + step);
        a.size = merge.size;
        if (!a_first) a.min_label = b.min_label;
        b.active = false;
    }
    return tree;
}

namespace {

double rng_unit(std::uint64_t& state) {
    state = splitmix64(state);
    return static_cast<double>(state >> 11) * 0x1.0p-53;
}

std::uint64_t rng_next(std::uint64_t& state) {
    state = splitmix64(state);
    return state;
}

struct LloydOutcome {
    std::vector<std::vector<double>> centroids;
    std::vector<std::size_t> assignments;
    double wcss = 0.0;
    std::vector<double> trace;
};

std::vector<std::size_t> assign_points(std::span<const FeatureRow> rows,
                                       const std::vector<std::vector<double>>& centroids) {
    std::vector<std::size_t> assignment(rows.size(), 0);
    for (std::size_t p = 0; p < rows.size(); ++p) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t best_c = 0;
        for (std::size_t c = 0; c < centroids.size(); ++c) {
            const double d = squared_euclidean(rows[p].values, centroids[c]);
            if (d < best) {
                best = d;
                best_c = c;
            }
        }
        assignment[p] = best_c;
    }
    return assignment;
}

double compute_wcss(std::span<const FeatureRow> rows,
                    const std::vector<std::vector<double>>& centroids,
                    const std::vector<std::size_t>& assignment) {
    double total = 0.0;
    for (std::size_t p = 0; p < rows.size(); ++p) {
        total += squared_euclidean(rows[p].values, centroids[assignment[p]]);
    }
    return total;
}

LloydOutcome lloyd(std::span<const FeatureRow> rows,
                   std::vector<std::vector<double>> centroids) {
    const std::size_t dim = rows[0].values.size();
    LloydOutcome out;
    std::vector<std::size_t> prev;
    constexpr int kMaxIterations = 200;

    for (int iter = 0; iter < kMaxIterations; ++iter) {
        std::vector<std::size_t> assignment = assign_points(rows, centroids);
        const double wcss = compute_wcss(rows, centroids, assignment);
        out.trace.push_back(wcss);
        if (assignment == prev) break;
        prev = std::move(assignment);

        // Means per cluster; an empty cluster jumps to the point farthest
        // from its current centroid (moving an unused centroid keeps WCSS).
        std::vector<std::vector<double>> sums(centroids.size(), std::vector<double>(dim, 0.0));
        std::vector<std::size_t> counts(centroids.size(), 0);
        for (std::size_t p = 0; p < rows.size(); ++p) {
            const std::size_t c = prev[p];
            counts[c] += 1;
            for (std::size_t d = 0; d < dim; ++d) sums[c][d] += rows[p].values[d];
        }
        for (std::size_t c = 0; c < centroids.size(); ++c) {
            if (counts[c] == 0) continue;
            for (std::size_t d = 0; d < dim; ++d) {
                centroids[c][d] = sums[c][d] / static_cast<double>(counts[c]);
            }
        }
        std::vector<bool> relocated_to(rows.size(), false);
        for (std::size_t c = 0; c < centroids.size(); ++c) {
            if (counts[c] != 0) continue;
            double far_d = -1.0;
            std::size_t far_p = rows.size();
            for (std::size_t p = 0; p < rows.size(); ++p) {
                if (relocated_to[p]) continue;
                const double d = squared_euclidean(rows[p].values, centroids[prev[p]]);
                if (d > far_d) {
                    far_d = d;
                    far_p = p;
                }
            }
            if (far_p == rows.size()) break;
            relocated_to[far_p] = true;
            centroids[c] = rows[far_p].values;
        }
    }

    out.assignments = assign_points(rows, centroids);
    out.wcss = compute_wcss(rows, centroids, out.assignments);
    out.centroids = std::move(centroids);
    return out;
}

std::vector<std::vector<double>> kmeanspp_init(std::span<const FeatureRow> rows, std::size_t k,
                                               std::uint64_t seed) {
    std::uint64_t state = seed;
    const std::size_t n = rows.size();
    std::vector<std::vector<double>> centroids;
    centroids.reserve(k);
    std::vector<bool> chosen(n, false);

    const std::size_t first = static_cast<std::size_t>(rng_next(state) % n);
    centroids.push_back(rows[first].values);
    chosen[first] = true;

    std::vector<double> dist2(n, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
        dist2[p] = squared_euclidean(rows[p].values, centroids[0]);
    }

    while (centroids.size() < k) {
        double total = 0.0;
        for (double d : dist2) total += d;
        std::size_t pick = n;
        if (total > 0.0) {
            const double r = rng_unit(state) * total;
            double cum = 0.0;
            for (std::size_t p = 0; p < n; ++p) {
                cum += dist2[p];
                if (cum > r) {
                    pick = p;
                    break;
                }
            }
            if (pick == n) {  // r landed on the accumulated rounding tail
                for (std::size_t p = n; p-- > 0;) {
                    if (dist2[p] > 0.0) {
                        pick = p;
                        break;
                    }
                }
            }
        }
        if (pick == n) {  // every point already sits on a centroid
            for (std::size_t p = 0; p < n; ++p) {
                if (!chosen[p]) {
                    pick = p;
                    break;
                }
            }
            if (pick == n) pick = 0;
        }
        chosen[pick] = true;
        centroids.push_back(rows[pick].values);
        for (std::size_t p = 0; p < n; ++p) {
            dist2[p] = std::min(dist2[p], squared_euclidean(rows[p].values, centroids.back()));
        }
    }
    return centroids;
}

}  // namespace

std::vector<KMeansResult> kmeans_elbow(std::span<const FeatureRow> rows,
                                       const ElbowOptions& options) {
    const std::size_t n = rows.size();
    if (n == 0) throw InputError("k-means: no vectors");
    const std::size_t dim = rows[0].values.size();
    for (const FeatureRow& row : rows) {
        if (row.values.size() != dim) {
            throw InputError("vector length mismatch for '" + row.label + "'");
        }
    }
    if (options.k_min < 1 || options.k_min > options.k_max) {
        throw InputError("invalid k range");
    }
    if (options.k_max > n) {
        throw InputError("k = " + std::to_string(options.k_max) +
                         " exceeds the number of vectors (" + std::to_string(n) + ")");
    }
    if (options.restarts < 1) throw InputError("restarts must be >= 1");

    std::vector<KMeansResult> results;
    const KMeansResult* previous_best = nullptr;

    for (std::size_t k = options.k_min; k <= options.k_max; ++k) {
        struct Candidate {
            LloydOutcome outcome;
            std::uint64_t seed = 0;
        };
        const bool nested = previous_best != nullptr;
        const std::size_t total = options.restarts + (nested ? 1 : 0);
        std::vector<Candidate> candidates(total);

        parallel_for(total, options.threads, [&](std::size_t r) {
            if (nested && r == total - 1) {
                // Previous best centroids plus the point farthest from its
                // centroid: initial WCSS can only drop, and Lloyd keeps it so.
                std::vector<std::vector<double>> centroids = previous_best->centroids;
                double far_d = -1.0;
                std::size_t far_p = 0;
                for (std::size_t p = 0; p < n; ++p) {
                    const double d = squared_euclidean(
                        rows[p].values, centroids[previous_best->assignments[p]]);
                    if (d > far_d) {
                        far_d = d;
                        far_p = p;
                    }
                }
                centroids.push_back(rows[far_p].values);
                candidates[r].outcome = lloyd(rows, std::move(centroids));
                candidates[r].seed = previous_best->seed;
                return;
            }
            const std::uint64_t seed =
                splitmix64(splitmix64(options.seed + 0x517CC1B727220A95ull * k) + r);
            candidates[r].outcome = lloyd(rows, kmeanspp_init(rows, k, seed));
            candidates[r].seed = seed;
        });

        std::size_t best = 0;
        for (std::size_t r = 1; r < total; ++r) {
            if (candidates[r].outcome.wcss < candidates[best].outcome.wcss) best = r;
        }

        KMeansResult result;
        result.k = k;
        result.centroids = std::move(candidates[best].outcome.centroids);
        result.assignments = std::move(candidates[best].outcome.assignments);
        result.wcss = candidates[best].outcome.wcss;
        result.wcss_trace = std::move(candidates[best].outcome.trace);
        result.seed = candidates[best].seed;
        result.restarts = total;
        results.push_back(std::move(result));
        previous_best = &results.back();
    }
    return results;
}

}  // namespace cuisines
