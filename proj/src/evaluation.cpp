#include "cuisines/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

namespace cuisines {

namespace {

std::size_t condensed_index(std::size_t n, std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

// Leaf indices under every node, in dendrogram node-id order.
std::vector<std::vector<std::size_t>> leaf_sets(const Dendrogram& tree) {
    const std::size_t n = tree.leaves.size();
    if (n < 2 || tree.merges.size() != n - 1) {
        throw InputError("malformed dendrogram: " + std::to_string(n) + " leaves, " +
                         std::to_string(tree.merges.size()) + " merges");
    }
    std::vector<std::vector<std::size_t>> sets(n + tree.merges.size());
    std::vector<bool> consumed(sets.size(), false);
    for (std::size_t i = 0; i < n; ++i) sets[i] = {i};

    for (std::size_t s = 0; s < tree.merges.size(); ++s) {
        const MergeStep& merge = tree.merges[s];
        const auto node = n + s;
        for (const std::int32_t child : {merge.left, merge.right}) {
            if (child < 0 || static_cast<std::size_t>(child) >= node ||
                consumed[static_cast<std::size_t>(child)]) {
                throw InputError("malformed dendrogram: bad child node id " +
                                 std::to_string(child));
            }
            consumed[static_cast<std::size_t>(child)] = true;
        }
        auto& out = sets[node];
        const auto& l = sets[static_cast<std::size_t>(merge.left)];
        const auto& r = sets[static_cast<std::size_t>(merge.right)];
        out.reserve(l.size() + r.size());
        out.insert(out.end(), l.begin(), l.end());
        out.insert(out.end(), r.begin(), r.end());
        if (static_cast<std::size_t>(merge.size) != out.size()) {
            throw InputError("malformed dendrogram: merge size disagrees with leaf count");
        }
    }
    if (sets.back().size() != n) {
        throw InputError("malformed dendrogram: final merge does not cover all leaves");
    }
    return sets;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    // Degenerate constant vectors: correlated iff they are the same constant.
    if (sxx == 0.0 && syy == 0.0) return x == y ? 1.0 : 0.0;
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> average_ranks(const std::vector<double>& v) {
    std::vector<std::size_t> order(v.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });

    std::vector<double> ranks(v.size(), 0.0);
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

// Cophenetic entries reindexed to the shared sorted-label order.
std::vector<double> aligned_cophenetic(const Dendrogram& tree,
                                       const std::vector<std::string>& common_labels) {
    const std::size_t n = common_labels.size();
    const CondensedDistanceMatrix coph = cophenetic_matrix(tree);

    std::vector<std::size_t> to_common(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto it = std::lower_bound(common_labels.begin(), common_labels.end(),
                                         tree.leaves[i]);
        to_common[i] = static_cast<std::size_t>(it - common_labels.begin());
    }

    std::vector<double> out(n * (n - 1) / 2, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            out[condensed_index(n, to_common[i], to_common[j])] = coph.at(i, j);
        }
    }
    return out;
}

// Non-trivial bipartitions, each keyed by the side containing common leaf 0.
std::set<std::vector<std::size_t>> splits(const Dendrogram& tree,
                                          const std::vector<std::string>& common_labels) {
    const std::size_t n = common_labels.size();
    std::vector<std::size_t> to_common(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto it = std::lower_bound(common_labels.begin(), common_labels.end(),
                                         tree.leaves[i]);
        to_common[i] = static_cast<std::size_t>(it - common_labels.begin());
    }

    const auto sets = leaf_sets(tree);
    std::set<std::vector<std::size_t>> out;
    for (std::size_t s = 0; s + 1 < tree.merges.size(); ++s) {  // root merge is trivial
        const auto& clade = sets[n + s];
        if (clade.size() < 2 || clade.size() > n - 2) continue;
        std::vector<bool> in_clade(n, false);
        for (std::size_t leaf : clade) in_clade[to_common[leaf]] = true;
        std::vector<std::size_t> key;
        const bool keep_clade_side = in_clade[0];
        for (std::size_t c = 0; c < n; ++c) {
            if (in_clade[c] == keep_clade_side) key.push_back(c);
        }
        out.insert(std::move(key));
    }
    return out;
}

}  // namespace

CondensedDistanceMatrix cophenetic_matrix(const Dendrogram& tree) {
    const std::size_t n = tree.leaves.size();
    const auto sets = leaf_sets(tree);

    std::vector<double> values(n * (n - 1) / 2, 0.0);
    for (std::size_t s = 0; s < tree.merges.size(); ++s) {
        const MergeStep& merge = tree.merges[s];
        for (std::size_t a : sets[static_cast<std::size_t>(merge.left)]) {
            for (std::size_t b : sets[static_cast<std::size_t>(merge.right)]) {
                values[condensed_index(n, a, b)] = merge.height;
            }
        }
    }
    return CondensedDistanceMatrix(tree.leaves, std::move(values), "cophenetic");
}

TreeComparison compare_trees(const Dendrogram& a, const Dendrogram& b, CorrelationKind kind) {
    std::vector<std::string> labels_a = a.leaves;
    std::vector<std::string> labels_b = b.leaves;
    std::sort(labels_a.begin(), labels_a.end());
    std::sort(labels_b.begin(), labels_b.end());
    if (labels_a != labels_b) {
        std::vector<std::string> diff;
        std::set_symmetric_difference(labels_a.begin(), labels_a.end(), labels_b.begin(),
                                      labels_b.end(), std::back_inserter(diff));
        throw InputError("leaf sets differ; symmetric difference: " + join(diff, ", "));
    }
    const std::vector<std::string>& common = labels_a;
    const std::size_t n = common.size();

    std::vector<double> coph_a = aligned_cophenetic(a, common);
    std::vector<double> coph_b = aligned_cophenetic(b, common);
    if (kind == CorrelationKind::spearman) {
        coph_a = average_ranks(coph_a);
        coph_b = average_ranks(coph_b);
    }

    const auto splits_a = splits(a, common);
    const auto splits_b = splits(b, common);
    std::size_t shared = 0;
    for (const auto& s : splits_a) shared += splits_b.count(s);
    const std::size_t rf = splits_a.size() + splits_b.size() - 2 * shared;

    TreeComparison cmp;
    cmp.leaf_count = n;
    cmp.cophenetic_correlation = pearson(coph_a, coph_b);
    cmp.robinson_foulds = static_cast<std::uint32_t>(rf);
    cmp.rf_normalized = n >= 4 ? static_cast<double>(rf) / (2.0 * static_cast<double>(n - 3))
                               : 0.0;
    return cmp;
}

}  // namespace cuisines
