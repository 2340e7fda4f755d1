#ifndef CUISINES_EVALUATION_HPP
#define CUISINES_EVALUATION_HPP

#include <cstdint>
#include <string>

#include "cuisines/clustering.hpp"

// Quantified agreement between two dendrograms over the same leaf set:
// cophenetic correlation and Robinson-Foulds bipartition distance.

namespace cuisines {

// Entry (i, j) is the height of the lowest merge containing both leaves.
CondensedDistanceMatrix cophenetic_matrix(const Dendrogram& tree);

enum class CorrelationKind { pearson, spearman };

struct TreeComparison {
    double cophenetic_correlation = 0.0;  // in [-1, 1]
    std::uint32_t robinson_foulds = 0;    // bipartitions in exactly one tree
    double rf_normalized = 0.0;           // RF / (2(n-3)) for n >= 4, else 0
    std::size_t leaf_count = 0;
};

// Leaves are matched by label; a leaf-set mismatch throws InputError listing
// the symmetric difference. Only non-trivial bipartitions (both sides >= 2)
// enter the RF count, so identical trees score 0 and disjoint binary
// topologies score 2(n-3).
TreeComparison compare_trees(const Dendrogram& a, const Dendrogram& b,
                             CorrelationKind kind = CorrelationKind::pearson);

}  // namespace cuisines

#endif
