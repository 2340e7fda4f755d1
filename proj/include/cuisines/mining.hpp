#ifndef CUISINES_MINING_HPP
#define CUISINES_MINING_HPP

#include <cstdint>
#include <map>
#include <span>
#include <unordered_map>
#include <vector>

#include "cuisines/corpus.hpp"

// Frequent-itemset mining per cuisine: an FP-tree engine plus a brute-force
// reference miner small enough to check it against.

namespace cuisines {

struct FrequentPattern {
    std::vector<ItemId> items;  // sorted ascending, nonempty
    std::uint64_t count = 0;    // absolute transaction count
    double support = 0.0;       // count / recipe_count of the mined cuisine

    friend bool operator==(const FrequentPattern& a, const FrequentPattern& b) {
        return a.items == b.items && a.count == b.count;
    }
};

// Canonical order: items vectors compared lexicographically.
bool pattern_items_less(const FrequentPattern& a, const FrequentPattern& b);

using PatternList = std::vector<FrequentPattern>;  // kept sorted by pattern_items_less

// Smallest absolute count admitted for a support fraction over n transactions:
// ceil(min_support * n), never below 1.
std::uint64_t support_count_threshold(double min_support, std::size_t n);

struct MiningControls {
    std::size_t max_pattern_len = 0;  // 0 = unlimited
    // Enumerate single-path conditional trees directly instead of recursing.
    // Output must be identical either way; the toggle exists for tests.
    bool single_path_shortcut = true;
};

// Prefix-tree compression of a transaction database. Items are ordered by
// descending global frequency (ties by ascending id); every root-to-leaf path
// lists items in that order, so shared prefixes collapse.
class FpTree {
public:
    using WeightedPath = std::pair<std::vector<ItemId>, std::uint64_t>;

    FpTree(std::span<const Transaction> transactions, std::uint64_t min_count);
    FpTree(const std::vector<WeightedPath>& paths, std::uint64_t min_count);

    bool empty() const { return items_asc_.empty(); }
    std::uint64_t min_count() const { return min_count_; }

    // Frequent items, least-frequent first (the order mining peels suffixes).
    const std::vector<ItemId>& items_by_ascending_frequency() const { return items_asc_; }
    std::uint64_t item_total(ItemId item) const;

    bool single_path() const;
    // Nodes of a single-path tree, top-down with their counts.
    std::vector<std::pair<ItemId, std::uint64_t>> single_path_nodes() const;

    // Conditional pattern base for `item`: one weighted prefix path per node
    // in the item's header chain.
    std::vector<WeightedPath> prefix_paths(ItemId item) const;

    // Structural self-check; throws std::logic_error on any violation.
    // Runs after every insertion in debug builds. Mid-build, header chains may
    // still be short of the item totals; pass building=true to allow that.
    void validate(bool building = false) const;

private:
    struct Node {
        ItemId item = -1;
        std::uint64_t count = 0;
        std::int32_t parent = -1;
        std::int32_t next_same_item = -1;
        std::unordered_map<ItemId, std::int32_t> children;
    };

    void build(std::span<const WeightedPath> paths);
    void insert(std::span<const ItemId> ordered_items, std::uint64_t weight);

    std::vector<Node> nodes_;                             // nodes_[0] is the root
    std::unordered_map<ItemId, std::int32_t> header_;     // item -> chain head
    std::unordered_map<ItemId, std::uint64_t> totals_;    // frequent items only
    std::unordered_map<ItemId, std::uint32_t> rank_;      // 0 = most frequent
    std::vector<ItemId> items_asc_;
    std::uint64_t min_count_ = 1;
};

// Exact frequent-itemset mining: returns every itemset whose count meets
// support_count_threshold, including singletons, with exact supports. The
// result is independent of transaction order. min_support outside (0,1]
// throws InputError; an empty database yields an empty list.
PatternList fp_growth(const TransactionDB& db, double min_support,
                      const MiningControls& controls = {});

// Definitional miner used as a test oracle: enumerates every nonempty itemset
// over the items present and counts containment. Guarded to <= 20 distinct
// items.
PatternList brute_force_frequent(const TransactionDB& db, double min_support);

// Mines every cuisine, optionally in parallel. Per-cuisine failures are
// rethrown with the cuisine name attached.
std::map<std::string, PatternList> mine_all(const std::map<std::string, TransactionDB>& dbs,
                                            double min_support,
                                            const MiningControls& controls = {},
                                            unsigned threads = 1);

}  // namespace cuisines

#endif
