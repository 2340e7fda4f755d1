#include "cuisines/mining.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "cuisines/parallel.hpp"

namespace cuisines {

bool pattern_items_less(const FrequentPattern& a, const FrequentPattern& b) {
    return a.items < b.items;
}

std::uint64_t support_count_threshold(double min_support, std::size_t n) {
    // ceil with a guard against representation error in min_support * n
    // (e.g. 0.2 * 5 landing a hair above 1.0).
    const double scaled = min_support * static_cast<double>(n);
    auto count = static_cast<std::uint64_t>(std::ceil(scaled - 1e-9));
    return count < 1 ? 1 : count;
}

namespace {

void require_valid_support(double min_support) {
    if (!(min_support > 0.0) || min_support > 1.0) {
        throw InputError("min_support must be in (0, 1], got " + std::to_string(min_support));
    }
}

}  // namespace

FpTree::FpTree(std::span<const Transaction> transactions, std::uint64_t min_count)
    : min_count_(min_count) {
    std::vector<WeightedPath> paths;
    paths.reserve(transactions.size());
    for (const Transaction& tx : transactions) paths.emplace_back(tx, 1);
    build(paths);
}

FpTree::FpTree(const std::vector<WeightedPath>& paths, std::uint64_t min_count)
    : min_count_(min_count) {
    build(paths);
}

void FpTree::build(std::span<const WeightedPath> paths) {
    std::unordered_map<ItemId, std::uint64_t> freq;
    for (const auto& [items, weight] : paths) {
        for (ItemId item : items) freq[item] += weight;
    }
    for (const auto& [item, total] : freq) {
        if (total >= min_count_) totals_.emplace(item, total);
    }

    std::vector<ItemId> ordered;
    ordered.reserve(totals_.size());
    for (const auto& [item, total] : totals_) ordered.push_back(item);
    std::sort(ordered.begin(), ordered.end(), [this](ItemId a, ItemId b) {
        const std::uint64_t fa = totals_.at(a), fb = totals_.at(b);
        return fa != fb ? fa > fb : a < b;
    });
    for (std::size_t i = 0; i < ordered.size(); ++i) {
        rank_.emplace(ordered[i], static_cast<std::uint32_t>(i));
    }
    items_asc_.assign(ordered.rbegin(), ordered.rend());

    nodes_.emplace_back();  // root

    std::vector<ItemId> filtered;
    for (const auto& [items, weight] : paths) {
        filtered.clear();
        for (ItemId item : items) {
            if (rank_.count(item)) filtered.push_back(item);
        }
        if (filtered.empty()) continue;
        std::sort(filtered.begin(), filtered.end(),
                  [this](ItemId a, ItemId b) { return rank_.at(a) < rank_.at(b); });
        insert(filtered, weight);
#ifndef NDEBUG
        validate(true);
#endif
    }
#ifndef NDEBUG
    validate();
#endif
}

void FpTree::insert(std::span<const ItemId> ordered_items, std::uint64_t weight) {
    nodes_[0].count += weight;
    std::int32_t cur = 0;
    for (ItemId item : ordered_items) {
        auto& children = nodes_[static_cast<std::size_t>(cur)].children;
        const auto it = children.find(item);
        std::int32_t child;
        if (it != children.end()) {
            child = it->second;
        } else {
            child = static_cast<std::int32_t>(nodes_.size());
            children.emplace(item, child);
            Node node;
            node.item = item;
            node.parent = cur;
            const auto head = header_.find(item);
            node.next_same_item = head == header_.end() ? -1 : head->second;
            header_[item] = child;
            nodes_.push_back(std::move(node));
        }
        nodes_[static_cast<std::size_t>(child)].count += weight;
        cur = child;
    }
}

std::uint64_t FpTree::item_total(ItemId item) const {
    const auto it = totals_.find(item);
    return it == totals_.end() ? 0 : it->second;
}

bool FpTree::single_path() const {
    std::int32_t cur = 0;
    while (true) {
        const Node& node = nodes_[static_cast<std::size_t>(cur)];
        if (node.children.empty()) return true;
        if (node.children.size() > 1) return false;
        cur = node.children.begin()->second;
    }
}

std::vector<std::pair<ItemId, std::uint64_t>> FpTree::single_path_nodes() const {
    std::vector<std::pair<ItemId, std::uint64_t>> path;
    std::int32_t cur = 0;
    while (!nodes_[static_cast<std::size_t>(cur)].children.empty()) {
        cur = nodes_[static_cast<std::size_t>(cur)].children.begin()->second;
        const Node& node = nodes_[static_cast<std::size_t>(cur)];
        path.emplace_back(node.item, node.count);
    }
    return path;
}

std::vector<FpTree::WeightedPath> FpTree::prefix_paths(ItemId item) const {
    std::vector<WeightedPath> paths;
    const auto head = header_.find(item);
    if (head == header_.end()) return paths;
    for (std::int32_t ni = head->second; ni != -1;
         ni = nodes_[static_cast<std::size_t>(ni)].next_same_item) {
        const Node& node = nodes_[static_cast<std::size_t>(ni)];
        std::vector<ItemId> prefix;
        for (std::int32_t pi = node.parent; pi > 0;
             pi = nodes_[static_cast<std::size_t>(pi)].parent) {
            prefix.push_back(nodes_[static_cast<std::size_t>(pi)].item);
        }
        if (prefix.empty()) continue;
        std::reverse(prefix.begin(), prefix.end());
        paths.emplace_back(std::move(prefix), node.count);
    }
    return paths;
}

void FpTree::validate(bool building) const {
    std::unordered_map<ItemId, std::uint64_t> chain_counts;
    std::unordered_map<ItemId, std::size_t> chain_visits;
    std::unordered_map<ItemId, std::size_t> arena_nodes;

    for (std::size_t i = 1; i < nodes_.size(); ++i) {
        const Node& node = nodes_[i];
        const Node& parent = nodes_[static_cast<std::size_t>(node.parent)];
        if (node.count > parent.count) {
            throw std::logic_error("fp-tree: node count exceeds parent count");
        }
        if (node.parent != 0 && rank_.at(node.item) <= rank_.at(parent.item)) {
            throw std::logic_error("fp-tree: path not strictly descending in item order");
        }
        arena_nodes[node.item] += 1;
    }

    for (const auto& [item, head] : header_) {
        for (std::int32_t ni = head; ni != -1;
             ni = nodes_[static_cast<std::size_t>(ni)].next_same_item) {
            const Node& node = nodes_[static_cast<std::size_t>(ni)];
            if (node.item != item) throw std::logic_error("fp-tree: header chain item mismatch");
            chain_counts[item] += node.count;
            chain_visits[item] += 1;
        }
    }

    for (const auto& [item, n] : arena_nodes) {
        const auto it = chain_visits.find(item);
        if (it == chain_visits.end() || it->second != n) {
            throw std::logic_error("fp-tree: header chain does not visit every node once");
        }
        const std::uint64_t chained = chain_counts.at(item);
        const std::uint64_t total = totals_.at(item);
        if (building ? chained > total : chained != total) {
            throw std::logic_error("fp-tree: chained counts disagree with item total");
        }
    }
    if (!building) {
        for (const auto& [item, total] : totals_) {
            if (!arena_nodes.count(item)) {
                throw std::logic_error("fp-tree: frequent item missing from tree");
            }
        }
    }
}

namespace {

struct Miner {
    const MiningControls& controls;
    std::uint64_t min_count;
    PatternList out;

    bool at_length_cap(std::size_t pattern_len) const {
        return controls.max_pattern_len != 0 && pattern_len >= controls.max_pattern_len;
    }

    void emit(const std::vector<ItemId>& suffix, ItemId item, std::uint64_t count) {
        FrequentPattern p;
        p.items.reserve(suffix.size() + 1);
        p.items = suffix;
        p.items.push_back(item);
        std::sort(p.items.begin(), p.items.end());
        p.count = count;
        out.push_back(std::move(p));
    }

    // All nonempty subsets of a single path. Counts are non-increasing down
    // the path, so a subset's count is the count of its deepest member.
    void enumerate_path(const std::vector<std::pair<ItemId, std::uint64_t>>& path,
                        std::size_t idx, std::vector<ItemId>& suffix) {
        if (idx == path.size() || at_length_cap(suffix.size())) return;
        // exclude path[idx]
        enumerate_path(path, idx + 1, suffix);
        // include path[idx]
        emit(suffix, path[idx].first, path[idx].second);
        suffix.push_back(path[idx].first);
        enumerate_path(path, idx + 1, suffix);
        suffix.pop_back();
    }

    void mine(const FpTree& tree, std::vector<ItemId>& suffix) {
        if (tree.empty()) return;
        if (controls.single_path_shortcut && tree.single_path()) {
            enumerate_path(tree.single_path_nodes(), 0, suffix);
            return;
        }
        for (ItemId item : tree.items_by_ascending_frequency()) {
            emit(suffix, item, tree.item_total(item));
            if (at_length_cap(suffix.size() + 1)) continue;
            FpTree conditional(tree.prefix_paths(item), min_count);
            suffix.push_back(item);
            mine(conditional, suffix);
            suffix.pop_back();
        }
    }
};

}  // namespace

PatternList fp_growth(const TransactionDB& db, double min_support,
                      const MiningControls& controls) {
    require_valid_support(min_support);
    const std::size_t n = db.recipe_count();
    if (n == 0) return {};

    Miner miner{controls, support_count_threshold(min_support, n), {}};
    FpTree tree(db.transactions, miner.min_count);
    std::vector<ItemId> suffix;
    miner.mine(tree, suffix);

    for (FrequentPattern& p : miner.out) {
        p.support = static_cast<double>(p.count) / static_cast<double>(n);
    }
    std::sort(miner.out.begin(), miner.out.end(), pattern_items_less);
    return std::move(miner.out);
}

PatternList brute_force_frequent(const TransactionDB& db, double min_support) {
    require_valid_support(min_support);
    const std::size_t n = db.recipe_count();
    if (n == 0) return {};

    std::vector<ItemId> universe;
    for (const Transaction& tx : db.transactions) {
        universe.insert(universe.end(), tx.begin(), tx.end());
    }
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    if (universe.size() > 20) {
        throw InputError("brute-force miner: item universe too large (" +
                         std::to_string(universe.size()) + " > 20 items)");
    }

    std::unordered_map<ItemId, std::uint32_t> bit_of;
    for (std::size_t i = 0; i < universe.size(); ++i) {
        bit_of.emplace(universe[i], static_cast<std::uint32_t>(i));
    }
    std::vector<std::uint32_t> masks;
    masks.reserve(n);
    for (const Transaction& tx : db.transactions) {
        std::uint32_t mask = 0;
        for (ItemId item : tx) mask |= 1u << bit_of.at(item);
        masks.push_back(mask);
    }

    const std::uint64_t min_count = support_count_threshold(min_support, n);
    PatternList out;
    const std::uint32_t limit = 1u << universe.size();
    for (std::uint32_t subset = 1; subset < limit; ++subset) {
        std::uint64_t count = 0;
        for (std::uint32_t mask : masks) {
            if ((mask & subset) == subset) ++count;
        }
        if (count < min_count) continue;
        FrequentPattern p;
        for (std::size_t i = 0; i < universe.size(); ++i) {
            if (subset & (1u << i)) p.items.push_back(universe[i]);
        }
        p.count = count;
        p.support = static_cast<double>(count) / static_cast<double>(n);
        out.push_back(std::move(p));
    }
    std::sort(out.begin(), out.end(), pattern_items_less);
    return out;
}

std::map<std::string, PatternList> mine_all(const std::map<std::string, TransactionDB>& dbs,
                                            double min_support, const MiningControls& controls,
                                            unsigned threads) {
    if (dbs.empty()) throw InputError("mine_all: no cuisines to mine");
    require_valid_support(min_support);

    std::vector<const TransactionDB*> order;
    std::vector<const std::string*> names;
    order.reserve(dbs.size());
    for (const auto& [name, db] : dbs) {
        names.push_back(&name);
        order.push_back(&db);
    }

    std::vector<PatternList> results(order.size());
    std::vector<std::string> errors(order.size());
    parallel_for(order.size(), threads, [&](std::size_t i) {
        try {
            results[i] = fp_growth(*order[i], min_support, controls);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!errors[i].empty()) {
            throw InputError("cuisine '" + *names[i] + "': " + errors[i]);
        }
    }

    std::map<std::string, PatternList> mined;
    for (std::size_t i = 0; i < order.size(); ++i) {
        mined.emplace(*names[i], std::move(results[i]));
    }
    return mined;
}

}  // namespace cuisines
