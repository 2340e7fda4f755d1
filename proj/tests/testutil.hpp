#ifndef CUISINES_TESTUTIL_HPP
#define CUISINES_TESTUTIL_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "cuisines/corpus.hpp"
#include "cuisines/mining.hpp"

namespace testutil {

inline cuisines::TransactionDB make_db(const std::string& cuisine,
                                       std::vector<std::vector<int>> raw) {
    cuisines::TransactionDB db;
    db.cuisine = cuisine;
    for (auto& tx : raw) {
        cuisines::Transaction t(tx.begin(), tx.end());
        std::sort(t.begin(), t.end());
        t.erase(std::unique(t.begin(), t.end()), t.end());
        db.transactions.push_back(std::move(t));
    }
    return db;
}

inline cuisines::TransactionDB random_db(std::mt19937_64& rng, int max_items = 12,
                                         int max_transactions = 50) {
    std::uniform_int_distribution<int> n_items(2, max_items);
    std::uniform_int_distribution<int> n_tx(1, max_transactions);
    const int items = n_items(rng);
    const int txs = n_tx(rng);
    std::uniform_int_distribution<int> tx_len(1, items);
    std::uniform_int_distribution<int> pick(0, items - 1);

    std::vector<std::vector<int>> raw;
    raw.reserve(static_cast<std::size_t>(txs));
    for (int t = 0; t < txs; ++t) {
        const int len = tx_len(rng);
        std::vector<int> tx;
        for (int i = 0; i < len; ++i) tx.push_back(pick(rng));
        raw.push_back(std::move(tx));
    }
    return make_db("random", std::move(raw));
}

// Pattern lists as comparable maps: items -> (count, support).
inline std::map<std::vector<cuisines::ItemId>, std::pair<std::uint64_t, double>> pattern_map(
    const cuisines::PatternList& patterns) {
    std::map<std::vector<cuisines::ItemId>, std::pair<std::uint64_t, double>> out;
    for (const auto& p : patterns) out[p.items] = {p.count, p.support};
    return out;
}

// Every one-item-removed subset must be present with support at least as
// large; by induction the whole downward closure follows.
inline bool anti_monotone(const cuisines::PatternList& patterns) {
    const auto map = pattern_map(patterns);
    for (const auto& p : patterns) {
        if (p.items.size() < 2) continue;
        for (std::size_t drop = 0; drop < p.items.size(); ++drop) {
            std::vector<cuisines::ItemId> subset;
            for (std::size_t i = 0; i < p.items.size(); ++i) {
                if (i != drop) subset.push_back(p.items[i]);
            }
            const auto it = map.find(subset);
            if (it == map.end() || it->second.first < p.count) return false;
        }
    }
    return true;
}

inline cuisines::RecipeRecord make_record(std::string id, std::string region,
                                          std::set<std::string> ingredients,
                                          std::set<std::string> processes = {},
                                          std::set<std::string> utensils = {}) {
    cuisines::RecipeRecord rec;
    rec.id = std::move(id);
    rec.region = std::move(region);
    rec.ingredients = std::move(ingredients);
    rec.processes = std::move(processes);
    rec.utensils = std::move(utensils);
    return rec;
}

}  // namespace testutil

#endif
