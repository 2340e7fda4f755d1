#ifndef CUISINES_CORPUS_HPP
#define CUISINES_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cuisines/common.hpp"

// Recipe corpus model: parsing, item normalization, cuisine grouping and
// integer-encoded transaction databases.

namespace cuisines {

enum class ItemClass : std::uint8_t { ingredient = 0, process = 1, utensil = 2 };

inline constexpr ItemClass kAllItemClasses[] = {ItemClass::ingredient, ItemClass::process,
                                                ItemClass::utensil};

std::string_view to_string(ItemClass cls);
std::optional<ItemClass> item_class_from_string(std::string_view name);

// Which item classes participate in a run.
struct ClassSelection {
    bool ingredients = false;
    bool processes = false;
    bool utensils = false;

    static ClassSelection all() { return {true, true, true}; }
    static ClassSelection only(ItemClass cls);
    // Comma-separated class names, or "all". Throws InputError on unknown names
    // or an empty selection.
    static ClassSelection parse(std::string_view text);

    bool contains(ItemClass cls) const;
    bool empty() const { return !ingredients && !processes && !utensils; }
    std::string describe() const;
};

// One recipe: a cuisine-tagged unordered item set. Items are stored
// normalized and deduplicated per class; utensils are frequently absent.
struct RecipeRecord {
    std::string id;
    std::string region;
    std::set<std::string> ingredients;
    std::set<std::string> processes;
    std::set<std::string> utensils;

    const std::set<std::string>& items(ItemClass cls) const;
    std::size_t item_count() const;
};

enum class CorpusFormat { jsonl, csv };

std::optional<CorpusFormat> corpus_format_from_string(std::string_view name);

// Reads one record per line/row, in input order. Item strings are normalized;
// missing item arrays become empty sets. Throws InputError naming the line and
// field for malformed input, duplicate recipe ids, or recipes with no items.
std::vector<RecipeRecord> load_corpus(const std::filesystem::path& path, CorpusFormat format);
std::vector<RecipeRecord> parse_corpus(std::string_view text, CorpusFormat format,
                                       std::string_view source_name);

using ItemId = std::int32_t;
// Sorted unique item ids.
using Transaction = std::vector<ItemId>;

// Bijection between (class, item string) and dense ids in first-seen order.
// The same string in two classes gets two ids; mining runs on the merged id
// space while class provenance stays recoverable.
class ItemDictionary {
public:
    ItemId intern(ItemClass cls, std::string_view name);
    std::optional<ItemId> find(ItemClass cls, std::string_view name) const;

    const std::string& name(ItemId id) const;
    ItemClass item_class(ItemId id) const;
    std::string qualified_name(ItemId id) const;  // e.g. "ingredient:onion"

    std::size_t size() const { return entries_.size(); }

private:
    struct Entry {
        ItemClass cls;
        std::string name;
    };
    std::vector<Entry> entries_;
    std::unordered_map<std::string, ItemId> index_;  // keyed by qualified name
};

std::string qualify_item(ItemClass cls, std::string_view name);

struct TransactionDB {
    std::string cuisine;
    std::vector<Transaction> transactions;

    std::size_t recipe_count() const { return transactions.size(); }
};

struct TransactionBuild {
    std::map<std::string, TransactionDB> by_cuisine;
    ItemDictionary dictionary;
    // Recipes whose class restriction left no items; they contribute no
    // transaction but their cuisine still gets a (possibly empty) database.
    std::size_t dropped_recipes = 0;
};

// One TransactionDB per distinct region; each transaction is the recipe's
// item set restricted to `classes`, mapped through a fresh dictionary.
TransactionBuild build_transactions(std::span<const RecipeRecord> records, ClassSelection classes);

}  // namespace cuisines

#endif
