#include "cuisines/authenticity.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cuisines {

namespace {

std::optional<std::size_t> index_of(const std::vector<std::string>& sorted,
                                    std::string_view needle) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), needle);
    if (it == sorted.end() || *it != needle) return std::nullopt;
    return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace

std::optional<std::size_t> PrevalenceMatrix::item_index(std::string_view qualified) const {
    return index_of(items, qualified);
}

std::optional<std::size_t> PrevalenceMatrix::cuisine_index(std::string_view cuisine) const {
    return index_of(cuisines, cuisine);
}

std::optional<std::size_t> RelativePrevalenceMatrix::item_index(
    std::string_view qualified) const {
    return index_of(items, qualified);
}

std::optional<std::size_t> RelativePrevalenceMatrix::cuisine_index(
    std::string_view cuisine) const {
    return index_of(cuisines, cuisine);
}

std::vector<double> RelativePrevalenceMatrix::cuisine_column(std::size_t cuisine) const {
    std::vector<double> column;
    column.reserve(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) column.push_back(at(i, cuisine));
    return column;
}

PrevalenceMatrix prevalence(std::span<const RecipeRecord> records,
                            const PrevalenceOptions& options) {
    if (records.empty()) throw InputError("prevalence: no recipes");
    if (options.classes.empty()) throw InputError("prevalence: class selection is empty");

    // Restrict each recipe to the selected classes up front.
    struct Restricted {
        const RecipeRecord* recipe;
        std::set<std::string> qualified;
    };
    std::map<std::string, std::vector<Restricted>> per_cuisine;
    for (const RecipeRecord& rec : records) {
        Restricted r{&rec, {}};
        for (ItemClass cls : kAllItemClasses) {
            if (!options.classes.contains(cls)) continue;
            for (const std::string& item : rec.items(cls)) {
                r.qualified.insert(qualify_item(cls, item));
            }
        }
        auto& bucket = per_cuisine[rec.region];
        if (!r.qualified.empty()) bucket.push_back(std::move(r));
    }

    PrevalenceMatrix m;
    std::uint32_t total_recipes = 0;
    for (const auto& [cuisine, recipes] : per_cuisine) {
        if (recipes.empty()) {
            throw InputError("cuisine '" + cuisine + "' has no recipes with items in classes " +
                             options.classes.describe());
        }
        m.cuisines.push_back(cuisine);
        total_recipes += static_cast<std::uint32_t>(recipes.size());
    }

    std::set<std::string> item_set;
    for (const auto& [cuisine, recipes] : per_cuisine) {
        for (const Restricted& r : recipes) {
            item_set.insert(r.qualified.begin(), r.qualified.end());
        }
    }
    m.items.assign(item_set.begin(), item_set.end());
    m.item_classes.reserve(m.items.size());
    for (const std::string& qualified : m.items) {
        const auto colon = qualified.find(':');
        m.item_classes.push_back(*item_class_from_string(qualified.substr(0, colon)));
    }

    const std::size_t n_items = m.items.size();
    const std::size_t n_cuisines = m.cuisines.size();
    m.counts.assign(n_items * n_cuisines, 0);
    m.denominators.assign(n_cuisines, 0);
    m.values.assign(n_items * n_cuisines, 0.0);

    for (std::size_t c = 0; c < n_cuisines; ++c) {
        const auto& recipes = per_cuisine.at(m.cuisines[c]);
        m.denominators[c] = options.global_denominator
                                ? total_recipes
                                : static_cast<std::uint32_t>(recipes.size());
        for (const Restricted& r : recipes) {
            for (const std::string& qualified : r.qualified) {
                const auto idx = m.item_index(qualified);
                m.counts[*idx * n_cuisines + c] += 1;
            }
        }
        for (std::size_t i = 0; i < n_items; ++i) {
            m.values[i * n_cuisines + c] = static_cast<double>(m.counts[i * n_cuisines + c]) /
                                           static_cast<double>(m.denominators[c]);
        }
    }
    return m;
}

RelativePrevalenceMatrix relative_prevalence(const PrevalenceMatrix& matrix,
                                             bool mean_over_all) {
    const std::size_t n_cuisines = matrix.cuisine_count();
    if (!mean_over_all && n_cuisines < 2) {
        throw InputError("relative prevalence needs at least 2 cuisines (mean over the others "
                         "is undefined for one)");
    }
    if (n_cuisines == 0) throw InputError("relative prevalence: empty matrix");

    RelativePrevalenceMatrix rel;
    rel.items = matrix.items;
    rel.item_classes = matrix.item_classes;
    rel.cuisines = matrix.cuisines;
    rel.mean_over_all = mean_over_all;
    rel.values.assign(matrix.values.size(), 0.0);

    for (std::size_t i = 0; i < matrix.item_count(); ++i) {
        double row_sum = 0.0;
        for (std::size_t c = 0; c < n_cuisines; ++c) row_sum += matrix.at(i, c);
        for (std::size_t c = 0; c < n_cuisines; ++c) {
            const double own = matrix.at(i, c);
            const double mean = mean_over_all
                                    ? row_sum / static_cast<double>(n_cuisines)
                                    : (row_sum - own) / static_cast<double>(n_cuisines - 1);
            rel.values[i * n_cuisines + c] = own - mean;
        }
    }
    return rel;
}

CuisineFingerprint fingerprint(const RelativePrevalenceMatrix& matrix, std::string_view cuisine,
                               std::size_t top) {
    if (top < 1) throw InputError("fingerprint: top must be >= 1");
    const auto c = matrix.cuisine_index(cuisine);
    if (!c) throw InputError("fingerprint: unknown cuisine '" + std::string(cuisine) + "'");

    std::vector<FingerprintEntry> entries;
    entries.reserve(matrix.item_count());
    for (std::size_t i = 0; i < matrix.item_count(); ++i) {
        entries.push_back({matrix.items[i], matrix.at(i, *c)});
    }

    CuisineFingerprint fp;
    fp.cuisine = std::string(cuisine);
    const std::size_t take = std::min(top, entries.size());

    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return a.value != b.value ? a.value > b.value : a.item < b.item;
    });
    fp.most_characteristic.assign(entries.begin(), entries.begin() + take);

    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return a.value != b.value ? a.value < b.value : a.item < b.item;
    });
    fp.least_characteristic.assign(entries.begin(), entries.begin() + take);
    return fp;
}

}  // namespace cuisines
