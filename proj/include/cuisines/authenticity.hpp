#ifndef CUISINES_AUTHENTICITY_HPP
#define CUISINES_AUTHENTICITY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cuisines/corpus.hpp"

// Item prevalence per cuisine and the relative-prevalence (authenticity)
// matrix derived from it, plus cuisine fingerprints.

namespace cuisines {

struct PrevalenceOptions {
    ClassSelection classes = ClassSelection::all();
    // Divide by the total recipe count of the whole dataset instead of the
    // per-cuisine count. Off by default: per-cuisine fractions are the only
    // reading that stays comparable across cuisines of different sizes.
    bool global_denominator = false;
};

// P[i][c] = n_i^c / N_c: the fraction of cuisine c's recipes containing item
// i. Recipes count once per item regardless of how the item is used.
struct PrevalenceMatrix {
    std::vector<std::string> items;  // qualified names, ascending
    std::vector<ItemClass> item_classes;
    std::vector<std::string> cuisines;  // ascending
    std::vector<std::uint32_t> counts;  // n_i^c, row-major [item][cuisine]
    std::vector<std::uint32_t> denominators;  // N_c per cuisine
    std::vector<double> values;  // P[i][c]

    std::size_t item_count() const { return items.size(); }
    std::size_t cuisine_count() const { return cuisines.size(); }
    double at(std::size_t item, std::size_t cuisine) const {
        return values[item * cuisines.size() + cuisine];
    }
    std::uint32_t count_at(std::size_t item, std::size_t cuisine) const {
        return counts[item * cuisines.size() + cuisine];
    }
    std::optional<std::size_t> item_index(std::string_view qualified) const;
    std::optional<std::size_t> cuisine_index(std::string_view cuisine) const;
};

// p[i][c] = P[i][c] - mean over the other cuisines of P[i][k]. Every item row
// sums to zero over cuisines (up to rounding) under the default mean.
struct RelativePrevalenceMatrix {
    std::vector<std::string> items;
    std::vector<ItemClass> item_classes;
    std::vector<std::string> cuisines;
    std::vector<double> values;
    bool mean_over_all = false;

    std::size_t item_count() const { return items.size(); }
    std::size_t cuisine_count() const { return cuisines.size(); }
    double at(std::size_t item, std::size_t cuisine) const {
        return values[item * cuisines.size() + cuisine];
    }
    std::optional<std::size_t> item_index(std::string_view qualified) const;
    std::optional<std::size_t> cuisine_index(std::string_view cuisine) const;

    // The cuisine's column, in item order: its feature vector for clustering.
    std::vector<double> cuisine_column(std::size_t cuisine) const;
};

// Recipes whose class restriction leaves no items do not count toward their
// cuisine's denominator; a cuisine left with zero recipes is an error.
PrevalenceMatrix prevalence(std::span<const RecipeRecord> records,
                            const PrevalenceOptions& options = {});

// mean_over_all=false excludes the cuisine's own column from the mean
// (requires >= 2 cuisines); true averages over every cuisine.
RelativePrevalenceMatrix relative_prevalence(const PrevalenceMatrix& matrix,
                                             bool mean_over_all = false);

struct FingerprintEntry {
    std::string item;  // qualified name
    double value = 0.0;
};

struct CuisineFingerprint {
    std::string cuisine;
    std::vector<FingerprintEntry> most_characteristic;   // highest p, descending
    std::vector<FingerprintEntry> least_characteristic;  // lowest p, ascending
};

// Both directions matter: strongly positive items mark what a cuisine leans
// on, strongly negative ones what it avoids relative to the rest.
CuisineFingerprint fingerprint(const RelativePrevalenceMatrix& matrix, std::string_view cuisine,
                               std::size_t top);

}  // namespace cuisines

#endif
