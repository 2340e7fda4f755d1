#include <doctest.h>

#include <cmath>
#include <random>

#include "cuisines/authenticity.hpp"
#include "testutil.hpp"

using namespace cuisines;
using testutil::make_record;

TEST_SUITE_BEGIN("authenticity");

namespace {

// Cuisine A: onion in 3 of 4 recipes. Cuisines B and C to taste.
std::vector<RecipeRecord> onion_corpus() {
    return {
        make_record("a1", "A", {"onion", "salt"}),
        make_record("a2", "A", {"onion"}),
        make_record("a3", "A", {"onion", "pepper"}),
        make_record("a4", "A", {"salt"}),
        make_record("b1", "B", {"onion"}),
        make_record("b2", "B", {"salt"}),
        make_record("b3", "B", {"pepper"}),
        make_record("b4", "B", {"salt", "pepper"}),
        make_record("c1", "C", {"onion", "salt"}),
        make_record("c2", "C", {"salt"}),
    };
}

}  // namespace

TEST_CASE("prevalence counts recipes containing an item per cuisine") {
    const auto records = onion_corpus();
    const auto P = prevalence(records);
    const auto onion = P.item_index("ingredient:onion");
    REQUIRE(onion.has_value());
    CHECK(P.at(*onion, *P.cuisine_index("A")) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(P.at(*onion, *P.cuisine_index("B")) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(P.at(*onion, *P.cuisine_index("C")) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(P.count_at(*onion, *P.cuisine_index("A")) == 3);
    CHECK(P.denominators[*P.cuisine_index("A")] == 4);
}

TEST_CASE("items present everywhere or nowhere hit the bounds") {
    const std::vector<RecipeRecord> records{
        make_record("a1", "A", {"salt"}),
        make_record("a2", "A", {"salt", "onion"}),
        make_record("b1", "B", {"salt"}),
    };
    const auto P = prevalence(records);
    CHECK(P.at(*P.item_index("ingredient:salt"), *P.cuisine_index("A")) == 1.0);
    CHECK(P.at(*P.item_index("ingredient:onion"), *P.cuisine_index("B")) == 0.0);
}

TEST_CASE("relative prevalence reproduces the worked three-cuisine example exactly") {
    const auto P = prevalence(onion_corpus());
    const auto rel = relative_prevalence(P);
    const auto onion = rel.item_index("ingredient:onion");
    REQUIRE(onion.has_value());
    // A: 0.75 - (0.25+0.5)/2, B: 0.25 - (0.75+0.5)/2, C: 0.5 - (0.75+0.25)/2
    CHECK(rel.at(*onion, *rel.cuisine_index("A")) == 0.375);
    CHECK(rel.at(*onion, *rel.cuisine_index("B")) == -0.375);
    CHECK(rel.at(*onion, *rel.cuisine_index("C")) == 0.0);
}

TEST_CASE("every item row sums to zero across cuisines") {
    std::mt19937_64 rng(2468);
    const char* cuisines[] = {"A", "B", "C", "D", "E", "F"};
    const char* items[] = {"salt", "onion", "garlic", "basil", "cumin", "lime", "rice", "egg"};
    for (int round = 0; round < 20; ++round) {
        const int n_cuisines = 2 + static_cast<int>(rng() % 5);
        const int n_recipes = 10 + static_cast<int>(rng() % 191);
        std::vector<RecipeRecord> records;
        for (int r = 0; r < n_recipes; ++r) {
            std::set<std::string> ingredients;
            const int k = 1 + static_cast<int>(rng() % 4);
            for (int i = 0; i < k; ++i) ingredients.insert(items[rng() % 8]);
            records.push_back(make_record("r" + std::to_string(r),
                                          cuisines[rng() % n_cuisines], ingredients));
        }
        // ensure every cuisine label used at least once
        for (int c = 0; c < n_cuisines; ++c) {
            records.push_back(make_record("pad" + std::to_string(c), cuisines[c], {"salt"}));
        }
        const auto rel = relative_prevalence(prevalence(records));
        for (std::size_t i = 0; i < rel.item_count(); ++i) {
            double row_sum = 0.0;
            for (std::size_t c = 0; c < rel.cuisine_count(); ++c) row_sum += rel.at(i, c);
            CHECK(std::abs(row_sum) < 1e-9);
        }
    }
}

TEST_CASE("single cuisine cannot have relative prevalence") {
    const std::vector<RecipeRecord> records{make_record("a1", "A", {"salt"})};
    CHECK_THROWS_AS(relative_prevalence(prevalence(records)), InputError);
}

TEST_CASE("a cuisine emptied by class restriction is an error naming it") {
    const std::vector<RecipeRecord> records{
        make_record("a1", "A", {"salt"}),
        make_record("b1", "OnlyProcesses", {}, {"chop"}),
    };
    PrevalenceOptions options;
    options.classes = ClassSelection::only(ItemClass::ingredient);
    CHECK_THROWS_WITH_AS(prevalence(records, options), doctest::Contains("OnlyProcesses"),
                         InputError);
}

TEST_CASE("restricting classes matches a corpus stripped to those classes") {
    const std::vector<RecipeRecord> full{
        make_record("a1", "A", {"salt", "onion"}, {"chop"}, {"pan"}),
        make_record("a2", "A", {"salt"}, {"boil"}),
        make_record("b1", "B", {"onion"}, {"chop"}),
    };
    std::vector<RecipeRecord> stripped = full;
    for (auto& rec : stripped) {
        rec.processes.clear();
        rec.utensils.clear();
    }
    PrevalenceOptions restricted;
    restricted.classes = ClassSelection::only(ItemClass::ingredient);
    const auto a = prevalence(full, restricted);
    const auto b = prevalence(stripped);
    CHECK(a.items == b.items);
    CHECK(a.values == b.values);
}

TEST_CASE("raising an item count never lowers its relative prevalence") {
    auto records = onion_corpus();
    const auto before = relative_prevalence(prevalence(records));
    const auto onion_before = before.at(*before.item_index("ingredient:onion"),
                                        *before.cuisine_index("A"));
    // a4 gains onion: n_onion^A goes from 3 to 4
    for (auto& rec : records) {
        if (rec.id == "a4") rec.ingredients.insert("onion");
    }
    const auto after = relative_prevalence(prevalence(records));
    const auto onion_after = after.at(*after.item_index("ingredient:onion"),
                                      *after.cuisine_index("A"));
    CHECK(onion_after >= onion_before);
}

TEST_CASE("global denominator divides every column by the dataset size") {
    const auto records = onion_corpus();
    PrevalenceOptions options;
    options.global_denominator = true;
    const auto P = prevalence(records, options);
    for (std::uint32_t d : P.denominators) CHECK(d == 10);
    const auto onion = P.item_index("ingredient:onion");
    CHECK(P.at(*onion, *P.cuisine_index("A")) == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("mean over all cuisines shrinks values by a constant factor") {
    const auto P = prevalence(onion_corpus());
    const auto excl = relative_prevalence(P, false);
    const auto all = relative_prevalence(P, true);
    // p_all = p_excl * (C-1)/C algebraically
    const double factor = 2.0 / 3.0;
    for (std::size_t i = 0; i < excl.item_count(); ++i) {
        for (std::size_t c = 0; c < excl.cuisine_count(); ++c) {
            CHECK(all.at(i, c) == doctest::Approx(excl.at(i, c) * factor).epsilon(1e-12));
        }
    }
}

TEST_CASE("fingerprint ranks items by signed relative prevalence") {
    const auto rel = relative_prevalence(prevalence(onion_corpus()));
    const auto fp = fingerprint(rel, "A", 2);
    REQUIRE(fp.most_characteristic.size() == 2);
    REQUIRE(fp.least_characteristic.size() == 2);
    CHECK(fp.most_characteristic[0].item == "ingredient:onion");
    CHECK(fp.most_characteristic[0].value == 0.375);
    CHECK(fp.least_characteristic[0].value <= fp.least_characteristic[1].value);
}

TEST_CASE("fingerprint clamps, validates and handles single items") {
    const std::vector<RecipeRecord> records{
        make_record("a1", "A", {"salt"}),
        make_record("b1", "B", {"salt"}),
    };
    const auto rel = relative_prevalence(prevalence(records));
    const auto fp = fingerprint(rel, "A", 10);
    CHECK(fp.most_characteristic.size() == 1);
    CHECK(fp.least_characteristic.size() == 1);
    CHECK(fp.most_characteristic[0].item == "ingredient:salt");
    CHECK_THROWS_AS(fingerprint(rel, "Nowhere", 1), InputError);
    CHECK_THROWS_AS(fingerprint(rel, "A", 0), InputError);
}

TEST_SUITE_END();
