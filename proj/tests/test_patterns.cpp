#include <doctest.h>

#include <random>

#include "cuisines/clustering.hpp"
#include "cuisines/patterns.hpp"
#include "testutil.hpp"

using namespace cuisines;

TEST_SUITE_BEGIN("patterns");

namespace {

ItemDictionary sample_dict() {
    ItemDictionary dict;
    dict.intern(ItemClass::ingredient, "soy sauce");    // 0
    dict.intern(ItemClass::ingredient, "sesame oil");   // 1
    dict.intern(ItemClass::ingredient, "onion");        // 2
    dict.intern(ItemClass::process, "add");             // 3
    dict.intern(ItemClass::process, "heat");            // 4
    return dict;
}

FrequentPattern pattern(std::vector<ItemId> items, double support = 0.5) {
    FrequentPattern p;
    p.items = std::move(items);
    p.count = 1;
    p.support = support;
    return p;
}

}  // namespace

TEST_CASE("canonical text sorts qualified names and joins with +") {
    const auto dict = sample_dict();
    const std::vector<ItemId> soy_sesame{0, 1};
    CHECK(canonical_pattern_text(soy_sesame, dict) ==
          "ingredient:sesame oil+ingredient:soy sauce");
    const std::vector<ItemId> mixed{2, 3, 4};
    CHECK(canonical_pattern_text(mixed, dict) == "ingredient:onion+process:add+process:heat");
}

TEST_CASE("canonical text is order invariant and rejects empty sets") {
    const auto dict = sample_dict();
    const std::vector<ItemId> a{0, 3, 4};
    const std::vector<ItemId> b{4, 0, 3};
    const std::vector<ItemId> c{3, 4, 0};
    CHECK(canonical_pattern_text(a, dict) == canonical_pattern_text(b, dict));
    CHECK(canonical_pattern_text(a, dict) == canonical_pattern_text(c, dict));
    CHECK_THROWS_AS(canonical_pattern_text(std::vector<ItemId>{}, dict), InputError);
}

TEST_CASE("vocabulary unions canonical texts across cuisines") {
    const auto dict = sample_dict();
    std::map<std::string, PatternList> mined;
    mined["A"] = {pattern({0}), pattern({1})};
    mined["B"] = {pattern({1}), pattern({2})};
    const auto vocab = PatternVocabulary::from_mined(mined, dict);
    CHECK(vocab.size() == 3);  // {0}, {1} and {2} as texts; {1} deduplicates
}

TEST_CASE("vocabulary codes follow lexicographic text order") {
    const auto vocab = PatternVocabulary::from_texts({"b", "a", "c"});
    CHECK(vocab.text_of(0) == "a");
    CHECK(vocab.text_of(1) == "b");
    CHECK(vocab.text_of(2) == "c");
    CHECK(vocab.code_of("b") == 1);
    CHECK_FALSE(vocab.code_of("missing").has_value());
}

TEST_CASE("single-cuisine vocabulary and empty-input error") {
    const auto dict = sample_dict();
    std::map<std::string, PatternList> mined;
    mined["A"] = {pattern({0})};
    const auto vocab = PatternVocabulary::from_mined(mined, dict);
    CHECK(vocab.size() == 1);
    CHECK(vocab.code_of("ingredient:soy sauce") == 0);

    std::map<std::string, PatternList> empty;
    empty["A"] = {};
    CHECK_THROWS_AS(PatternVocabulary::from_mined(empty, dict), InputError);
}

TEST_CASE("vectorize sets exactly the mined codes") {
    const auto vocab = PatternVocabulary::from_texts({"p", "q", "r"});
    const auto vec = vectorize_texts("A", {{"p", 0.5}, {"r", 0.25}}, vocab);
    CHECK(vec.bits == std::vector<std::uint8_t>{1, 0, 1});
    CHECK(vec.weights[0] == 0.5);
    CHECK(vec.weights[1] == 0.0);
    CHECK(vec.weights[2] == 0.25);
    CHECK(vec.popcount() == 2);
}

TEST_CASE("vectorize handles empty cuisines and rejects foreign patterns") {
    const auto vocab = PatternVocabulary::from_texts({"p"});
    const auto zero = vectorize_texts("A", {}, vocab);
    CHECK(zero.popcount() == 0);
    CHECK_THROWS_AS(vectorize_texts("A", {{"unknown", 0.5}}, vocab), InputError);
    CHECK_THROWS_AS(vectorize_texts("A", {{"p", 0.5}, {"p", 0.5}}, vocab), InputError);
}

TEST_CASE("popcount equals the mined pattern count") {
    const auto dict = sample_dict();
    std::map<std::string, PatternList> mined;
    mined["A"] = {pattern({0}), pattern({1}), pattern({0, 1})};
    mined["B"] = {pattern({2})};
    const auto vocab = PatternVocabulary::from_mined(mined, dict);
    for (const auto& [cuisine, patterns] : mined) {
        const auto vec = vectorize(cuisine, patterns, vocab, dict);
        CHECK(vec.popcount() == patterns.size());
    }
}

TEST_CASE("jaccard from bits equals jaccard over the pattern text sets") {
    std::mt19937_64 seed_rng(575);
    const auto dict = sample_dict();
    for (int round = 0; round < 30; ++round) {
        // two random pattern sets over a tiny universe
        std::map<std::string, PatternList> mined;
        std::set<std::vector<ItemId>> sets[2];
        for (int side = 0; side < 2; ++side) {
            const int n = 1 + static_cast<int>(seed_rng() % 4);
            PatternList list;
            for (int i = 0; i < n; ++i) {
                std::vector<ItemId> items{static_cast<ItemId>(seed_rng() % 5)};
                if (seed_rng() % 2) items.push_back(static_cast<ItemId>(seed_rng() % 5));
                std::sort(items.begin(), items.end());
                items.erase(std::unique(items.begin(), items.end()), items.end());
                if (sets[side].insert(items).second) list.push_back(pattern(items));
            }
            mined[side == 0 ? "A" : "B"] = std::move(list);
        }
        const auto vocab = PatternVocabulary::from_mined(mined, dict);
        std::vector<CuisineVector> vectors{vectorize("A", mined["A"], vocab, dict),
                                           vectorize("B", mined["B"], vocab, dict)};

        std::set<std::string> texts_a, texts_b;
        for (const auto& p : mined["A"]) texts_a.insert(canonical_pattern_text(p.items, dict));
        for (const auto& p : mined["B"]) texts_b.insert(canonical_pattern_text(p.items, dict));
        std::vector<std::string> inter, uni;
        std::set_intersection(texts_a.begin(), texts_a.end(), texts_b.begin(), texts_b.end(),
                              std::back_inserter(inter));
        std::set_union(texts_a.begin(), texts_a.end(), texts_b.begin(), texts_b.end(),
                       std::back_inserter(uni));
        const double expected =
            uni.empty() ? 0.0
                        : 1.0 - static_cast<double>(inter.size()) / static_cast<double>(uni.size());

        const auto rows = to_feature_rows(vectors, false);
        const auto distances = pairwise_distances(rows, Metric::jaccard);
        CHECK(distances.at(0, 1) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("vocabulary construction is deterministic") {
    const auto dict = sample_dict();
    std::map<std::string, PatternList> mined;
    mined["A"] = {pattern({0}), pattern({1, 4})};
    mined["B"] = {pattern({2, 3})};
    const auto v1 = PatternVocabulary::from_mined(mined, dict);
    const auto v2 = PatternVocabulary::from_mined(mined, dict);
    CHECK(v1.texts() == v2.texts());
}

TEST_SUITE_END();
