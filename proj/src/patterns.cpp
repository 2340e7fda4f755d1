#include "cuisines/patterns.hpp"

#include <algorithm>

namespace cuisines {

std::string canonical_pattern_text(std::span<const ItemId> items, const ItemDictionary& dict) {
    if (items.empty()) throw InputError("cannot canonicalize an empty itemset");
    std::vector<std::string> names;
    names.reserve(items.size());
    for (ItemId id : items) names.push_back(dict.qualified_name(id));
    std::sort(names.begin(), names.end());
    return join(names, "+");
}

PatternVocabulary PatternVocabulary::from_mined(const std::map<std::string, PatternList>& mined,
                                                const ItemDictionary& dict) {
    std::set<std::string> texts;
    for (const auto& [cuisine, patterns] : mined) {
        for (const FrequentPattern& p : patterns) {
            texts.insert(canonical_pattern_text(p.items, dict));
        }
    }
    return from_texts(texts);
}

PatternVocabulary PatternVocabulary::from_texts(const std::set<std::string>& texts) {
    if (texts.empty()) throw InputError("pattern vocabulary would be empty: no mined patterns");
    PatternVocabulary vocab;
    vocab.texts_.assign(texts.begin(), texts.end());  // std::set iterates in ascending order
    vocab.index_.reserve(vocab.texts_.size());
    for (std::size_t code = 0; code < vocab.texts_.size(); ++code) {
        vocab.index_.emplace(vocab.texts_[code], code);
    }
    return vocab;
}

std::optional<std::size_t> PatternVocabulary::code_of(std::string_view text) const {
    const auto it = index_.find(std::string(text));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t CuisineVector::popcount() const {
    std::size_t n = 0;
    for (std::uint8_t b : bits) n += b != 0;
    return n;
}

CuisineVector vectorize_texts(const std::string& cuisine,
                              const std::vector<std::pair<std::string, double>>& rows,
                              const PatternVocabulary& vocab) {
    CuisineVector vec;
    vec.cuisine = cuisine;
    vec.bits.assign(vocab.size(), 0);
    vec.weights.assign(vocab.size(), 0.0);
    for (const auto& [text, support] : rows) {
        const auto code = vocab.code_of(text);
        if (!code) {
            throw InputError("pattern '" + text + "' of cuisine '" + cuisine +
                             "' is not in the vocabulary");
        }
        if (vec.bits[*code]) {
            throw InputError("duplicate pattern '" + text + "' for cuisine '" + cuisine + "'");
        }
        vec.bits[*code] = 1;
        vec.weights[*code] = support;
    }
    return vec;
}

CuisineVector vectorize(const std::string& cuisine, const PatternList& patterns,
                        const PatternVocabulary& vocab, const ItemDictionary& dict) {
    std::vector<std::pair<std::string, double>> rows;
    rows.reserve(patterns.size());
    for (const FrequentPattern& p : patterns) {
        rows.emplace_back(canonical_pattern_text(p.items, dict), p.support);
    }
    return vectorize_texts(cuisine, rows, vocab);
}

}  // namespace cuisines
