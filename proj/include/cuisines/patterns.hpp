#ifndef CUISINES_PATTERNS_HPP
#define CUISINES_PATTERNS_HPP

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cuisines/corpus.hpp"
#include "cuisines/mining.hpp"

// Canonical string patterns, the cross-cuisine pattern vocabulary, and
// per-cuisine feature vectors.

namespace cuisines {

// Class-qualified item names sorted lexicographically and joined by "+",
// e.g. "ingredient:sesame oil+ingredient:soy sauce". Two itemsets are equal
// iff their canonical texts are equal.
std::string canonical_pattern_text(std::span<const ItemId> items, const ItemDictionary& dict);

// Dense codes over the distinct canonical texts of a whole mining run.
// Codes are assigned in ascending lexicographic text order, so identical
// inputs always produce identical codes.
class PatternVocabulary {
public:
    static PatternVocabulary from_mined(const std::map<std::string, PatternList>& mined,
                                        const ItemDictionary& dict);
    static PatternVocabulary from_texts(const std::set<std::string>& texts);

    std::size_t size() const { return texts_.size(); }
    std::optional<std::size_t> code_of(std::string_view text) const;
    const std::string& text_of(std::size_t code) const { return texts_.at(code); }
    const std::vector<std::string>& texts() const { return texts_; }

private:
    std::vector<std::string> texts_;  // ascending; code == index
    std::unordered_map<std::string, std::size_t> index_;
};

// Binary presence vector over the vocabulary, with the mining supports kept
// alongside for weighted distance runs.
struct CuisineVector {
    std::string cuisine;
    std::vector<std::uint8_t> bits;
    std::vector<double> weights;  // support where the bit is set, 0 elsewhere

    std::size_t popcount() const;
};

CuisineVector vectorize(const std::string& cuisine, const PatternList& patterns,
                        const PatternVocabulary& vocab, const ItemDictionary& dict);

// Same, from (canonical text, support) rows as stored in pattern report files.
CuisineVector vectorize_texts(const std::string& cuisine,
                              const std::vector<std::pair<std::string, double>>& rows,
                              const PatternVocabulary& vocab);

}  // namespace cuisines

#endif
