#include "cuisines/files.hpp"

#include <algorithm>
#include <charconv>

#include <json.hpp>

namespace cuisines {

namespace {

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string json_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    out.push_back('"');
    return out;
}

double parse_double(const std::string& text, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw InputError(where + ": not a number: '" + text + "'");
    }
}

std::uint64_t parse_count(const std::string& text, const std::string& where) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw InputError(where + ": not a count: '" + text + "'");
    }
    return v;
}

std::vector<std::vector<std::string>> read_tsv(const std::filesystem::path& path,
                                               std::string_view header) {
    const std::string text = read_text_file(path);
    std::vector<std::vector<std::string>> rows;
    std::size_t start = 0, line_no = 0;
    while (start <= text.size()) {
        std::size_t pos = text.find('\n', start);
        std::string line = pos == std::string::npos ? text.substr(start)
                                                    : text.substr(start, pos - start);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        ++line_no;
        if (!line.empty()) {
            if (line_no == 1) {
                if (line != header) {
                    throw InputError(path.string() + ": unexpected header '" + line + "'");
                }
            } else {
                rows.push_back(split(line, '\t'));
            }
        }
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    if (line_no == 0) throw InputError(path.string() + ": empty file");
    return rows;
}

}  // namespace

std::string pattern_file_name(std::string_view cuisine) {
    return "patterns_" + slugify(cuisine) + ".tsv";
}

void write_pattern_file(const std::filesystem::path& path, const std::string& cuisine,
                        const PatternList& patterns, const ItemDictionary& dict) {
    std::vector<PatternRow> rows;
    rows.reserve(patterns.size());
    for (const FrequentPattern& p : patterns) {
        rows.push_back({canonical_pattern_text(p.items, dict), p.support, p.count});
    }
    std::sort(rows.begin(), rows.end(), [](const PatternRow& a, const PatternRow& b) {
        return a.support != b.support ? a.support > b.support : a.text < b.text;
    });

    std::string out = "cuisine\tpattern\tsupport\tcount\n";
    for (const PatternRow& row : rows) {
        out += cuisine;
        out.push_back('\t');
        out += row.text;
        out.push_back('\t');
        out += format_fixed(row.support);
        out.push_back('\t');
        out += std::to_string(row.count);
        out.push_back('\n');
    }
    write_text_file_atomic(path, out);
}

std::vector<PatternRow> read_pattern_file(const std::filesystem::path& path) {
    std::vector<PatternRow> rows;
    for (const auto& cells : read_tsv(path, "cuisine\tpattern\tsupport\tcount")) {
        if (cells.size() != 4) {
            throw InputError(path.string() + ": expected 4 columns, got " +
                             std::to_string(cells.size()));
        }
        rows.push_back({cells[1], parse_double(cells[2], path.string()),
                        parse_count(cells[3], path.string())});
    }
    return rows;
}

void write_summary(const std::filesystem::path& path, std::span<const SummaryRow> rows) {
    std::string out = "cuisine\trecipe_count\ttop_pattern\ttop_support\tpattern_count\n";
    for (const SummaryRow& row : rows) {
        out += row.cuisine;
        out.push_back('\t');
        out += std::to_string(row.recipe_count);
        out.push_back('\t');
        out += row.top_pattern;
        out.push_back('\t');
        out += format_fixed(row.top_support);
        out.push_back('\t');
        out += std::to_string(row.pattern_count);
        out.push_back('\n');
    }
    write_text_file_atomic(path, out);
}

std::vector<SummaryRow> read_summary(const std::filesystem::path& path) {
    std::vector<SummaryRow> rows;
    for (const auto& cells :
         read_tsv(path, "cuisine\trecipe_count\ttop_pattern\ttop_support\tpattern_count")) {
        if (cells.size() != 5) {
            throw InputError(path.string() + ": expected 5 columns, got " +
                             std::to_string(cells.size()));
        }
        SummaryRow row;
        row.cuisine = cells[0];
        row.recipe_count = parse_count(cells[1], path.string());
        row.top_pattern = cells[2];
        row.top_support = parse_double(cells[3], path.string());
        row.pattern_count = parse_count(cells[4], path.string());
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_vocab(const std::filesystem::path& path, const PatternVocabulary& vocab) {
    std::string out = "code\tpattern\n";
    for (std::size_t code = 0; code < vocab.size(); ++code) {
        out += std::to_string(code);
        out.push_back('\t');
        out += vocab.text_of(code);
        out.push_back('\n');
    }
    write_text_file_atomic(path, out);
}

void write_vectors(const std::filesystem::path& path, std::span<const CuisineVector> vectors,
                   bool weighted) {
    std::string out = "cuisine";
    const std::size_t dims = vectors.empty() ? 0 : vectors[0].bits.size();
    for (std::size_t code = 0; code < dims; ++code) {
        out.push_back('\t');
        out += std::to_string(code);
    }
    out.push_back('\n');
    for (const CuisineVector& vec : vectors) {
        out += vec.cuisine;
        for (std::size_t code = 0; code < dims; ++code) {
            out.push_back('\t');
            if (weighted) {
                out += format_fixed(vec.weights[code]);
            } else {
                out += vec.bits[code] ? "1" : "0";
            }
        }
        out.push_back('\n');
    }
    write_text_file_atomic(path, out);
}

namespace {

void write_matrix_csv(const std::filesystem::path& path,
                      const std::vector<std::string>& items,
                      const std::vector<std::string>& cuisines,
                      const std::vector<double>& values) {
    std::string out = "item";
    for (const std::string& cuisine : cuisines) {
        out.push_back(',');
        out += csv_quote(cuisine);
    }
    out.push_back('\n');
    const std::size_t n_cuisines = cuisines.size();
    for (std::size_t i = 0; i < items.size(); ++i) {
        out += csv_quote(items[i]);
        for (std::size_t c = 0; c < n_cuisines; ++c) {
            out.push_back(',');
            out += format_fixed(values[i * n_cuisines + c]);
        }
        out.push_back('\n');
    }
    write_text_file_atomic(path, out);
}

}  // namespace

void write_prevalence_csv(const std::filesystem::path& path, const PrevalenceMatrix& matrix) {
    write_matrix_csv(path, matrix.items, matrix.cuisines, matrix.values);
}

void write_relative_prevalence_csv(const std::filesystem::path& path,
                                   const RelativePrevalenceMatrix& matrix) {
    write_matrix_csv(path, matrix.items, matrix.cuisines, matrix.values);
}

void write_fingerprints(const std::filesystem::path& path,
                        std::span<const CuisineFingerprint> fingerprints) {
    std::string out = "cuisine\tdirection\trank\titem\tvalue\n";
    for (const CuisineFingerprint& fp : fingerprints) {
        const auto emit = [&](const std::vector<FingerprintEntry>& list, const char* direction) {
            for (std::size_t r = 0; r < list.size(); ++r) {
                out += fp.cuisine;
                out.push_back('\t');
                out += direction;
                out.push_back('\t');
                out += std::to_string(r + 1);
                out.push_back('\t');
                out += list[r].item;
                out.push_back('\t');
                out += format_fixed(list[r].value);
                out.push_back('\n');
            }
        };
        emit(fp.most_characteristic, "most");
        emit(fp.least_characteristic, "least");
    }
    write_text_file_atomic(path, out);
}

void write_linkage_json(const std::filesystem::path& path, const Dendrogram& tree,
                        std::string_view metric_name) {
    std::string out = "{\n  \"labels\": [";
    for (std::size_t i = 0; i < tree.leaves.size(); ++i) {
        if (i > 0) out += ", ";
        out += json_quote(tree.leaves[i]);
    }
    out += "],\n  \"linkage\": ";
    out += json_quote(std::string(to_string(tree.linkage)));
    out += ",\n  \"metric\": ";
    out += json_quote(std::string(metric_name));
    out += ",\n  \"merges\": [";
    for (std::size_t s = 0; s < tree.merges.size(); ++s) {
        const MergeStep& m = tree.merges[s];
        out += s > 0 ? ",\n    [" : "\n    [";
        out += std::to_string(m.left);
        out += ", ";
        out += std::to_string(m.right);
        out += ", ";
        out += format_fixed(m.height);
        out += ", ";
        out += std::to_string(m.size);
        out.push_back(']');
    }
    out += "\n  ]\n}\n";
    write_text_file_atomic(path, out);
}

Dendrogram read_linkage_json(const std::filesystem::path& path, std::string* metric_name) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(path.string() + ": invalid JSON: " + e.what());
    }
    try {
        Dendrogram tree;
        tree.leaves = doc.at("labels").get<std::vector<std::string>>();
        const auto linkage = linkage_from_string(doc.at("linkage").get<std::string>());
        if (!linkage) throw InputError("unknown linkage");
        tree.linkage = *linkage;
        if (metric_name != nullptr) *metric_name = doc.at("metric").get<std::string>();
        for (const auto& row : doc.at("merges")) {
            if (!row.is_array() || row.size() != 4) {
                throw InputError("merge rows must be [left, right, height, size]");
            }
            MergeStep m;
            m.left = row[0].get<std::int32_t>();
            m.right = row[1].get<std::int32_t>();
            m.height = row[2].get<double>();
            m.size = row[3].get<std::int32_t>();
            tree.merges.push_back(m);
        }
        return tree;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

void write_elbow_csv(const std::filesystem::path& path, std::span<const KMeansResult> results) {
    std::string out = "k,wcss,best_restart_seed\n";
    for (const KMeansResult& r : results) {
        out += std::to_string(r.k);
        out.push_back(',');
        out += format_fixed(r.wcss);
        out.push_back(',');
        out += std::to_string(r.seed);
        out.push_back('\n');
    }
    write_text_file_atomic(path, out);
}

void write_comparison_json(const std::filesystem::path& path,
                           const TreeComparison& comparison) {
    std::string out = "{\n";
    out += "  \"cophenetic_correlation\": " + format_fixed(comparison.cophenetic_correlation) +
           ",\n";
    out += "  \"leaves\": " + std::to_string(comparison.leaf_count) + ",\n";
    out += "  \"rf_normalized\": " + format_fixed(comparison.rf_normalized) + ",\n";
    out += "  \"robinson_foulds\": " + std::to_string(comparison.robinson_foulds) + "\n";
    out += "}\n";
    write_text_file_atomic(path, out);
}

}  // namespace cuisines
