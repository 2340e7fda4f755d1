#include "cuisines/corpus.hpp"

#include <algorithm>
#include <unordered_set>

#include <json.hpp>

namespace cuisines {

namespace {

using nlohmann::json;

std::string line_prefix(std::string_view source, std::size_t line_no) {
    std::string out(source);
    out += ":";
    out += std::to_string(line_no);
    return out;
}

// Splits text into lines, accepting LF and CRLF, and dropping a UTF-8 BOM.
std::vector<std::string_view> split_lines(std::string_view text) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t pos = text.find('\n', start);
        if (pos == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        std::string_view line = text.substr(start, pos - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = pos + 1;
    }
    return lines;
}

std::set<std::string> normalize_items(const std::vector<std::string>& raw,
                                      const std::string& where, std::string_view field) {
    std::set<std::string> out;
    for (const std::string& item : raw) {
        std::string norm = normalize_item(item);
        if (norm.empty()) {
            throw InputError(where + ": field '" + std::string(field) +
                             "' contains an item that is empty after normalization");
        }
        out.insert(std::move(norm));
    }
    return out;
}

std::vector<std::string> json_string_array(const json& obj, const char* field,
                                           const std::string& where) {
    if (!obj.contains(field)) return {};
    const json& arr = obj.at(field);
    if (!arr.is_array()) {
        throw InputError(where + ": field '" + field + "' must be an array of strings");
    }
    std::vector<std::string> out;
    out.reserve(arr.size());
    for (const json& v : arr) {
        if (!v.is_string()) {
            throw InputError(where + ": field '" + field + "' must be an array of strings");
        }
        out.push_back(v.get<std::string>());
    }
    return out;
}

RecipeRecord parse_jsonl_line(std::string_view line, const std::string& where) {
    json obj;
    try {
        obj = json::parse(line);
    } catch (const json::parse_error& e) {
        throw InputError(where + ": invalid JSON: " + e.what());
    }
    if (!obj.is_object()) throw InputError(where + ": line is not a JSON object");
    for (const char* field : {"id", "region"}) {
        if (!obj.contains(field) || !obj.at(field).is_string()) {
            throw InputError(where + ": field '" + field + "' must be a nonempty string");
        }
    }
    RecipeRecord rec;
    rec.id = obj.at("id").get<std::string>();
    rec.region = obj.at("region").get<std::string>();
    rec.ingredients = normalize_items(json_string_array(obj, "ingredients", where), where,
                                      "ingredients");
    rec.processes = normalize_items(json_string_array(obj, "processes", where), where,
                                    "processes");
    rec.utensils = normalize_items(json_string_array(obj, "utensils", where), where, "utensils");
    return rec;
}

// Minimal CSV row parser: comma separators, double-quoted cells with ""
// escapes.
std::vector<std::string> parse_csv_row(std::string_view line, const std::string& where) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell.push_back(c);
            }
        } else if (c == '"') {
            if (!cell.empty()) throw InputError(where + ": stray quote inside unquoted cell");
            quoted = true;
        } else if (c == ',') {
            cells.push_back(std::move(cell));
            cell.clear();
        } else {
            cell.push_back(c);
        }
        ++i;
    }
    if (quoted) throw InputError(where + ": unterminated quoted cell");
    cells.push_back(std::move(cell));
    return cells;
}

std::vector<std::string> split_multi_value(const std::string& cell) {
    std::vector<std::string> out;
    for (std::string& part : split(cell, '|')) {
        if (!part.empty()) out.push_back(std::move(part));
    }
    return out;
}

constexpr std::string_view kCsvHeader = "id,region,ingredients,processes,utensils";

RecipeRecord parse_csv_line(std::string_view line, const std::string& where) {
    std::vector<std::string> cells = parse_csv_row(line, where);
    if (cells.size() != 5) {
        throw InputError(where + ": expected 5 columns (" + std::string(kCsvHeader) + "), got " +
                         std::to_string(cells.size()));
    }
    RecipeRecord rec;
    rec.id = cells[0];
    rec.region = cells[1];
    rec.ingredients = normalize_items(split_multi_value(cells[2]), where, "ingredients");
    rec.processes = normalize_items(split_multi_value(cells[3]), where, "processes");
    rec.utensils = normalize_items(split_multi_value(cells[4]), where, "utensils");
    return rec;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace

std::string_view to_string(ItemClass cls) {
    switch (cls) {
        case ItemClass::ingredient: return "ingredient";
        case ItemClass::process: return "process";
        case ItemClass::utensil: return "utensil";
    }
    return "unknown";
}

std::optional<ItemClass> item_class_from_string(std::string_view name) {
    if (name == "ingredient") return ItemClass::ingredient;
    if (name == "process") return ItemClass::process;
    if (name == "utensil") return ItemClass::utensil;
    return std::nullopt;
}

ClassSelection ClassSelection::only(ItemClass cls) {
    ClassSelection s;
    s.ingredients = cls == ItemClass::ingredient;
    s.processes = cls == ItemClass::process;
    s.utensils = cls == ItemClass::utensil;
    return s;
}

ClassSelection ClassSelection::parse(std::string_view text) {
    if (text == "all") return all();
    ClassSelection s;
    for (const std::string& raw : split(text, ',')) {
        const std::string name = trim(raw);
        if (name.empty()) continue;
        const auto cls = item_class_from_string(name);
        if (!cls) throw InputError("unknown item class '" + name + "'");
        if (*cls == ItemClass::ingredient) s.ingredients = true;
        if (*cls == ItemClass::process) s.processes = true;
        if (*cls == ItemClass::utensil) s.utensils = true;
    }
    if (s.empty()) throw InputError("class selection is empty");
    return s;
}

bool ClassSelection::contains(ItemClass cls) const {
    switch (cls) {
        case ItemClass::ingredient: return ingredients;
        case ItemClass::process: return processes;
        case ItemClass::utensil: return utensils;
    }
    return false;
}

std::string ClassSelection::describe() const {
    std::vector<std::string> names;
    for (ItemClass cls : kAllItemClasses) {
        if (contains(cls)) names.emplace_back(to_string(cls));
    }
    return join(names, ",");
}

const std::set<std::string>& RecipeRecord::items(ItemClass cls) const {
    switch (cls) {
        case ItemClass::process: return processes;
        case ItemClass::utensil: return utensils;
        case ItemClass::ingredient: break;
    }
    return ingredients;
}

std::size_t RecipeRecord::item_count() const {
    return ingredients.size() + processes.size() + utensils.size();
}

std::optional<CorpusFormat> corpus_format_from_string(std::string_view name) {
    if (name == "jsonl") return CorpusFormat::jsonl;
    if (name == "csv") return CorpusFormat::csv;
    return std::nullopt;
}

std::vector<RecipeRecord> parse_corpus(std::string_view text, CorpusFormat format,
                                       std::string_view source_name) {
    std::vector<RecipeRecord> records;
    std::unordered_set<std::string> seen_ids;
    const std::vector<std::string_view> lines = split_lines(text);

    std::size_t first_data_line = 1;
    if (format == CorpusFormat::csv) {
        if (lines.empty() || trim(lines[0]) != kCsvHeader) {
            throw InputError(line_prefix(source_name, 1) + ": expected CSV header '" +
                             std::string(kCsvHeader) + "'");
        }
        first_data_line = 2;
    }

    for (std::size_t i = first_data_line - 1; i < lines.size(); ++i) {
        const std::string_view line = lines[i];
        if (trim(line).empty()) continue;
        const std::string where = line_prefix(source_name, i + 1);

        RecipeRecord rec = format == CorpusFormat::jsonl ? parse_jsonl_line(line, where)
                                                         : parse_csv_line(line, where);
        rec.id = trim(rec.id);
        rec.region = trim(rec.region);
        if (rec.id.empty()) throw InputError(where + ": field 'id' must be a nonempty string");
        if (rec.region.empty()) {
            throw InputError(where + ": field 'region' must be a nonempty string");
        }
        if (!seen_ids.insert(rec.id).second) {
            throw InputError(where + ": duplicate recipe id '" + rec.id + "'");
        }
        if (rec.item_count() == 0) {
            throw InputError(where + ": recipe '" + rec.id + "' has no items in any class");
        }
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<RecipeRecord> load_corpus(const std::filesystem::path& path, CorpusFormat format) {
    return parse_corpus(read_text_file(path), format, path.filename().string());
}

std::string qualify_item(ItemClass cls, std::string_view name) {
    std::string out(to_string(cls));
    out += ':';
    out += name;
    return out;
}

ItemId ItemDictionary::intern(ItemClass cls, std::string_view name) {
    std::string key = qualify_item(cls, name);
    const auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    const auto id = static_cast<ItemId>(entries_.size());
    entries_.push_back({cls, std::string(name)});
    index_.emplace(std::move(key), id);
    return id;
}

std::optional<ItemId> ItemDictionary::find(ItemClass cls, std::string_view name) const {
    const auto it = index_.find(qualify_item(cls, name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

const std::string& ItemDictionary::name(ItemId id) const {
    return entries_.at(static_cast<std::size_t>(id)).name;
}

ItemClass ItemDictionary::item_class(ItemId id) const {
    return entries_.at(static_cast<std::size_t>(id)).cls;
}

std::string ItemDictionary::qualified_name(ItemId id) const {
    const Entry& e = entries_.at(static_cast<std::size_t>(id));
    return qualify_item(e.cls, e.name);
}

TransactionBuild build_transactions(std::span<const RecipeRecord> records,
                                    ClassSelection classes) {
    if (records.empty()) throw InputError("no recipes to build transactions from");
    if (classes.empty()) throw InputError("class selection is empty");

    TransactionBuild build;
    for (const RecipeRecord& rec : records) {
        TransactionDB& db = build.by_cuisine[rec.region];
        if (db.cuisine.empty()) db.cuisine = rec.region;

        Transaction tx;
        for (ItemClass cls : kAllItemClasses) {
            if (!classes.contains(cls)) continue;
            for (const std::string& item : rec.items(cls)) {
                tx.push_back(build.dictionary.intern(cls, item));
            }
        }
        if (tx.empty()) {
            ++build.dropped_recipes;
            continue;
        }
        std::sort(tx.begin(), tx.end());
        tx.erase(std::unique(tx.begin(), tx.end()), tx.end());
        db.transactions.push_back(std::move(tx));
    }
    return build;
}

}  // namespace cuisines
