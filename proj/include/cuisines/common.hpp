#ifndef CUISINES_COMMON_HPP
#define CUISINES_COMMON_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cuisines {

// Anything caused by bad user input: malformed files, out-of-range parameters,
// missing data. The CLI maps this to exit code 2; everything else exits 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Canonical item form: trimmed, ASCII-lowercased, internal whitespace runs
// collapsed to a single space. Idempotent.
std::string normalize_item(std::string_view raw);

std::string to_lower_ascii(std::string_view s);

// Splits on every separator, keeping empty tokens.
std::vector<std::string> split(std::string_view s, char sep);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Fixed-decimal rendering used for all numeric file output. -0 prints as 0.
std::string format_fixed(double value, int decimals = 6);

// Filesystem-safe name: lowercased, every non-alphanumeric run becomes '_'.
std::string slugify(std::string_view name);

std::string read_text_file(const std::filesystem::path& path);

// Writes to a temp file in the target directory, then renames into place.
void write_text_file_atomic(const std::filesystem::path& path, std::string_view content);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace cuisines

#endif
