#include "cuisines/geo.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cuisines {

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

void require_valid(const RegionCoordinates& r) {
    if (!(r.latitude_deg >= -90.0 && r.latitude_deg <= 90.0)) {
        throw InputError("latitude out of range for region '" + r.region + "': " +
                         std::to_string(r.latitude_deg));
    }
    if (!(r.longitude_deg > -180.0 && r.longitude_deg <= 180.0)) {
        throw InputError("longitude out of range for region '" + r.region + "': " +
                         std::to_string(r.longitude_deg));
    }
}

double parse_degrees(const std::string& text, const std::string& where, const char* field) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw InputError(where + ": field '" + field + "' is not a number: '" + text + "'");
    }
}

}  // namespace

double haversine_km(const RegionCoordinates& a, const RegionCoordinates& b) {
    require_valid(a);
    require_valid(b);
    const double lat_a = a.latitude_deg * kDegToRad;
    const double lat_b = b.latitude_deg * kDegToRad;
    const double d_lat = (b.latitude_deg - a.latitude_deg) * kDegToRad;
    const double d_lon = (b.longitude_deg - a.longitude_deg) * kDegToRad;

    const double s_lat = std::sin(d_lat / 2.0);
    const double s_lon = std::sin(d_lon / 2.0);
    const double h = s_lat * s_lat + std::cos(lat_a) * std::cos(lat_b) * s_lon * s_lon;
    const double c = 2.0 * std::asin(std::min(1.0, std::sqrt(h)));
    return kEarthRadiusKm * c;
}

std::vector<RegionCoordinates> parse_region_coordinates(std::string_view text,
                                                        std::string_view source_name) {
    std::vector<RegionCoordinates> out;
    std::set<std::string> seen;
    std::size_t line_no = 0;
    std::size_t start = 0;
    bool header_checked = false;

    while (start <= text.size()) {
        std::size_t pos = text.find('\n', start);
        std::string_view line = pos == std::string_view::npos
                                    ? text.substr(start)
                                    : text.substr(start, pos - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        ++line_no;
        const std::string where = std::string(source_name) + ":" + std::to_string(line_no);

        if (!line.empty()) {
            if (!header_checked) {
                if (line != "region,lat,lon") {
                    throw InputError(where + ": expected header 'region,lat,lon'");
                }
                header_checked = true;
            } else {
                const std::vector<std::string> cells = split(line, ',');
                if (cells.size() != 3) {
                    throw InputError(where + ": expected 3 columns, got " +
                                     std::to_string(cells.size()));
                }
                RegionCoordinates r;
                r.region = cells[0];
                if (r.region.empty()) throw InputError(where + ": empty region name");
                r.latitude_deg = parse_degrees(cells[1], where, "lat");
                r.longitude_deg = parse_degrees(cells[2], where, "lon");
                require_valid(r);
                if (!seen.insert(r.region).second) {
                    throw InputError(where + ": duplicate region '" + r.region + "'");
                }
                out.push_back(std::move(r));
            }
        }
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    if (!header_checked) {
        throw InputError(std::string(source_name) + ": empty coordinates file");
    }
    return out;
}

std::vector<RegionCoordinates> load_region_coordinates(const std::filesystem::path& csv_path) {
    return parse_region_coordinates(read_text_file(csv_path), csv_path.filename().string());
}

std::vector<RegionCoordinates> select_regions(std::span<const RegionCoordinates> coords,
                                              std::span<const std::string> regions) {
    std::vector<RegionCoordinates> out;
    out.reserve(regions.size());
    for (const std::string& name : regions) {
        const auto it = std::find_if(coords.begin(), coords.end(),
                                     [&](const RegionCoordinates& r) { return r.region == name; });
        if (it == coords.end()) {
            throw InputError("no coordinates for cuisine '" + name + "'");
        }
        out.push_back(*it);
    }
    return out;
}

CondensedDistanceMatrix geo_distance_matrix(std::span<const RegionCoordinates> regions) {
    const std::size_t n = regions.size();
    if (n < 2) throw InputError("geographic clustering needs at least 2 regions");
    std::set<std::string> seen;
    for (const RegionCoordinates& r : regions) {
        require_valid(r);
        if (!seen.insert(r.region).second) {
            throw InputError("duplicate region '" + r.region + "'");
        }
    }

    std::vector<std::string> labels;
    labels.reserve(n);
    for (const RegionCoordinates& r : regions) labels.push_back(r.region);

    std::vector<double> values;
    values.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            values.push_back(haversine_km(regions[i], regions[j]));
        }
    }
    return CondensedDistanceMatrix(std::move(labels), std::move(values), "haversine_km");
}

Dendrogram geo_tree(std::span<const RegionCoordinates> regions, Linkage linkage) {
    return hac(geo_distance_matrix(regions), linkage);
}

}  // namespace cuisines
