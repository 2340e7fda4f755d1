#ifndef CUISINES_GEO_HPP
#define CUISINES_GEO_HPP

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cuisines/clustering.hpp"

// Geographic baseline: great-circle distances between region anchor points
// and the dendrogram built from them.

namespace cuisines {

inline constexpr double kEarthRadiusKm = 6371.0;

struct RegionCoordinates {
    std::string region;
    double latitude_deg = 0.0;   // [-90, 90]
    double longitude_deg = 0.0;  // (-180, 180]
};

// Great-circle distance in kilometers. Out-of-range coordinates throw
// InputError.
double haversine_km(const RegionCoordinates& a, const RegionCoordinates& b);

// CSV with header `region,lat,lon`. Region names must be unique.
std::vector<RegionCoordinates> load_region_coordinates(const std::filesystem::path& csv_path);
std::vector<RegionCoordinates> parse_region_coordinates(std::string_view text,
                                                        std::string_view source_name);

// Picks the coordinate rows for `regions`, erroring on any region without
// coordinates. Output follows the order of `regions`.
std::vector<RegionCoordinates> select_regions(std::span<const RegionCoordinates> coords,
                                              std::span<const std::string> regions);

CondensedDistanceMatrix geo_distance_matrix(std::span<const RegionCoordinates> regions);

Dendrogram geo_tree(std::span<const RegionCoordinates> regions, Linkage linkage);

}  // namespace cuisines

#endif
