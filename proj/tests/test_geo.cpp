#include <doctest.h>

#include <cmath>
#include <random>

#include "cuisines/geo.hpp"

using namespace cuisines;

TEST_SUITE_BEGIN("geo");

namespace {

RegionCoordinates at(std::string name, double lat, double lon) {
    return RegionCoordinates{std::move(name), lat, lon};
}

}  // namespace

TEST_CASE("haversine hits the textbook great-circle values") {
    CHECK(haversine_km(at("o", 0, 0), at("o2", 0, 0)) == 0.0);
    CHECK(haversine_km(at("a", 0, 0), at("b", 0, 90)) == doctest::Approx(10007.543).epsilon(1e-6));
    CHECK(haversine_km(at("a", 0, 0), at("b", 0, 180)) ==
          doctest::Approx(20015.087).epsilon(1e-6));
    CHECK(haversine_km(at("a", 90, 0), at("b", -90, 0)) ==
          doctest::Approx(20015.087).epsilon(1e-6));
}

TEST_CASE("haversine is symmetric, bounded and triangular") {
    std::mt19937_64 rng(3141);
    auto random_point = [&](int i) {
        const double lat = static_cast<double>(rng() % 18001) / 100.0 - 90.0;
        const double lon = static_cast<double>(rng() % 35999) / 100.0 - 179.99;
        return at("p" + std::to_string(i), lat, lon);
    };
    const double half_circumference = kEarthRadiusKm * 3.14159265358979323846;
    for (int round = 0; round < 200; ++round) {
        const auto a = random_point(0), b = random_point(1), c = random_point(2);
        const double ab = haversine_km(a, b);
        CHECK(ab == haversine_km(b, a));
        CHECK(ab >= 0.0);
        CHECK(ab <= half_circumference + 1e-9);
        CHECK(ab <= haversine_km(a, c) + haversine_km(c, b) + 1e-6);
    }
}

TEST_CASE("coordinates out of range are rejected") {
    CHECK_THROWS_AS(haversine_km(at("bad", 91, 0), at("ok", 0, 0)), InputError);
    CHECK_THROWS_AS(haversine_km(at("ok", 0, 0), at("bad", 0, -180.0)), InputError);
    CHECK_THROWS_AS(haversine_km(at("bad", 0, 181), at("ok", 0, 0)), InputError);
    CHECK_NOTHROW(haversine_km(at("edge", 90, 180), at("edge2", -90, -179.99)));
}

TEST_CASE("region csv parses and validates") {
    const auto regions = parse_region_coordinates(
        "region,lat,lon\nKorean,36.5,127.8\nItalian,42.8,12.8\n", "test");
    REQUIRE(regions.size() == 2);
    CHECK(regions[0].region == "Korean");
    CHECK(regions[0].latitude_deg == 36.5);

    CHECK_THROWS_AS(parse_region_coordinates("name,lat,lon\nA,0,0\n", "test"), InputError);
    CHECK_THROWS_WITH_AS(parse_region_coordinates("region,lat,lon\nA,zero,0\n", "test"),
                         doctest::Contains("test:2"), InputError);
    CHECK_THROWS_AS(parse_region_coordinates("region,lat,lon\nA,0,0\nA,1,1\n", "test"),
                    InputError);
    CHECK_THROWS_AS(parse_region_coordinates("region,lat,lon\nA,95,0\n", "test"), InputError);
}

TEST_CASE("select_regions names the cuisine missing coordinates") {
    const std::vector<RegionCoordinates> coords{at("Korean", 36.5, 127.8)};
    const std::vector<std::string> wanted{"Korean", "Atlantis"};
    CHECK_THROWS_WITH_AS(select_regions(coords, wanted), doctest::Contains("Atlantis"),
                         InputError);
    const std::vector<std::string> fine{"Korean"};
    CHECK(select_regions(coords, fine).size() == 1);
}

TEST_CASE("two regions merge once at their haversine distance") {
    const std::vector<RegionCoordinates> regions{at("A", 0, 0), at("B", 0, 90)};
    const Dendrogram tree = geo_tree(regions, Linkage::average);
    REQUIRE(tree.merges.size() == 1);
    CHECK(tree.merges[0].height == doctest::Approx(10007.543).epsilon(1e-6));
}

TEST_CASE("collinear equatorial points merge nearest pair first") {
    const std::vector<RegionCoordinates> regions{at("lon0", 0, 0), at("lon10", 0, 10),
                                                 at("lon50", 0, 50)};
    const Dendrogram tree = geo_tree(regions, Linkage::average);
    REQUIRE(tree.merges.size() == 2);
    // first merge is the (0, 10) pair: node ids 0 and 1
    CHECK(tree.merges[0].left == 0);
    CHECK(tree.merges[0].right == 1);
}

TEST_CASE("duplicate coordinates merge at height zero") {
    const std::vector<RegionCoordinates> regions{at("A", 10, 10), at("B", 10, 10),
                                                 at("C", -30, 60)};
    const Dendrogram tree = geo_tree(regions, Linkage::average);
    CHECK(tree.merges[0].height == 0.0);
}

TEST_CASE("geo tree needs at least two distinct regions") {
    const std::vector<RegionCoordinates> one{at("A", 0, 0)};
    CHECK_THROWS_AS(geo_tree(one, Linkage::average), InputError);
    const std::vector<RegionCoordinates> dup{at("A", 0, 0), at("A", 1, 1)};
    CHECK_THROWS_AS(geo_tree(dup, Linkage::average), InputError);
}

TEST_SUITE_END();
