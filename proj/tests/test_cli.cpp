#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <sys/wait.h>
#include <unistd.h>

#include "cuisines/common.hpp"
#include "cuisines/corpus.hpp"
#include "cuisines/files.hpp"
#include "cuisines/mining.hpp"
#include "cuisines/patterns.hpp"
#include "testutil.hpp"

using namespace cuisines;
namespace fs = std::filesystem;

TEST_SUITE_BEGIN("cli");

namespace {

std::string require_env(const char* name) {
    const char* value = std::getenv(name);
    REQUIRE_MESSAGE(value != nullptr, "environment variable ", name, " must be set");
    return value;
}

int run(const std::string& command) {
    const int status = std::system(command.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

struct CliFixture {
    std::string cli = require_env("CUISINES_CLI");
    fs::path data = require_env("CUISINES_DATA");
    fs::path golden = require_env("CUISINES_GOLDEN");
    fs::path work;

    CliFixture() {
        work = fs::temp_directory_path() /
               ("cuisines_cli_test_" + std::to_string(::getpid()));
        fs::remove_all(work);
        fs::create_directories(work);
    }
    ~CliFixture() { fs::remove_all(work); }

    std::string corpus() const { return (data / "mini_corpus.jsonl").string(); }
    std::string coords() const { return (data / "regions.csv").string(); }
    fs::path out() const { return work / "out"; }

    int mine(const std::string& extra = "") const {
        return run(cli + " mine --input \"" + corpus() + "\" --out \"" + out().string() +
                   "\" " + extra + " 2>/dev/null");
    }
    int exec(const std::string& args) const { return run(cli + " " + args + " 2>/dev/null"); }
};

}  // namespace

TEST_CASE("mine produces the golden summary and per-cuisine pattern files") {
    CliFixture fx;
    REQUIRE(fx.mine() == 0);
    CHECK(read_text_file(fx.out() / "summary.tsv") ==
          read_text_file(fx.golden / "summary.tsv"));
    CHECK(fs::exists(fx.out() / "patterns_korean.tsv"));
    CHECK(fs::exists(fx.out() / "patterns_italian.tsv"));
    CHECK(fs::exists(fx.out() / "patterns_mexican.tsv"));
}

TEST_CASE("mined pattern files agree with the brute-force oracle") {
    CliFixture fx;
    REQUIRE(fx.mine() == 0);

    const auto records = load_corpus(fx.corpus(), CorpusFormat::jsonl);
    const auto build = build_transactions(records, ClassSelection::all());
    for (const auto& [cuisine, db] : build.by_cuisine) {
        const auto oracle = brute_force_frequent(db, 0.2);
        std::map<std::string, std::pair<double, std::uint64_t>> expected;
        for (const auto& p : oracle) {
            expected[canonical_pattern_text(p.items, build.dictionary)] = {p.support, p.count};
        }
        const auto rows = read_pattern_file(fx.out() / pattern_file_name(cuisine));
        REQUIRE(rows.size() == expected.size());
        for (const auto& row : rows) {
            REQUIRE(expected.count(row.text) == 1);
            CHECK(row.count == expected.at(row.text).second);
            CHECK(row.support == doctest::Approx(expected.at(row.text).first).epsilon(1e-6));
        }
    }
}

TEST_CASE("cluster, authenticity, geo and compare reproduce the golden files") {
    CliFixture fx;
    REQUIRE(fx.mine() == 0);
    REQUIRE(fx.exec("cluster --out \"" + fx.out().string() + "\"") == 0);
    REQUIRE(fx.exec("authenticity --input \"" + fx.corpus() + "\" --out \"" +
                    fx.out().string() + "\"") == 0);
    REQUIRE(fx.exec("geo --coords \"" + fx.coords() + "\" --input \"" + fx.corpus() +
                    "\" --out \"" + fx.out().string() + "\"") == 0);
    REQUIRE(fx.exec("compare --tree-a \"" + (fx.out() / "linkage_euclidean.json").string() +
                    "\" --tree-b \"" + (fx.out() / "linkage_geo.json").string() +
                    "\" --out \"" + fx.out().string() + "\"") == 0);

    for (const char* name : {"tree_euclidean.newick", "tree_cosine.newick",
                             "tree_jaccard.newick", "authenticity.csv", "comparison.json"}) {
        CAPTURE(name);
        CHECK(read_text_file(fx.out() / name) == read_text_file(fx.golden / name));
    }
}

TEST_CASE("comparing a tree with itself reports perfect agreement") {
    CliFixture fx;
    REQUIRE(fx.exec("geo --coords \"" + fx.coords() + "\" --out \"" + fx.out().string() +
                    "\"") == 0);
    REQUIRE(fx.exec("compare --tree-a \"" + (fx.out() / "linkage_geo.json").string() +
                    "\" --tree-b \"" + (fx.out() / "linkage_geo.json").string() +
                    "\" --out \"" + fx.out().string() + "\"") == 0);
    const std::string comparison = read_text_file(fx.out() / "comparison.json");
    CHECK(comparison.find("\"cophenetic_correlation\": 1.000000") != std::string::npos);
    CHECK(comparison.find("\"robinson_foulds\": 0") != std::string::npos);
}

TEST_CASE("parameter and input errors exit with code 2") {
    CliFixture fx;
    CHECK(fx.mine("--min-support 1.5") == 2);
    CHECK(fx.mine("--min-support 0") == 2);

    const fs::path empty = fx.work / "empty.jsonl";
    std::ofstream(empty).close();
    CHECK(fx.exec("mine --input \"" + empty.string() + "\" --out \"" + fx.out().string() +
                  "\"") == 2);
    CHECK(fx.exec("mine --input \"" + (fx.work / "missing.jsonl").string() + "\" --out \"" +
                  fx.out().string() + "\"") == 2);

    // cluster and elbow need mine outputs
    CHECK(fx.exec("cluster --out \"" + (fx.work / "nothing").string() + "\"") == 2);
    CHECK(fx.exec("elbow --out \"" + (fx.work / "nothing").string() + "\"") == 2);

    // unknown flags and missing subcommand are usage errors
    CHECK(fx.exec("mine --no-such-flag") == 2);
    CHECK(fx.exec("") == 2);
}

TEST_CASE("elbow rejects k above the cuisine count and writes monotone wcss") {
    CliFixture fx;
    REQUIRE(fx.mine() == 0);
    CHECK(fx.exec("elbow --out \"" + fx.out().string() + "\" --k-range 1:4 --restarts 2") == 2);
    REQUIRE(fx.exec("elbow --out \"" + fx.out().string() +
                    "\" --k-range 1:3 --restarts 4 --seed 7") == 0);

    const std::string csv = read_text_file(fx.out() / "elbow.csv");
    const auto lines = split(csv, '\n');
    REQUIRE(lines.size() >= 4);  // header + 3 rows + trailing empty
    CHECK(lines[0] == "k,wcss,best_restart_seed");
    double previous = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 3; ++k) {
        const auto cells = split(lines[static_cast<std::size_t>(k)], ',');
        REQUIRE(cells.size() == 3);
        const double wcss = std::stod(cells[1]);
        CHECK(wcss <= previous + 1e-9);
        previous = wcss;
    }
    CHECK(previous == 0.0);  // k = n
}

TEST_CASE("geo restricted to the corpus fails fast on missing coordinates") {
    CliFixture fx;
    const fs::path coords = fx.work / "partial.csv";
    write_text_file_atomic(coords, "region,lat,lon\nKorean,36.5,127.8\n");
    CHECK(fx.exec("geo --coords \"" + coords.string() + "\" --input \"" + fx.corpus() +
                  "\" --out \"" + fx.out().string() + "\"") == 2);
}

TEST_SUITE_END();
