#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <random>

#include "peaont/dispersal.hpp"
#include "peaont/errors.hpp"
#include "peaont/file_io.hpp"
#include "peaont/peaont.hpp"
#include "test_util.hpp"

using namespace peaont;
using peaont::test::random_bytes;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("peaont_test_" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path, ec);
    }
};

std::vector<StorageSite> make_sites(const fs::path& root, int n) {
    std::vector<StorageSite> sites;
    for (int i = 0; i < n; ++i) {
        sites.push_back({"site" + std::to_string(i), root / ("site" + std::to_string(i)), {}});
    }
    return sites;
}

} // namespace

TEST_CASE("pack_max fills each site to the k-2 cap") {
    TempDir tmp;
    const Params params = validate_params(4, 3, 16, CipherId::Aes128);
    const auto sites = make_sites(tmp.path, 2);

    const auto plan = plan_placement(params, sites, PlacementStrategy::PackMax);
    CHECK(plan.site_by_fragment ==
          std::vector<std::string>{"site0", "site0", "site1", "site1"});
}

TEST_CASE("e < k-1 needs one site per fragment") {
    TempDir tmp;
    const Params params = validate_params(4, 2, 16, CipherId::Aes128);

    try {
        plan_placement(params, make_sites(tmp.path, 3), PlacementStrategy::RoundRobin);
        FAIL("expected PlacementError");
    } catch (const PlacementError& ex) {
        CHECK(ex.min_sites_required == 4);
    }

    const auto plan = plan_placement(params, make_sites(tmp.path, 4), PlacementStrategy::RoundRobin);
    std::map<std::string, int> load;
    for (const auto& s : plan.site_by_fragment) ++load[s];
    for (const auto& [_, n] : load) CHECK(n == 1);
}

TEST_CASE("e = k-1 minimum site count is ceil(k/(k-2))") {
    TempDir tmp;
    const Params params = validate_params(4, 3, 16, CipherId::Aes128);
    try {
        plan_placement(params, make_sites(tmp.path, 1), PlacementStrategy::PackMax);
        FAIL("expected PlacementError");
    } catch (const PlacementError& ex) {
        CHECK(ex.min_sites_required == 2);
    }
}

TEST_CASE("plans satisfy the dispersal rule over random parameters") {
    TempDir tmp;
    std::mt19937_64 rng(0x11);
    int planned = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const int k = 2 + static_cast<int>(rng() % 15);
        const int e = 1 + static_cast<int>(rng() % (k - 1));
        const Params params = validate_params(k, e, 16, CipherId::Aes128);
        const int nsites = 1 + static_cast<int>(rng() % (2 * k));
        const auto sites = make_sites(tmp.path, nsites);
        const auto strategy =
            rng() % 2 ? PlacementStrategy::RoundRobin : PlacementStrategy::PackMax;

        const std::size_t min_needed = min_sites_required(params);
        try {
            const auto plan = plan_placement(params, sites, strategy);
            ++planned;
            REQUIRE(plan.site_by_fragment.size() == static_cast<std::size_t>(k));
            std::map<std::string, int> load;
            for (const auto& s : plan.site_by_fragment) ++load[s];
            for (const auto& [_, n] : load) {
                if (e == k - 1) {
                    CHECK(n <= std::max(k - 2, 1));
                } else {
                    CHECK(n == 1);
                }
            }
            // Determinism.
            const auto again = plan_placement(params, sites, strategy);
            CHECK(again.site_by_fragment == plan.site_by_fragment);
        } catch (const PlacementError& ex) {
            CHECK(static_cast<std::size_t>(nsites) < min_needed);
            CHECK(ex.min_sites_required == min_needed);
        }
    }
    CHECK(planned > 0);
}

TEST_CASE("per-site capacity limits are honored by pack_max") {
    TempDir tmp;
    const Params params = validate_params(6, 5, 16, CipherId::Aes128);
    std::vector<StorageSite> sites = make_sites(tmp.path, 3);
    sites[0].capacity_fragments = 1;

    const auto plan = plan_placement(params, sites, PlacementStrategy::PackMax);
    std::map<std::string, int> load;
    for (const auto& s : plan.site_by_fragment) ++load[s];
    CHECK(load["site0"] == 1);
    CHECK(load["site1"] == 4); // k-2 cap
    CHECK(load["site2"] == 1);
}

TEST_CASE("store writes fragments and replicates the manifest; fetch round-trips") {
    TempDir tmp;
    std::mt19937_64 rng(0x12);
    SystemEntropySource entropy;
    const PeAontScheme scheme;
    const Params params = validate_params(4, 3, 16, CipherId::Aes128);
    const auto key = random_bytes(rng, 16);
    const auto data = random_bytes(rng, 50000);

    OpCounters c;
    auto result = scheme.protect(data, params, key, entropy, c);
    const auto sites = make_sites(tmp.path, 3);
    auto plan = plan_placement(params, sites, PlacementStrategy::RoundRobin);
    result.manifest.placement = plan.site_by_fragment;

    const auto receipt = store(result.fragments, result.manifest, plan, sites);
    CHECK(receipt.fragment_paths.size() == 4);
    CHECK(receipt.manifest_paths.size() == 3);

    // Manifest at every site.
    const auto mname = manifest_filename(result.manifest.digest());
    for (const auto& site : sites) {
        CHECK(fs::exists(site.root / mname));
    }

    auto fetched = fetch(result.manifest, sites);
    CHECK(std::equal(fetched.bytes().begin(), fetched.bytes().end(),
                     result.fragments.bytes().begin()));
    CHECK(fetched.state() == FragmentState::Transformed);

    OpCounters c2;
    CHECK(scheme.recover(fetched, result.manifest, key, c2) == data);
}

TEST_CASE("store reports the unwritable site and the fragments already written") {
    TempDir tmp;
    std::mt19937_64 rng(0x13);
    SystemEntropySource entropy;
    const PeAontScheme scheme;
    const Params params = validate_params(4, 3, 16, CipherId::Aes128);
    const auto key = random_bytes(rng, 16);
    const auto data = random_bytes(rng, 1000);

    OpCounters c;
    auto result = scheme.protect(data, params, key, entropy, c);

    auto sites = make_sites(tmp.path, 2);
    // A regular file where a directory is needed makes the site unwritable
    // even for root.
    write_file(tmp.path / "blocker", std::vector<std::uint8_t>{1});
    sites[1].root = tmp.path / "blocker" / "nested";

    auto plan = plan_placement(params, sites, PlacementStrategy::PackMax);
    result.manifest.placement = plan.site_by_fragment;

    CHECK_THROWS_WITH_AS(store(result.fragments, result.manifest, plan, sites),
                         doctest::Contains("site1"), IoError);
    try {
        store(result.fragments, result.manifest, plan, sites);
    } catch (const IoError& ex) {
        CHECK(std::string(ex.what()).find("fragments written: 0, 1") != std::string::npos);
    }
}

TEST_CASE("fetch names missing fragments and their last known site") {
    TempDir tmp;
    std::mt19937_64 rng(0x14);
    SystemEntropySource entropy;
    const PeAontScheme scheme;
    const Params params = validate_params(4, 3, 16, CipherId::Aes128);
    const auto key = random_bytes(rng, 16);
    const auto data = random_bytes(rng, 1000);

    OpCounters c;
    auto result = scheme.protect(data, params, key, entropy, c);
    const auto sites = make_sites(tmp.path, 2);
    auto plan = plan_placement(params, sites, PlacementStrategy::PackMax);
    result.manifest.placement = plan.site_by_fragment;
    store(result.fragments, result.manifest, plan, sites);

    // Take site1 offline: exactly fragments 2 and 3 disappear.
    fs::remove_all(sites[1].root);
    try {
        fetch(result.manifest, sites);
        FAIL("expected IoError");
    } catch (const IoError& ex) {
        const std::string what = ex.what();
        CHECK(what.find("2") != std::string::npos);
        CHECK(what.find("3") != std::string::npos);
        CHECK(what.find("site1") != std::string::npos);
        CHECK(what.find(" 0") == std::string::npos);
    }
}

TEST_CASE("fetch finds fragments that moved to an unplanned site") {
    TempDir tmp;
    std::mt19937_64 rng(0x15);
    SystemEntropySource entropy;
    const PeAontScheme scheme;
    const Params params = validate_params(4, 3, 16, CipherId::Aes128);
    const auto key = random_bytes(rng, 16);
    const auto data = random_bytes(rng, 1000);

    OpCounters c;
    auto result = scheme.protect(data, params, key, entropy, c);
    const auto sites = make_sites(tmp.path, 2);
    auto plan = plan_placement(params, sites, PlacementStrategy::PackMax);
    result.manifest.placement = plan.site_by_fragment;
    store(result.fragments, result.manifest, plan, sites);

    // Relocate fragment 3's file from site1 to site0.
    const auto name = fragment_filename(result.manifest.digest(), 3);
    fs::rename(sites[1].root / name, sites[0].root / name);

    auto fetched = fetch(result.manifest, sites);
    OpCounters c2;
    CHECK(scheme.recover(fetched, result.manifest, key, c2) == data);
}

TEST_CASE("sites file parses and rejects garbage") {
    TempDir tmp;
    const std::string good = R"([
      {"site_id": "a", "root": ")" + (tmp.path / "a").string() + R"("},
      {"site_id": "b", "root": ")" + (tmp.path / "b").string() + R"(", "capacity_fragments": 2}
    ])";
    const auto path = tmp.path / "sites.json";
    write_file(path, std::span<const std::uint8_t>(
                         reinterpret_cast<const std::uint8_t*>(good.data()), good.size()));

    const auto sites = load_sites_file(path);
    REQUIRE(sites.size() == 2);
    CHECK(sites[0].site_id == "a");
    CHECK(!sites[0].capacity_fragments.has_value());
    CHECK(sites[1].capacity_fragments == 2);

    const std::string bad = "{\"not\": \"an array\"}";
    write_file(path, std::span<const std::uint8_t>(
                         reinterpret_cast<const std::uint8_t*>(bad.data()), bad.size()));
    CHECK_THROWS_AS(load_sites_file(path), IoError);

    CHECK_THROWS_AS(load_sites_file(tmp.path / "absent.json"), IoError);
}

TEST_CASE("duplicate site ids are rejected") {
    TempDir tmp;
    const Params params = validate_params(4, 3, 16, CipherId::Aes128);
    std::vector<StorageSite> sites = {{"dup", tmp.path / "x", {}}, {"dup", tmp.path / "y", {}}};
    CHECK_THROWS_AS(plan_placement(params, sites, PlacementStrategy::RoundRobin), ParamsError);
}
