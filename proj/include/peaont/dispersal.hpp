#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "peaont/fragment_set.hpp"
#include "peaont/manifest.hpp"

namespace peaont {

struct StorageSite {
    std::string site_id;
    std::filesystem::path root;
    std::optional<std::size_t> capacity_fragments;
};

/// JSON array of {"site_id": ..., "root": ..., "capacity_fragments"?: ...}.
std::vector<StorageSite> load_sites_file(const std::filesystem::path& path);

enum class PlacementStrategy {
    RoundRobin,
    PackMax,
};

PlacementStrategy placement_strategy_from_string(std::string_view name);

struct PlacementPlan {
    Params params;
    std::vector<std::string> site_by_fragment; // k entries
};

/// Assigns fragments to sites under the dispersal rules:
///   e = k-1: no site may hold more than k-2 fragments,
///   e < k-1: every fragment on its own site.
/// RoundRobin spreads evenly; PackMax fills each site to its permitted
/// maximum before moving on. Deterministic. Throws PlacementError naming the
/// minimum site count when the list cannot satisfy the rule.
PlacementPlan plan_placement(const Params& params, std::span<const StorageSite> sites,
                             PlacementStrategy strategy);

/// Minimum number of sites the rule requires for these parameters.
std::size_t min_sites_required(const Params& params);

struct StoreReceipt {
    std::vector<std::filesystem::path> fragment_paths; // index order
    std::vector<std::filesystem::path> manifest_paths; // one per site
};

/// Writes every fragment to its planned site and the manifest to every site.
/// Each file is written to a temp name and renamed into place. On failure the
/// error lists the fragments already written.
StoreReceipt store(const FragmentSet& fs, const Manifest& manifest, const PlacementPlan& plan,
                   std::span<const StorageSite> sites);

/// Gathers all k fragments named by the manifest from the sites, verifying
/// headers and digests. Throws with the precise missing list when any
/// fragment cannot be found.
FragmentSet fetch(const Manifest& manifest, std::span<const StorageSite> sites);

std::string fragment_filename(const Digest& manifest_digest, std::size_t fragment_index);
std::string manifest_filename(const Digest& manifest_digest);

} // namespace peaont
