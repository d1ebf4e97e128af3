#include "peaont/dispersal.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <set>
#include <unordered_map>

#include "peaont/errors.hpp"
#include "peaont/file_io.hpp"
#include "peaont/fragment_io.hpp"

namespace peaont {

std::vector<StorageSite> load_sites_file(const std::filesystem::path& path) {
    const auto raw = read_file(path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(raw.begin(), raw.end());
    } catch (const nlohmann::json::exception& ex) {
        throw IoError("site list " + path.string() + " is not valid JSON: " + ex.what());
    }
    if (!j.is_array()) {
        throw IoError("site list must be a JSON array of {site_id, root} entries");
    }

    std::vector<StorageSite> sites;
    for (const auto& entry : j) {
        StorageSite s;
        try {
            s.site_id = entry.at("site_id").get<std::string>();
            s.root = entry.at("root").get<std::string>();
            if (entry.contains("capacity_fragments")) {
                s.capacity_fragments = entry.at("capacity_fragments").get<std::size_t>();
            }
        } catch (const nlohmann::json::exception& ex) {
            throw IoError(std::string("site entry error: ") + ex.what());
        }
        if (s.site_id.empty()) {
            throw IoError("site_id must be non-empty");
        }
        sites.push_back(std::move(s));
    }
    return sites;
}

PlacementStrategy placement_strategy_from_string(std::string_view name) {
    if (name == "round_robin" || name == "ROUND_ROBIN" || name == "round-robin") {
        return PlacementStrategy::RoundRobin;
    }
    if (name == "pack_max" || name == "PACK_MAX" || name == "pack-max") {
        return PlacementStrategy::PackMax;
    }
    throw ParamsError("unknown placement strategy '" + std::string(name) + "'");
}

namespace {

// e = k-1: a site may hold at most k-2 fragments. e < k-1: one per site.
std::size_t rule_cap(const Params& params) {
    if (params.e == params.k - 1) {
        return static_cast<std::size_t>(std::max(params.k - 2, 1));
    }
    return 1;
}

} // namespace

std::size_t min_sites_required(const Params& params) {
    const std::size_t k = static_cast<std::size_t>(params.k);
    const std::size_t cap = rule_cap(params);
    return (k + cap - 1) / cap;
}

PlacementPlan plan_placement(const Params& params, std::span<const StorageSite> sites,
                             PlacementStrategy strategy) {
    const std::size_t k = static_cast<std::size_t>(params.k);
    const std::size_t cap = rule_cap(params);
    const std::size_t min_sites = min_sites_required(params);

    std::set<std::string> ids;
    for (const auto& s : sites) {
        if (!ids.insert(s.site_id).second) {
            throw ParamsError("duplicate site_id '" + s.site_id + "'");
        }
    }
    if (sites.size() < min_sites) {
        throw PlacementError("insufficient sites: these parameters need at least " +
                                 std::to_string(min_sites) + " sites (" +
                                 (params.e == params.k - 1
                                      ? "at most " + std::to_string(cap) + " fragments per site"
                                      : "one fragment per site") +
                                 "), got " + std::to_string(sites.size()),
                             min_sites);
    }

    auto site_cap = [&](const StorageSite& s) {
        return std::min(cap, s.capacity_fragments.value_or(cap));
    };

    PlacementPlan plan;
    plan.params = params;
    plan.site_by_fragment.assign(k, "");

    if (strategy == PlacementStrategy::RoundRobin) {
        std::vector<std::size_t> load(sites.size(), 0);
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t s = i % sites.size();
            if (load[s] + 1 > site_cap(sites[s])) {
                throw PlacementError("site '" + sites[s].site_id +
                                         "' cannot take fragment " + std::to_string(i) +
                                         " without breaking the dispersal rule; need at least " +
                                         std::to_string(min_sites) + " unconstrained sites",
                                     min_sites);
            }
            ++load[s];
            plan.site_by_fragment[i] = sites[s].site_id;
        }
    } else {
        std::size_t i = 0;
        for (const auto& site : sites) {
            for (std::size_t n = site_cap(site); n > 0 && i < k; --n, ++i) {
                plan.site_by_fragment[i] = site.site_id;
            }
        }
        if (i < k) {
            throw PlacementError("site capacities leave " + std::to_string(k - i) +
                                     " fragment(s) unplaced; need at least " +
                                     std::to_string(min_sites) + " unconstrained sites",
                                 min_sites);
        }
    }
    return plan;
}

std::string fragment_filename(const Digest& manifest_digest, std::size_t fragment_index) {
    return digest_hex(manifest_digest) + "." + std::to_string(fragment_index) + ".pea";
}

std::string manifest_filename(const Digest& manifest_digest) {
    return digest_hex(manifest_digest) + ".manifest";
}

StoreReceipt store(const FragmentSet& fs, const Manifest& manifest, const PlacementPlan& plan,
                   std::span<const StorageSite> sites) {
    const Params& p = fs.params();
    if (plan.site_by_fragment.size() != static_cast<std::size_t>(p.k)) {
        throw ParamsError("placement plan does not cover all fragments");
    }
    if (!fs.complete()) {
        throw IntegrityError("cannot store an incomplete fragment set");
    }

    std::unordered_map<std::string, const StorageSite*> by_id;
    for (const auto& s : sites) {
        by_id.emplace(s.site_id, &s);
    }
    for (const auto& id : plan.site_by_fragment) {
        if (!by_id.count(id)) {
            throw ParamsError("plan references unknown site '" + id + "'");
        }
    }

    const Digest mdigest = manifest.digest();
    const std::string mjson = manifest.to_json();
    StoreReceipt receipt;
    receipt.fragment_paths.resize(static_cast<std::size_t>(p.k));

    std::vector<std::size_t> written;
    auto fail = [&](const std::string& site_id, const std::string& why) {
        std::string done;
        for (std::size_t idx : written) {
            done += done.empty() ? "" : ", ";
            done += std::to_string(idx);
        }
        throw IoError("site '" + site_id + "' is not writable (" + why + "); fragments written: " +
                      (done.empty() ? "none" : done));
    };

    for (std::size_t i = 0; i < static_cast<std::size_t>(p.k); ++i) {
        const StorageSite& site = *by_id.at(plan.site_by_fragment[i]);
        const auto bytes = serialize_fragment(fs, i, manifest.scheme, mdigest);
        const auto path = site.root / fragment_filename(mdigest, i);
        try {
            std::filesystem::create_directories(site.root);
            write_file_atomic(path, bytes);
        } catch (const std::exception& ex) {
            fail(site.site_id, ex.what());
        }
        receipt.fragment_paths[i] = path;
        written.push_back(i);
    }

    for (const auto& site : sites) {
        const auto path = site.root / manifest_filename(mdigest);
        try {
            std::filesystem::create_directories(site.root);
            write_file_atomic(path, std::span<const std::uint8_t>(
                                        reinterpret_cast<const std::uint8_t*>(mjson.data()),
                                        mjson.size()));
        } catch (const std::exception& ex) {
            fail(site.site_id, ex.what());
        }
        receipt.manifest_paths.push_back(path);
    }
    return receipt;
}

FragmentSet fetch(const Manifest& manifest, std::span<const StorageSite> sites) {
    if (sites.empty()) {
        throw ParamsError("no sites to fetch from");
    }
    const Digest mdigest = manifest.digest();
    const std::size_t k = static_cast<std::size_t>(manifest.params.k);

    std::unordered_map<std::string, const StorageSite*> by_id;
    for (const auto& s : sites) {
        by_id.emplace(s.site_id, &s);
    }

    std::vector<std::vector<std::uint8_t>> blobs;
    std::string missing;
    for (std::size_t i = 0; i < k; ++i) {
        const std::string filename = fragment_filename(mdigest, i);

        // Planned site first, then every other site.
        std::vector<const StorageSite*> order;
        if (manifest.placement.size() == k) {
            auto it = by_id.find(manifest.placement[i]);
            if (it != by_id.end()) order.push_back(it->second);
        }
        for (const auto& s : sites) {
            if (order.empty() || &s != order.front()) order.push_back(&s);
        }

        bool found = false;
        for (const StorageSite* site : order) {
            const auto path = site->root / filename;
            std::error_code ec;
            if (!std::filesystem::exists(path, ec) || ec) continue;
            blobs.push_back(read_file(path));
            found = true;
            break;
        }
        if (!found) {
            missing += missing.empty() ? "" : ", ";
            missing += std::to_string(i);
            if (manifest.placement.size() == k) {
                missing += " (last known site '" + manifest.placement[i] + "')";
            }
        }
    }
    if (!missing.empty()) {
        throw IoError("missing fragment(s): " + missing);
    }
    return assemble_fragments(manifest, blobs);
}

} // namespace peaont
