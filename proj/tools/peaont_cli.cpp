#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "peaont/bench.hpp"
#include "peaont/bytes.hpp"
#include "peaont/dispersal.hpp"
#include "peaont/errors.hpp"
#include "peaont/file_io.hpp"
#include "peaont/fragment_io.hpp"
#include "peaont/peaont.hpp"

using namespace peaont;

namespace {

// Exit codes: 2 bad parameters, 3 key problems, 4 I/O and integrity,
// 5 insufficient sites, 1 anything else.
template <typename F>
int run_guarded(F&& f) {
    try {
        return f();
    } catch (const KeyError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 3;
    } catch (const ParamsError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    } catch (const PlacementError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 5;
    } catch (const IntegrityError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 4;
    } catch (const IoError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 4;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}

std::vector<std::uint8_t> load_key(std::string path, CipherId cipher) {
    if (path.empty()) {
        const char* env = std::getenv("PEAONT_KEY_FILE");
        if (env == nullptr || *env == '\0') {
            throw KeyError("no key given: pass --key FILE or set PEAONT_KEY_FILE");
        }
        path = env;
    }
    std::vector<std::uint8_t> key;
    try {
        key = read_file(path);
    } catch (const IoError& ex) {
        throw KeyError(std::string("cannot read key file: ") + ex.what());
    }
    const std::size_t want = cipher_key_length(cipher);
    if (key.size() != want) {
        throw KeyError("key file must hold exactly " + std::to_string(want) + " bytes for " +
                       to_string(cipher) + ", got " + std::to_string(key.size()));
    }
    return key;
}

std::size_t parse_size(const std::string& text) {
    std::size_t pos = 0;
    unsigned long long value = 0;
    try {
        value = std::stoull(text, &pos);
    } catch (const std::exception&) {
        throw ParamsError("cannot parse size '" + text + "'");
    }
    std::string suffix = text.substr(pos);
    for (auto& c : suffix) c = static_cast<char>(tolower(static_cast<unsigned char>(c)));
    std::size_t mul = 1;
    if (suffix.empty() || suffix == "b") mul = 1;
    else if (suffix == "k" || suffix == "kb") mul = 1000;
    else if (suffix == "kib") mul = 1024;
    else if (suffix == "m" || suffix == "mb") mul = 1000 * 1000;
    else if (suffix == "mib") mul = 1024 * 1024;
    else if (suffix == "g" || suffix == "gb") mul = 1000 * 1000 * 1000;
    else if (suffix == "gib") mul = 1024ull * 1024 * 1024;
    else throw ParamsError("unknown size suffix '" + suffix + "' in '" + text + "'");
    return static_cast<std::size_t>(value) * mul;
}

void enforce_cipher_gate(CipherId cipher, bool allow_insecure) {
    if (cipher == CipherId::NullTest && !allow_insecure) {
        throw ParamsError("the NULL-TEST cipher provides no secrecy and is meant for tests and "
                          "benchmarks; pass --allow-insecure to use it anyway");
    }
}

struct SplitArgs {
    std::string in_path, sites_path, key_path, manifest_out;
    int k = 0, e = 0;
    std::size_t block_size = 16;
    std::string cipher = "AES-128";
    std::string scheme = "PE-AONT";
    std::string strategy = "round_robin";
    bool allow_weak = false;
    bool allow_insecure = false;
};

int run_split(const SplitArgs& args) {
    const CipherId cipher = cipher_from_string(args.cipher);
    enforce_cipher_gate(cipher, args.allow_insecure);
    const SchemeId scheme_id = scheme_from_string(args.scheme);
    const Params params = validate_params(args.k, args.e, args.block_size, cipher);

    if (scheme_id == SchemeId::PeAont) {
        if (params.k % 2 != 0) {
            throw ParamsError("k must be even for the all-or-nothing transform to be its own "
                              "inverse; got k=" + std::to_string(params.k));
        }
        if (params.security_level == SecurityLevel::PerformanceOnly && !args.allow_weak) {
            throw ParamsError("(k=" + std::to_string(params.k) + ", e=" + std::to_string(params.e) +
                              ") classifies as PERFORMANCE_ONLY: no key-exposure protection "
                              "(needs k even, k >= 4, e >= 3); pass --allow-weak to proceed");
        }
    }

    const auto key = load_key(args.key_path, cipher);
    const auto data = read_file(args.in_path);
    if (data.empty()) {
        throw ParamsError("input file " + args.in_path + " is empty");
    }
    const auto sites = load_sites_file(args.sites_path);
    const auto plan =
        plan_placement(params, sites, placement_strategy_from_string(args.strategy));

    SystemEntropySource entropy;
    OpCounters counters;
    const auto scheme = make_scheme(scheme_id);
    auto result = scheme->protect(data, params, key, entropy, counters);
    result.manifest.placement = plan.site_by_fragment;

    const auto receipt = store(result.fragments, result.manifest, plan, sites);
    if (!args.manifest_out.empty()) {
        const std::string text = result.manifest.to_json();
        write_file(args.manifest_out,
                   std::span<const std::uint8_t>(
                       reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
    }

    std::cout << digest_hex(result.manifest.digest()) << "\n";
    std::cerr << "stored " << receipt.fragment_paths.size() << " fragments across "
              << sites.size() << " sites (" << to_string(params.security_level) << ")\n";
    return 0;
}

struct MergeArgs {
    std::string manifest_path, digest_hex_arg, sites_path, key_path, out_path;
    bool allow_insecure = false;
};

Manifest locate_manifest(const MergeArgs& args, const std::vector<StorageSite>& sites) {
    if (!args.manifest_path.empty()) {
        const auto raw = read_file(args.manifest_path);
        return Manifest::from_json(std::string_view(
            reinterpret_cast<const char*>(raw.data()), raw.size()));
    }
    if (args.digest_hex_arg.empty()) {
        throw ParamsError("pass --manifest FILE or --digest HEX");
    }
    const Digest digest = digest_from_hex(args.digest_hex_arg);
    for (const auto& site : sites) {
        const auto path = site.root / manifest_filename(digest);
        std::error_code ec;
        if (!std::filesystem::exists(path, ec) || ec) continue;
        const auto raw = read_file(path);
        Manifest m = Manifest::from_json(
            std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()));
        if (m.digest() != digest) {
            throw IntegrityError("manifest at " + path.string() + " does not match its digest");
        }
        return m;
    }
    throw IoError("manifest " + args.digest_hex_arg + " not found at any site");
}

int run_merge(const MergeArgs& args) {
    const auto sites = load_sites_file(args.sites_path);
    const Manifest manifest = locate_manifest(args, sites);
    enforce_cipher_gate(manifest.params.cipher, args.allow_insecure);
    const auto key = load_key(args.key_path, manifest.params.cipher);

    FragmentSet fs = fetch(manifest, sites);
    OpCounters counters;
    const auto scheme = make_scheme(manifest.scheme);
    const auto data = scheme->recover(fs, manifest, key, counters);
    if (data.size() != manifest.original_length) {
        throw IntegrityError("recovered length " + std::to_string(data.size()) +
                             " does not match the manifest");
    }
    write_file(args.out_path, data);
    std::cerr << "recovered " << data.size() << " bytes\n";
    return 0;
}

struct PlanArgs {
    std::string sites_path;
    int k = 0, e = 0;
    std::string strategy = "round_robin";
    bool json = false;
};

int run_plan(const PlanArgs& args) {
    const Params params = validate_params(args.k, args.e, 16, CipherId::Aes128);
    const auto sites = load_sites_file(args.sites_path);
    const auto plan =
        plan_placement(params, sites, placement_strategy_from_string(args.strategy));

    if (args.json) {
        nlohmann::ordered_json j;
        j["k"] = params.k;
        j["e"] = params.e;
        j["security_level"] = to_string(params.security_level);
        j["assignments"] = plan.site_by_fragment;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "security level: " << to_string(params.security_level) << "\n";
        for (std::size_t i = 0; i < plan.site_by_fragment.size(); ++i) {
            std::cout << "fragment " << i << " -> " << plan.site_by_fragment[i] << "\n";
        }
    }
    return 0;
}

struct InspectArgs {
    std::string fragment_path, manifest_path;
    bool json = false;
};

int run_inspect(const InspectArgs& args) {
    if (args.fragment_path.empty() == args.manifest_path.empty()) {
        throw ParamsError("pass exactly one of --fragment FILE or --manifest FILE");
    }

    if (!args.fragment_path.empty()) {
        const auto raw = read_file(args.fragment_path);
        const FragmentHeader h = parse_fragment_header(raw);
        if (args.json) {
            nlohmann::ordered_json j;
            j["version"] = h.version;
            j["scheme"] = to_string(h.scheme);
            j["k"] = h.k;
            j["e"] = h.e;
            j["fragment_index"] = h.fragment_index;
            j["block_size"] = h.block_size;
            j["blocks_per_fragment"] = h.blocks_per_fragment;
            j["manifest_digest"] = digest_hex(h.manifest_digest);
            j["payload_bytes"] = h.payload_size();
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "fragment file    " << args.fragment_path << "\n"
                      << "format version   " << h.version << "\n"
                      << "scheme           " << to_string(h.scheme) << "\n"
                      << "k / e            " << h.k << " / " << h.e << "\n"
                      << "fragment index   " << h.fragment_index << "\n"
                      << "block size       " << h.block_size << "\n"
                      << "blocks           " << h.blocks_per_fragment << "\n"
                      << "manifest digest  " << digest_hex(h.manifest_digest) << "\n"
                      << "payload bytes    " << h.payload_size() << "\n";
        }
        return 0;
    }

    const auto raw = read_file(args.manifest_path);
    const std::string_view text(reinterpret_cast<const char*>(raw.data()), raw.size());
    const Manifest m = Manifest::from_json(text);
    if (args.json) {
        std::cout << m.to_json();
    } else {
        std::cout << "scheme           " << to_string(m.scheme) << "\n"
                  << "cipher           " << to_string(m.params.cipher) << "\n"
                  << "k / e            " << m.params.k << " / " << m.params.e << "\n"
                  << "security level   " << to_string(m.params.security_level) << "\n"
                  << "block size       " << m.params.block_size << "\n"
                  << "original length  " << m.original_length << "\n"
                  << "padded blocks    " << m.padded_blocks << "\n"
                  << "manifest digest  " << digest_hex(m.digest()) << "\n";
        for (std::size_t i = 0; i < m.fragment_digests.size(); ++i) {
            std::cout << "fragment " << i << "       " << digest_hex(m.fragment_digests[i]);
            if (m.placement.size() == m.fragment_digests.size()) {
                std::cout << " @ " << m.placement[i];
            }
            std::cout << "\n";
        }
    }
    return 0;
}

struct BenchArgs {
    std::vector<std::string> schemes;
    std::vector<std::string> sizes;
    int reps = 30;
    int warmup = 2;
    std::string cipher = "AES-128";
    std::uint64_t seed = 0x5eed5eed5eedULL;
    std::string csv_path;
    std::string direction = "protect";
};

int run_bench_cmd(const BenchArgs& args) {
    BenchConfig config;
    if (args.schemes.empty()) {
        config.schemes = default_bench_schemes();
    } else {
        for (const auto& s : args.schemes) {
            config.schemes.push_back(scheme_spec_from_string(s));
        }
    }
    if (args.sizes.empty()) {
        config.data_sizes = {1u << 20, 16u << 20, 100u << 20};
    } else {
        for (const auto& s : args.sizes) {
            config.data_sizes.push_back(parse_size(s));
        }
    }
    config.repetitions = args.reps;
    config.warmup_runs = args.warmup;
    config.cipher = cipher_from_string(args.cipher);
    config.seed = args.seed;
    if (args.direction == "both") {
        config.time_recovery = true;
    } else if (args.direction != "protect") {
        throw ParamsError("--direction must be protect or both");
    }

    const auto report = run_bench(config);
    std::cout << format_table(report);
    for (const auto& s : report.summaries) {
        if (!s.counters_match_law) {
            throw IntegrityError("operation counters for " + s.scheme.label() +
                                 " violate the expected law");
        }
    }

    if (!args.csv_path.empty()) {
        if (args.csv_path == "-") {
            write_csv(std::cout, report);
        } else {
            std::ofstream out(args.csv_path);
            if (!out) throw IoError("cannot open " + args.csv_path + " for writing");
            write_csv(out, report);
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"PE-AONT data fragmentation toolkit"};
    app.require_subcommand(1);

    SplitArgs split_args;
    auto* split = app.add_subcommand("split", "Fragment, partially encrypt, transform and store");
    split->add_option("--in", split_args.in_path, "Input file")->required();
    split->add_option("--k", split_args.k, "Fragment count")->required();
    split->add_option("--e", split_args.e, "Encrypted fragment count")->required();
    split->add_option("--block-size", split_args.block_size, "Block size in bytes (16)");
    split->add_option("--cipher", split_args.cipher, "AES-128 or NULL-TEST");
    split->add_option("--scheme", split_args.scheme,
                      "PE-AONT, ENC_SPLIT, BASTION or SFD (default PE-AONT)");
    split->add_option("--sites", split_args.sites_path, "Site list JSON file")->required();
    split->add_option("--key", split_args.key_path, "Key file (default $PEAONT_KEY_FILE)");
    split->add_option("--strategy", split_args.strategy, "round_robin or pack_max");
    split->add_option("--manifest-out", split_args.manifest_out, "Also write the manifest here");
    split->add_flag("--allow-weak", split_args.allow_weak,
                    "Accept parameters without key-exposure protection");
    split->add_flag("--allow-insecure", split_args.allow_insecure,
                    "Accept the NULL-TEST cipher");

    MergeArgs merge_args;
    auto* merge = app.add_subcommand("merge", "Fetch fragments and recover the original file");
    merge->add_option("--manifest", merge_args.manifest_path, "Manifest file");
    merge->add_option("--digest", merge_args.digest_hex_arg, "Manifest digest (hex)");
    merge->add_option("--sites", merge_args.sites_path, "Site list JSON file")->required();
    merge->add_option("--key", merge_args.key_path, "Key file (default $PEAONT_KEY_FILE)");
    merge->add_option("--out", merge_args.out_path, "Output file")->required();
    merge->add_flag("--allow-insecure", merge_args.allow_insecure,
                    "Accept the NULL-TEST cipher");

    PlanArgs plan_args;
    auto* plan = app.add_subcommand("plan", "Show a placement plan without writing anything");
    plan->add_option("--k", plan_args.k, "Fragment count")->required();
    plan->add_option("--e", plan_args.e, "Encrypted fragment count")->required();
    plan->add_option("--sites", plan_args.sites_path, "Site list JSON file")->required();
    plan->add_option("--strategy", plan_args.strategy, "round_robin or pack_max");
    plan->add_flag("--json", plan_args.json, "Machine-readable output");

    InspectArgs inspect_args;
    auto* inspect = app.add_subcommand("inspect", "Print fragment or manifest metadata");
    inspect->add_option("--fragment", inspect_args.fragment_path, "Fragment file");
    inspect->add_option("--manifest", inspect_args.manifest_path, "Manifest file");
    inspect->add_flag("--json", inspect_args.json, "Machine-readable output");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Throughput and operation-count comparison");
    bench->add_option("--schemes", bench_args.schemes,
                      "Scheme specs, e.g. pe-aont:4,3 enc-split bastion sfd");
    bench->add_option("--sizes", bench_args.sizes, "Data sizes, e.g. 1MiB 100MiB");
    bench->add_option("--reps", bench_args.reps, "Repetitions per cell (30)");
    bench->add_option("--warmup", bench_args.warmup, "Warmup runs per cell (2)");
    bench->add_option("--cipher", bench_args.cipher, "AES-128 or NULL-TEST");
    bench->add_option("--seed", bench_args.seed, "Random data seed");
    bench->add_option("--csv", bench_args.csv_path, "Write per-rep CSV here ('-' for stdout)");
    bench->add_option("--direction", bench_args.direction, "protect (default) or both");

    CLI11_PARSE(app, argc, argv);

    if (split->parsed()) return run_guarded([&] { return run_split(split_args); });
    if (merge->parsed()) return run_guarded([&] { return run_merge(merge_args); });
    if (plan->parsed()) return run_guarded([&] { return run_plan(plan_args); });
    if (inspect->parsed()) return run_guarded([&] { return run_inspect(inspect_args); });
    if (bench->parsed()) return run_guarded([&] { return run_bench_cmd(bench_args); });
    return 1;
}
