#include "peaont/bench.hpp"

#include <openssl/crypto.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "peaont/block_model.hpp"
#include "peaont/errors.hpp"

namespace peaont {

std::string SchemeSpec::label() const {
    if (id == SchemeId::PeAont) {
        return std::string(to_string(id)) + "(" + std::to_string(k) + "," + std::to_string(e) + ")";
    }
    return to_string(id);
}

SchemeSpec scheme_spec_from_string(std::string_view text) {
    SchemeSpec spec;
    std::string name(text);
    std::string args;
    if (const auto colon = name.find(':'); colon != std::string::npos) {
        args = name.substr(colon + 1);
        name = name.substr(0, colon);
    }
    spec.id = scheme_from_string(name);

    if (args.empty()) {
        if (spec.id == SchemeId::PeAont) {
            spec.k = 4;
            spec.e = 3;
        } else {
            spec.k = 4;
            spec.e = 3; // ignored by the baselines; kept for the CSV columns
        }
        return spec;
    }

    const auto comma = args.find(',');
    try {
        if (comma == std::string::npos) {
            spec.k = std::stoi(args);
            spec.e = spec.k - 1;
        } else {
            spec.k = std::stoi(args.substr(0, comma));
            spec.e = std::stoi(args.substr(comma + 1));
        }
    } catch (const std::exception&) {
        throw ParamsError("cannot parse scheme spec '" + std::string(text) +
                          "' (expected name[:k[,e]])");
    }
    return spec;
}

std::vector<SchemeSpec> default_bench_schemes() {
    return {
        {SchemeId::PeAont, 4, 3},  {SchemeId::PeAont, 8, 7}, {SchemeId::PeAont, 8, 3},
        {SchemeId::PeAont, 16, 4}, {SchemeId::EncSplit, 4, 3}, {SchemeId::Bastion, 4, 3},
        {SchemeId::Sfd, 4, 3},
    };
}

EnvRecord probe_environment() {
    EnvRecord env;
    env.crypto_backend = OpenSSL_version(OPENSSL_VERSION);

    std::ifstream cpuinfo("/proc/cpuinfo");
    std::string line;
    while (std::getline(cpuinfo, line)) {
        if (env.cpu_model.empty() && line.rfind("model name", 0) == 0) {
            const auto colon = line.find(':');
            if (colon != std::string::npos) {
                env.cpu_model = line.substr(colon + 2);
            }
        }
        if (line.rfind("flags", 0) == 0 && line.find(" aes") != std::string::npos) {
            env.aes_hw = true;
        }
    }
    if (env.cpu_model.empty()) {
        env.cpu_model = "unknown";
    }
    return env;
}

const BenchSummary* BenchReport::find(const std::string& label, std::size_t size_bytes) const {
    for (const auto& s : summaries) {
        if (s.scheme.label() == label && s.size_bytes == size_bytes) {
            return &s;
        }
    }
    return nullptr;
}

namespace {

void fill_random(std::vector<std::uint8_t>& buf, std::mt19937_64& rng) {
    std::size_t i = 0;
    for (; i + 8 <= buf.size(); i += 8) {
        const std::uint64_t v = rng();
        std::memcpy(buf.data() + i, &v, 8);
    }
    if (i < buf.size()) {
        const std::uint64_t v = rng();
        std::memcpy(buf.data() + i, &v, buf.size() - i);
    }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

BenchReport run_bench(const BenchConfig& config) {
    if (config.schemes.empty() || config.data_sizes.empty()) {
        throw ParamsError("benchmark needs at least one scheme and one data size");
    }
    if (config.repetitions < 1) {
        throw ParamsError("repetitions must be at least 1");
    }
    if (config.warmup_runs < 0) {
        throw ParamsError("warmup_runs must be non-negative");
    }

    BenchReport report;
    report.env = probe_environment();

    std::vector<std::uint8_t> key(cipher_key_length(config.cipher));
    std::mt19937_64 key_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    fill_random(key, key_rng);

    SystemEntropySource entropy;

    for (const SchemeSpec& spec : config.schemes) {
        const Params params = validate_params(spec.k, spec.e, 16, config.cipher);
        const auto scheme = make_scheme(spec.id);

        for (const std::size_t size : config.data_sizes) {
            std::mt19937_64 rng(config.seed ^ (size * 0x100000001b3ULL) ^
                                static_cast<std::uint64_t>(spec.id) << 32 ^
                                (static_cast<std::uint64_t>(spec.k) << 16) ^
                                static_cast<std::uint64_t>(spec.e));
            std::vector<std::uint8_t> data(size);
            OpCounters counters;

            for (int w = 0; w < config.warmup_runs; ++w) {
                fill_random(data, rng);
                counters.reset();
                scheme->protect_fragments(data, params, key, entropy, counters);
            }

            const std::size_t l = padded_block_count(size, params) + 1;
            const ExpectedCounters law = expected_protect_counters(spec.id, params, l);

            double sum = 0, sumsq = 0, recover_sum = 0;
            bool law_ok = true;
            std::uint64_t last_cipher_ops = 0, last_xor_ops = 0;

            for (int rep = 0; rep < config.repetitions; ++rep) {
                fill_random(data, rng);

                counters.reset();
                const auto t0 = std::chrono::steady_clock::now();
                FragmentSet fs = scheme->protect_fragments(data, params, key, entropy, counters);
                const double secs = seconds_since(t0);

                BenchRow row;
                row.scheme = spec;
                row.size_bytes = size;
                row.rep = rep;
                row.seconds = secs;
                row.mb_per_s = secs > 0 ? static_cast<double>(size) / 1e6 / secs : 0.0;
                row.cipher_ops = counters.block_cipher_ops;
                row.xor_ops = counters.xor_ops;
                report.rows.push_back(row);

                sum += row.mb_per_s;
                sumsq += row.mb_per_s * row.mb_per_s;
                law_ok = law_ok && counters.block_cipher_ops == law.block_cipher_ops &&
                         counters.xor_ops == law.xor_ops;
                last_cipher_ops = counters.block_cipher_ops;
                last_xor_ops = counters.xor_ops;

                if (config.time_recovery) {
                    Manifest manifest = build_manifest(spec.id, params, data.size(),
                                                       fs.total_blocks() - 1, fs, data);
                    OpCounters rc;
                    const auto t1 = std::chrono::steady_clock::now();
                    const auto recovered = scheme->recover(fs, manifest, key, rc);
                    const double rsecs = seconds_since(t1);
                    if (recovered != data) {
                        throw IntegrityError("benchmark recovery mismatch for " + spec.label());
                    }
                    BenchRow rrow = row;
                    rrow.seconds = rsecs;
                    rrow.mb_per_s = rsecs > 0 ? static_cast<double>(size) / 1e6 / rsecs : 0.0;
                    rrow.cipher_ops = rc.block_cipher_ops;
                    rrow.xor_ops = rc.xor_ops;
                    rrow.recovery = true;
                    report.rows.push_back(rrow);
                    recover_sum += rrow.mb_per_s;
                }
            }

            BenchSummary summary;
            summary.scheme = spec;
            summary.size_bytes = size;
            summary.mean_mb_per_s = sum / config.repetitions;
            const double var =
                sumsq / config.repetitions - summary.mean_mb_per_s * summary.mean_mb_per_s;
            summary.stddev_mb_per_s = var > 0 ? std::sqrt(var) : 0.0;
            summary.cipher_ops = last_cipher_ops;
            summary.xor_ops = last_xor_ops;
            summary.counters_match_law = law_ok;
            summary.recover_mean_mb_per_s =
                config.time_recovery ? recover_sum / config.repetitions : 0.0;
            report.summaries.push_back(summary);
        }
    }
    return report;
}

void write_csv(std::ostream& out, const BenchReport& report) {
    out << "scheme,k,e,size_bytes,rep,seconds,mb_per_s,cipher_ops,xor_ops\n";
    char buf[64];
    for (const auto& row : report.rows) {
        std::string name = row.scheme.label();
        if (row.recovery) {
            name += "/recover";
        }
        out << name << ',' << row.scheme.k << ',' << row.scheme.e << ',' << row.size_bytes << ','
            << row.rep << ',';
        std::snprintf(buf, sizeof buf, "%.6f", row.seconds);
        out << buf << ',';
        std::snprintf(buf, sizeof buf, "%.3f", row.mb_per_s);
        out << buf << ',' << row.cipher_ops << ',' << row.xor_ops << '\n';
    }
}

std::string format_table(const BenchReport& report) {
    std::ostringstream out;
    out << "cpu: " << report.env.cpu_model << "\n"
        << "aes acceleration: " << (report.env.aes_hw ? "active (cpu aes flag)" : "not detected")
        << "\n"
        << "crypto backend: " << report.env.crypto_backend << "\n\n";

    char line[256];
    std::snprintf(line, sizeof line, "%-16s %12s %12s %10s %12s %12s %8s\n", "scheme",
                  "size_bytes", "mean MB/s", "stddev", "cipher_ops", "xor_ops", "law");
    out << line;
    for (const auto& s : report.summaries) {
        std::snprintf(line, sizeof line, "%-16s %12zu %12.2f %10.2f %12llu %12llu %8s",
                      s.scheme.label().c_str(), s.size_bytes, s.mean_mb_per_s, s.stddev_mb_per_s,
                      static_cast<unsigned long long>(s.cipher_ops),
                      static_cast<unsigned long long>(s.xor_ops),
                      s.counters_match_law ? "ok" : "VIOLATED");
        out << line;
        if (s.recover_mean_mb_per_s > 0) {
            std::snprintf(line, sizeof line, "   recover %.2f MB/s", s.recover_mean_mb_per_s);
            out << line;
        }
        out << "\n";
    }
    return out.str();
}

} // namespace peaont
