#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "peaont/params.hpp"
#include "peaont/scheme.hpp"

namespace peaont {

struct SchemeSpec {
    SchemeId id = SchemeId::PeAont;
    int k = 4;
    int e = 3;

    std::string label() const;
};

/// Parses "pe-aont:4,3", "enc-split", "bastion:8", "sfd" style specs.
SchemeSpec scheme_spec_from_string(std::string_view text);

struct BenchConfig {
    std::vector<SchemeSpec> schemes;
    std::vector<std::size_t> data_sizes;
    int repetitions = 30;
    int warmup_runs = 2;
    CipherId cipher = CipherId::Aes128;
    std::uint64_t seed = 0x5eed5eed5eedULL;
    bool time_recovery = false;
};

/// The four stock PE-AONT configurations plus the three baselines.
std::vector<SchemeSpec> default_bench_schemes();

struct BenchRow {
    SchemeSpec scheme;
    std::size_t size_bytes = 0;
    int rep = 0;
    double seconds = 0.0;
    double mb_per_s = 0.0;
    std::uint64_t cipher_ops = 0;
    std::uint64_t xor_ops = 0;
    bool recovery = false; // timing of the recover direction
};

struct BenchSummary {
    SchemeSpec scheme;
    std::size_t size_bytes = 0;
    double mean_mb_per_s = 0.0;
    double stddev_mb_per_s = 0.0;
    std::uint64_t cipher_ops = 0;
    std::uint64_t xor_ops = 0;
    bool counters_match_law = false;
    double recover_mean_mb_per_s = 0.0; // 0 unless recovery was timed
};

struct EnvRecord {
    std::string cpu_model;
    bool aes_hw = false;
    std::string crypto_backend;
};

EnvRecord probe_environment();

struct BenchReport {
    std::vector<BenchRow> rows;
    std::vector<BenchSummary> summaries;
    EnvRecord env;

    const BenchSummary* find(const std::string& label, std::size_t size_bytes) const;
};

/// Warmup plus `repetitions` timed protect runs per scheme x size, each on a
/// fresh random sample. Op counters are validated against the scheme's law.
BenchReport run_bench(const BenchConfig& config);

/// Columns: scheme,k,e,size_bytes,rep,seconds,mb_per_s,cipher_ops,xor_ops.
/// Recovery rows (when timed) carry a "/recover" suffix on the scheme name.
void write_csv(std::ostream& out, const BenchReport& report);

std::string format_table(const BenchReport& report);

} // namespace peaont
