// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nfsec/baselines.hpp"
#include "nfsec/channel.hpp"
#include "nfsec/csv.hpp"
#include "nfsec/hybrid_ao.hpp"

namespace nfsec {

enum class Sweep { Power, Users, Antennas, RFChains, Convergence };

std::string_view to_string(Sweep sweep);
/// power | users | antennas | rf | convergence
Sweep parse_sweep(std::string_view name);

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
    SystemConfig system;
    Sweep sweep = Sweep::Power;
    // Power in dBm; users, antennas and rf take integer values. Ignored by
    // the convergence sweep, which runs the base system once per trial.
    std::vector<double> values;
    int trials = 1;
    std::uint64_t seed = 1;
    std::vector<Scheme> schemes{Scheme::RSMA_FC};
    std::filesystem::path output_dir = "results";
    int threads = 1; // 0 = hardware concurrency
    bool timing = false; // fill wall_ms; off keeps data files reproducible
    bool far_field_evaluate_on_truth = true;
};

/// INI text with sections [system], [optimizer] and [experiment]. Unknown
/// keys and malformed values raise ConfigError.
ExperimentConfig parse_experiment_config(std::istream& in);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Applies one "section.key" assignment using the INI spelling.
void apply_setting(ExperimentConfig& config, std::string_view dotted_key, std::string_view value);

/// Throws ConfigError naming the offending field or sweep value.
void validate(const ExperimentConfig& config);

/// Base system with the swept field replaced by `value`.
SystemConfig system_for(const ExperimentConfig& config, double value);

/// Sweep values with the per-sweep defaults filled in when none are given.
std::vector<double> effective_values(const ExperimentConfig& config);

/// splitmix64 finalizer applied to seed + golden-ratio multiples of the trial.
std::uint64_t trial_seed(std::uint64_t seed, int trial);

struct TrialRecord {
    double sweep_value = 0.0;
    int trial = 0;
    Scheme scheme = Scheme::RSMA_FC;
    double objective = 0.0;
    double min_rate = 0.0;
    double eaves_common_rate = 0.0;
    double violation = 0.0;
    int inner_iters = 0;
    int outer_iters = 0;
    double wall_ms = 0.0;
    std::string status = "ok";
    std::vector<OuterRecord> outer;

    bool flagged() const { return status != "ok"; }
};

struct ExperimentOutput {
    std::filesystem::path data_file;
    std::filesystem::path summary_file; // empty for the convergence sweep
    std::vector<TrialRecord> records;   // in file order
    std::size_t flagged = 0;
};

/// Scenario of one trial: positions depend only on (seed, trial, K), so every
/// sweep value and scheme sees the same geometry.
ChannelSet trial_scenario(const ExperimentConfig& config, const SystemConfig& system, int trial);

ExperimentOutput run_experiment(const ExperimentConfig& config);

const std::vector<std::string>& sweep_columns();
const std::vector<std::string>& convergence_columns();

struct SummaryRow {
    std::string sweep_param;
    std::string sweep_value;
    std::string scheme;
    std::size_t trials = 0;  // unflagged rows aggregated
    std::size_t flagged = 0; // excluded rows
    double objective_mean = 0.0;
    double objective_std = 0.0;
    double min_rate_mean = 0.0;
    double min_rate_std = 0.0;
    double eaves_common_rate_mean = 0.0;
    double eaves_common_rate_std = 0.0;
};

/// Groups by (sweep_param, sweep_value, scheme) in order of first appearance.
/// Statistics use the sample standard deviation (n - 1), 0 for a single row;
/// cells without an unflagged row report zeros with trials = 0.
std::vector<SummaryRow> summarize(const CsvTable& table);
void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows);
/// Reads a sweep CSV and writes the summary next to it (or to `out`).
std::filesystem::path summarize(const std::filesystem::path& csv,
                                const std::filesystem::path& out = {});

} // namespace nfsec
