// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "nfsec/experiments.hpp"

using namespace nfsec;
namespace fs = std::filesystem;

namespace {

ExperimentConfig parse(const std::string& text) {
    std::istringstream in(text);
    return parse_experiment_config(in);
}

fs::path scratch_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("nfsec_unit_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

CsvTable table_of(const std::vector<std::vector<std::string>>& rows) {
    CsvTable t;
    t.header = sweep_columns();
    t.rows = rows;
    return t;
}

std::vector<std::string> row(const std::string& value, const std::string& scheme, double objective,
                             const std::string& status = "ok") {
    return {"power", value, "0", scheme, format_number(objective), format_number(objective + 1.0), "0.5",
            "0", "1", "1", "0", status};
}

} // namespace

TEST(Config, ParsesSections) {
    const ExperimentConfig c = parse(
        "[system]\nnum_antennas = 16\nnum_rf_chains = 4\nnum_users = 2\npower_budget_dbm = 10\n"
        "noise_user_dbm = -80, -90\nr_min = 0.5\nr_max = 1.0\narchitecture = sub_connected\n"
        "[optimizer]\npenalty_init = 50\nmax_outer = 12\nsingle_step_inner = true\n"
        "[experiment]\nsweep = users\nvalues = 2, 3\ntrials = 4\nseed = 99\nschemes = RSMA-FC, SDMA-FC\n");
    EXPECT_EQ(c.system.num_antennas, 16);
    EXPECT_NEAR(c.system.power_budget, 0.01, 1e-15);
    ASSERT_EQ(c.system.noise_users.size(), 2u);
    EXPECT_NEAR(c.system.noise_users[1], dbm_to_watts(-90.0), 1e-25);
    EXPECT_EQ(c.system.architecture, Architecture::SubConnected);
    EXPECT_EQ(c.system.penalty_init, 50.0);
    EXPECT_EQ(c.system.max_outer, 12);
    EXPECT_TRUE(c.system.single_step_inner);
    EXPECT_EQ(c.sweep, Sweep::Users);
    EXPECT_EQ(c.values, (std::vector<double>{2, 3}));
    EXPECT_EQ(c.trials, 4);
    EXPECT_EQ(c.seed, 99u);
    EXPECT_EQ(c.schemes, (std::vector<Scheme>{Scheme::RSMA_FC, Scheme::SDMA_FC}));
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
    EXPECT_THROW(parse("[system]\nnum_antenas = 16\n"), ConfigError);
    EXPECT_THROW(parse("[system]\nnum_antennas = sixteen\n"), ConfigError);
    EXPECT_THROW(parse("[system]\nnum_antennas = 16.5\n"), ConfigError);
    EXPECT_THROW(parse("[experiment]\nsweep = sideways\n"), ConfigError);
    EXPECT_THROW(parse("[experiment]\nschemes = NOMA\n"), ConfigError);
    EXPECT_THROW(parse("trials = 3\n"), ConfigError);
}

TEST(Config, DottedOverride) {
    ExperimentConfig c;
    apply_setting(c, "system.num_users", "5");
    apply_setting(c, "optimizer.outer_tol", "1e-4");
    apply_setting(c, "experiment.output_dir", "out/x");
    EXPECT_EQ(c.system.num_users, 5);
    EXPECT_EQ(c.system.tol.outer, 1e-4);
    EXPECT_EQ(c.output_dir, fs::path("out/x"));
    EXPECT_THROW(apply_setting(c, "system.nope", "1"), ConfigError);
    EXPECT_THROW(apply_setting(c, "num_users", "1"), ConfigError);
}

TEST(Config, Validation) {
    ExperimentConfig c;
    EXPECT_NO_THROW(validate(c));
    ExperimentConfig zero = c;
    zero.trials = 0;
    EXPECT_THROW(validate(zero), ConfigError);
    ExperimentConfig users = c;
    users.sweep = Sweep::Users;
    users.values = {2.5};
    EXPECT_THROW(validate(users), ConfigError);
    ExperimentConfig sc = c;
    sc.schemes = {Scheme::RSMA_SC};
    sc.sweep = Sweep::RFChains;
    sc.values = {5};
    EXPECT_THROW(validate(sc), ConfigError);
    ExperimentConfig far = c;
    far.system.r_max = 500.0;
    EXPECT_THROW(validate(far), ConfigError);
    ExperimentConfig none = c;
    none.schemes.clear();
    EXPECT_THROW(validate(none), ConfigError);
}

TEST(Sweeps, DefaultsAndSubstitution) {
    ExperimentConfig c;
    EXPECT_EQ(effective_values(c), (std::vector<double>{0, 5, 10, 15, 20}));
    c.sweep = Sweep::Users;
    EXPECT_EQ(effective_values(c), (std::vector<double>{2, 3, 4, 5, 6}));
    EXPECT_EQ(system_for(c, 3).num_users, 3);
    c.sweep = Sweep::Power;
    EXPECT_NEAR(system_for(c, 10).power_budget, 0.01, 1e-15);
    c.sweep = Sweep::Antennas;
    EXPECT_EQ(system_for(c, 64).num_antennas, 64);
    EXPECT_EQ(parse_sweep("rf"), Sweep::RFChains);
    EXPECT_EQ(to_string(Sweep::Convergence), "convergence");
}

TEST(Seeds, DeterministicAndDistinct) {
    EXPECT_EQ(trial_seed(1, 0), trial_seed(1, 0));
    std::set<std::uint64_t> seen;
    for (int t = 0; t < 1000; ++t) seen.insert(trial_seed(1, t));
    EXPECT_EQ(seen.size(), 1000u);
    EXPECT_NE(trial_seed(1, 5), trial_seed(2, 5));
}

TEST(Scenario, SameGeometryAcrossSweepValues) {
    ExperimentConfig c;
    const ChannelSet a = trial_scenario(c, system_for(c, 0.0), 3);
    const ChannelSet b = trial_scenario(c, system_for(c, 20.0), 3);
    EXPECT_TRUE((a.users.array() == b.users.array()).all());
    EXPECT_EQ(a.eve_polar.theta, b.eve_polar.theta);
}

TEST(Numbers, FormatRoundTrips) {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int i = 0; i < 1000; ++i) {
        const double x = u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        EXPECT_EQ(std::stod(format_number(x)), x);
    }
    EXPECT_EQ(format_number(0.5), "0.5");
    EXPECT_EQ(format_number(3.0), "3");
    EXPECT_EQ(format_number(0.1), "0.1");
    EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Csv, ReadBackWhatWasWritten) {
    std::ostringstream out;
    write_csv_row(out, {"a", "b", "c"});
    write_csv_row(out, {"1", "x", "2.5"});
    std::istringstream in(out.str());
    const CsvTable t = read_csv(in);
    EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b", "c"}));
    ASSERT_EQ(t.rows.size(), 1u);
    EXPECT_EQ(t.rows[0][t.column("c")], "2.5");
    EXPECT_THROW(t.column("d"), std::out_of_range);
}

TEST(Summary, SingleRowHasZeroStd) {
    const auto s = summarize(table_of({row("0", "RSMA-FC", 1.0)}));
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].objective_mean, 1.0);
    EXPECT_EQ(s[0].objective_std, 0.0);
    EXPECT_EQ(s[0].trials, 1u);
}

TEST(Summary, SampleStandardDeviation) {
    const auto s = summarize(table_of({row("0", "RSMA-FC", 1.0), row("0", "RSMA-FC", 3.0)}));
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0].objective_mean, 2.0);
    EXPECT_NEAR(s[0].objective_std, std::sqrt(2.0), 1e-15);
    EXPECT_EQ(s[0].min_rate_mean, 3.0);
}

TEST(Summary, FlaggedRowsExcluded) {
    const auto s = summarize(table_of({row("0", "RSMA-FC", 1.0), row("0", "RSMA-FC", 100.0, "penalty_not_closed"),
                                       row("5", "RSMA-FC", 7.0, "error")}));
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0].objective_mean, 1.0);
    EXPECT_EQ(s[0].flagged, 1u);
    EXPECT_EQ(s[1].trials, 0u);
    EXPECT_EQ(s[1].objective_mean, 0.0);
}

TEST(Summary, AgreesWithIndependentAggregation) {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(5.0, 2.0);
    std::vector<std::vector<std::string>> rows;
    std::map<std::pair<std::string, std::string>, std::vector<double>> groups;
    const std::vector<std::string> values{"0", "10"};
    const std::vector<std::string> schemes{"RSMA-FC", "SDMA-FC"};
    for (int i = 0; i < 100; ++i) {
        const std::string v = values[static_cast<std::size_t>(i % 2)];
        const std::string s = schemes[static_cast<std::size_t>((i / 2) % 2)];
        const double x = g(rng);
        rows.push_back(row(v, s, x));
        groups[{v, s}].push_back(std::stod(format_number(x)));
    }
    const auto summary = summarize(table_of(rows));
    ASSERT_EQ(summary.size(), 4u);
    for (const SummaryRow& r : summary) {
        const auto& xs = groups.at({r.sweep_value, r.scheme});
        long double sum = 0.0L;
        for (double x : xs) sum += x;
        const long double mean = sum / xs.size();
        long double ss = 0.0L;
        for (double x : xs) ss += (x - mean) * (x - mean);
        EXPECT_EQ(r.trials, xs.size());
        EXPECT_NEAR(r.objective_mean, static_cast<double>(mean), 1e-12);
        EXPECT_NEAR(r.objective_std, static_cast<double>(std::sqrt(ss / (xs.size() - 1))), 1e-12);
    }
}

TEST(RunExperiment, RowCountAndOrder) {
    ExperimentConfig c = parse(
        "[system]\nnum_antennas = 16\nnum_rf_chains = 4\nnum_users = 2\nr_min = 0.5\nr_max = 1.0\n"
        "[optimizer]\nmax_outer = 3\nmax_cycles = 2\nmax_inner = 2\n"
        "[experiment]\nsweep = power\nvalues = 0, 10\ntrials = 2\nschemes = RSMA-FD, SDMA-FC\nthreads = 2\n");
    c.output_dir = scratch_dir("rows");
    const ExperimentOutput out = run_experiment(c);
    ASSERT_EQ(out.records.size(), 2u * 2u * 2u);
    EXPECT_EQ(out.records[0].scheme, Scheme::RSMA_FD);
    EXPECT_EQ(out.records[1].scheme, Scheme::SDMA_FC);
    EXPECT_EQ(out.records[2].trial, 1);
    EXPECT_EQ(out.records[4].sweep_value, 10.0);
    const CsvTable t = read_csv(out.data_file);
    EXPECT_EQ(t.header, sweep_columns());
    EXPECT_EQ(t.rows.size(), 8u);
    for (const auto& r : t.rows) EXPECT_EQ(r[t.column("wall_ms")], "");
    EXPECT_TRUE(fs::exists(out.summary_file));
    const CsvTable s = read_csv(out.summary_file);
    EXPECT_EQ(s.rows.size(), 4u);
}

TEST(RunExperiment, ConvergenceRows) {
    ExperimentConfig c = parse(
        "[system]\nnum_antennas = 16\nnum_rf_chains = 4\nnum_users = 2\nr_min = 0.5\nr_max = 1.0\n"
        "[optimizer]\nmax_outer = 3\nmax_cycles = 2\nmax_inner = 2\n"
        "[experiment]\nsweep = convergence\ntrials = 1\nschemes = RSMA-FC\n");
    c.output_dir = scratch_dir("convergence");
    const ExperimentOutput out = run_experiment(c);
    const CsvTable t = read_csv(out.data_file);
    EXPECT_EQ(t.header, convergence_columns());
    ASSERT_EQ(out.records.size(), 1u);
    EXPECT_EQ(t.rows.size(), out.records[0].outer.size());
    EXPECT_TRUE(out.summary_file.empty());
}
