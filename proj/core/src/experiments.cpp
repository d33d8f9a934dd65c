// SPDX-License-Identifier: Apache-2.0
#include "nfsec/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace nfsec {

std::string_view to_string(Sweep sweep) {
    switch (sweep) {
    case Sweep::Power: return "power";
    case Sweep::Users: return "users";
    case Sweep::Antennas: return "antennas";
    case Sweep::RFChains: return "rf";
    case Sweep::Convergence: return "convergence";
    }
    return "unknown";
}

Sweep parse_sweep(std::string_view name) {
    for (Sweep s : {Sweep::Power, Sweep::Users, Sweep::Antennas, Sweep::RFChains, Sweep::Convergence}) {
        if (to_string(s) == name) return s;
    }
    throw ConfigError("unknown sweep '" + std::string(name) +
                      "' (expected power, users, antennas, rf or convergence)");
}

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, std::string_view text) {
    const std::string s = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (s.empty() || used != s.size() || !std::isfinite(v)) {
        throw ConfigError(key + ": expected a number, got '" + s + "'");
    }
    return v;
}

long long to_integer(const std::string& key, std::string_view text) {
    const double v = to_double(key, text);
    if (v != std::floor(v) || std::abs(v) > 9.0e15) {
        throw ConfigError(key + ": expected an integer, got '" + trim(text) + "'");
    }
    return static_cast<long long>(v);
}

int to_int(const std::string& key, std::string_view text) {
    const long long v = to_integer(key, text);
    if (v < -2147483647LL || v > 2147483647LL) throw ConfigError(key + ": value out of range");
    return static_cast<int>(v);
}

bool to_bool(const std::string& key, std::string_view text) {
    const std::string s = trim(text);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ConfigError(key + ": expected a boolean, got '" + s + "'");
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss{std::string(text)};
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> to_doubles(const std::string& key, std::string_view text) {
    std::vector<double> out;
    for (const auto& item : split_list(text)) out.push_back(to_double(key, item));
    return out;
}

using Setter = std::function<void(ExperimentConfig&, const std::string& key, std::string_view)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = [] {
        std::map<std::string, Setter> t;
        const auto sys = [](auto field) {
            return [field](ExperimentConfig& c, const std::string& key, std::string_view v) {
                field(c.system, key, v);
            };
        };
        t["system.num_antennas"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.num_antennas = to_int(k, v); });
        t["system.num_rf_chains"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.num_rf_chains = to_int(k, v); });
        t["system.num_users"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.num_users = to_int(k, v); });
        t["system.antenna_spacing"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.antenna_spacing = to_double(k, v); });
        t["system.carrier_freq"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.carrier_freq = to_double(k, v); });
        t["system.power_budget_dbm"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.power_budget = dbm_to_watts(to_double(k, v)); });
        t["system.noise_user_dbm"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) {
            s.noise_users.clear();
            for (double d : to_doubles(k, v)) s.noise_users.push_back(dbm_to_watts(d));
            if (s.noise_users.empty()) throw ConfigError(k + ": expected at least one value");
        });
        t["system.noise_eve_dbm"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.noise_eve = dbm_to_watts(to_double(k, v)); });
        t["system.r_min"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.r_min = to_double(k, v); });
        t["system.r_max"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.r_max = to_double(k, v); });
        t["system.theta_min"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.theta_min = to_double(k, v); });
        t["system.theta_max"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.theta_max = to_double(k, v); });
        t["system.architecture"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) {
            try {
                s.architecture = parse_architecture(trim(v));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(k + ": " + e.what());
            }
        });

        t["optimizer.penalty_init"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.penalty_init = to_double(k, v); });
        t["optimizer.penalty_factor"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.penalty_factor = to_double(k, v); });
        t["optimizer.inner_tol"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.tol.inner = to_double(k, v); });
        t["optimizer.outer_tol"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.tol.outer = to_double(k, v); });
        t["optimizer.newton_tol"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.tol.newton = to_double(k, v); });
        t["optimizer.subproblem_tol"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.tol.subproblem = to_double(k, v); });
        t["optimizer.violation_rel"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.tol.violation_rel = to_double(k, v); });
        t["optimizer.max_inner"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.max_inner = to_int(k, v); });
        t["optimizer.max_outer"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.max_outer = to_int(k, v); });
        t["optimizer.max_cycles"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.max_cycles = to_int(k, v); });
        t["optimizer.common_rate_margin"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.common_rate_margin = to_double(k, v); });
        t["optimizer.single_step_inner"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.single_step_inner = to_bool(k, v); });
        t["optimizer.subspace_reduction"] = sys([](SystemConfig& s, const std::string& k, std::string_view v) { s.subspace_reduction = to_bool(k, v); });

        t["experiment.sweep"] = [](ExperimentConfig& c, const std::string&, std::string_view v) { c.sweep = parse_sweep(trim(v)); };
        t["experiment.values"] = [](ExperimentConfig& c, const std::string& k, std::string_view v) { c.values = to_doubles(k, v); };
        t["experiment.trials"] = [](ExperimentConfig& c, const std::string& k, std::string_view v) { c.trials = to_int(k, v); };
        t["experiment.seed"] = [](ExperimentConfig& c, const std::string& k, std::string_view v) {
            const long long s = to_integer(k, v);
            if (s < 0) throw ConfigError(k + ": seed must be non-negative");
            c.seed = static_cast<std::uint64_t>(s);
        };
        t["experiment.schemes"] = [](ExperimentConfig& c, const std::string& k, std::string_view v) {
            c.schemes.clear();
            for (const auto& name : split_list(v)) {
                try {
                    c.schemes.push_back(parse_scheme(name));
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(k + ": " + e.what());
                }
            }
        };
        t["experiment.output_dir"] = [](ExperimentConfig& c, const std::string&, std::string_view v) { c.output_dir = trim(v); };
        t["experiment.threads"] = [](ExperimentConfig& c, const std::string& k, std::string_view v) { c.threads = to_int(k, v); };
        t["experiment.timing"] = [](ExperimentConfig& c, const std::string& k, std::string_view v) { c.timing = to_bool(k, v); };
        t["experiment.far_field_evaluation"] = [](ExperimentConfig& c, const std::string& k, std::string_view v) {
            const std::string s = trim(v);
            if (s == "near_field") c.far_field_evaluate_on_truth = true;
            else if (s == "far_field") c.far_field_evaluate_on_truth = false;
            else throw ConfigError(k + ": expected near_field or far_field, got '" + s + "'");
        };
        return t;
    }();
    return table;
}

} // namespace

void apply_setting(ExperimentConfig& config, std::string_view dotted_key, std::string_view value) {
    const std::string key(dotted_key);
    const auto it = setters().find(key);
    if (it == setters().end()) throw ConfigError("unknown configuration key '" + key + "'");
    it->second(config, key, value);
}

ExperimentConfig parse_experiment_config(std::istream& in) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    ExperimentConfig config;
    for (const auto& [section, body] : tree) {
        if (body.empty()) throw ConfigError("key '" + section + "' outside of a section");
        for (const auto& [key, node] : body) apply_setting(config, section + "." + key, node.data());
    }
    return config;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parse_experiment_config(in);
}

std::vector<double> effective_values(const ExperimentConfig& config) {
    if (config.sweep == Sweep::Convergence) return {0.0};
    if (!config.values.empty()) return config.values;
    switch (config.sweep) {
    case Sweep::Power: return {0, 5, 10, 15, 20};
    case Sweep::Users: return {2, 3, 4, 5, 6};
    case Sweep::Antennas: return {static_cast<double>(config.system.num_antennas)};
    case Sweep::RFChains: return {static_cast<double>(config.system.num_rf_chains)};
    case Sweep::Convergence: break;
    }
    return {0.0};
}

SystemConfig system_for(const ExperimentConfig& config, double value) {
    SystemConfig s = config.system;
    switch (config.sweep) {
    case Sweep::Power: s.power_budget = dbm_to_watts(value); break;
    case Sweep::Users: s.num_users = static_cast<int>(value); break;
    case Sweep::Antennas: s.num_antennas = static_cast<int>(value); break;
    case Sweep::RFChains: s.num_rf_chains = static_cast<int>(value); break;
    case Sweep::Convergence: break;
    }
    return s;
}

void validate(const ExperimentConfig& config) {
    if (config.trials < 1) throw ConfigError("experiment.trials must be positive");
    if (config.threads < 0) throw ConfigError("experiment.threads must be non-negative");
    if (config.schemes.empty()) throw ConfigError("experiment.schemes must name at least one scheme");
    const bool integral = config.sweep == Sweep::Users || config.sweep == Sweep::Antennas ||
                          config.sweep == Sweep::RFChains;
    const bool sub_connected = std::find(config.schemes.begin(), config.schemes.end(),
                                         Scheme::RSMA_SC) != config.schemes.end();
    for (double v : effective_values(config)) {
        const std::string where = std::string(to_string(config.sweep)) + " value " + format_number(v);
        if (integral && (v != std::floor(v) || v < 1)) throw ConfigError(where + ": expected a positive integer");
        SystemConfig s = system_for(config, v);
        if (sub_connected && s.num_antennas % s.num_rf_chains != 0) {
            throw ConfigError(where + ": RSMA-SC needs num_antennas divisible by num_rf_chains");
        }
        if (!(s.power_budget > 0.0)) throw ConfigError(where + ": power budget must be positive");
        try {
            nfsec::validate(s);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(where + ": " + e.what());
        }
    }
}

std::uint64_t trial_seed(std::uint64_t seed, int trial) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(trial) + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

ChannelSet trial_scenario(const ExperimentConfig& config, const SystemConfig& system, int trial) {
    return generate_scenario(trial_seed(config.seed, trial), system);
}

const std::vector<std::string>& sweep_columns() {
    static const std::vector<std::string> cols{
        "sweep_param", "sweep_value", "trial", "scheme", "objective_bpshz", "min_rate_bpshz",
        "eaves_common_rate_bpshz", "penalty_violation", "inner_iters", "outer_iters", "wall_ms", "status"};
    return cols;
}

const std::vector<std::string>& convergence_columns() {
    static const std::vector<std::string> cols{"trial", "scheme", "outer_iter", "rho",
                                               "penalty_violation", "objective_bpshz"};
    return cols;
}

namespace {

std::string status_of(const OptimizerTrace& trace) {
    if (!trace.flagged()) return "ok";
    std::string out;
    for (const auto& f : trace.flags) {
        if (!out.empty()) out += ';';
        for (char ch : f) out += (ch == ' ' || ch == ',' || ch == ':') ? '_' : ch;
    }
    return out;
}

TrialRecord run_one(const ExperimentConfig& config, double value, int trial, Scheme scheme) {
    TrialRecord rec;
    rec.sweep_value = value;
    rec.trial = trial;
    rec.scheme = scheme;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const SystemConfig system = system_for(config, value);
        const ChannelSet channels = trial_scenario(config, system, trial);
        SchemeOptions opts;
        opts.seed = trial_seed(trial_seed(config.seed, trial), 1);
        opts.far_field_evaluate_on_truth = config.far_field_evaluate_on_truth;
        const SchemeResult res = run_scheme(scheme, system, channels, opts);
        rec.objective = res.report.objective;
        rec.min_rate = res.report.min_rate;
        rec.eaves_common_rate = res.report.rates.eve_common;
        rec.violation = (res.run.precoder - res.run.beamformer.effective()).squaredNorm();
        rec.inner_iters = res.run.trace.inner_iterations;
        rec.outer_iters = res.run.trace.outer_iterations;
        rec.status = status_of(res.run.trace);
        rec.outer = res.run.trace.outer;
    } catch (const std::exception& e) {
        rec.status = "error";
    }
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

std::filesystem::path data_path(const ExperimentConfig& config) {
    if (config.sweep == Sweep::Convergence) return config.output_dir / "convergence.csv";
    return config.output_dir / (std::string(to_string(config.sweep)) + "_sweep.csv");
}

} // namespace

ExperimentOutput run_experiment(const ExperimentConfig& config) {
    validate(config);
    const std::vector<double> values = effective_values(config);
    const std::size_t S = config.schemes.size();
    const std::size_t T = static_cast<std::size_t>(config.trials);
    const std::size_t total = values.size() * T * S;

    std::vector<TrialRecord> records(total);
    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t i = next++; i < total; i = next++) {
            const std::size_t v = i / (T * S);
            const std::size_t t = (i / S) % T;
            const std::size_t s = i % S;
            records[i] = run_one(config, values[v], static_cast<int>(t), config.schemes[s]);
        }
    };
    unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                          : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(total, 1)));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    ExperimentOutput out;
    std::filesystem::create_directories(config.output_dir);
    out.data_file = data_path(config);
    std::ofstream file(out.data_file, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + out.data_file.string());
    const std::string param(to_string(config.sweep));
    if (config.sweep == Sweep::Convergence) {
        write_csv_row(file, convergence_columns());
        for (const auto& r : records) {
            for (const auto& o : r.outer) {
                write_csv_row(file, {std::to_string(r.trial), std::string(to_string(r.scheme)),
                                     std::to_string(o.outer_iter), format_number(o.rho),
                                     format_number(o.violation), format_number(o.hybrid_objective)});
            }
        }
    } else {
        write_csv_row(file, sweep_columns());
        for (const auto& r : records) {
            write_csv_row(file, {param, format_number(r.sweep_value), std::to_string(r.trial),
                                 std::string(to_string(r.scheme)), format_number(r.objective),
                                 format_number(r.min_rate), format_number(r.eaves_common_rate),
                                 format_number(r.violation), std::to_string(r.inner_iters),
                                 std::to_string(r.outer_iters),
                                 config.timing ? format_number(std::round(r.wall_ms * 1000.0) / 1000.0) : "",
                                 r.status});
        }
    }
    file.close();
    for (const auto& r : records) out.flagged += r.flagged() ? 1 : 0;
    if (config.sweep != Sweep::Convergence) {
        out.summary_file = summarize(out.data_file,
                                     config.output_dir / (param + "_summary.csv"));
    }
    out.records = std::move(records);
    return out;
}

namespace {

struct Accumulator {
    std::vector<double> values;

    void add(double v) { values.push_back(v); }
    double mean() const {
        if (values.empty()) return 0.0;
        double s = 0.0;
        for (double v : values) s += v;
        return s / static_cast<double>(values.size());
    }
    double stddev() const {
        if (values.size() < 2) return 0.0;
        const double m = mean();
        double s = 0.0;
        for (double v : values) s += (v - m) * (v - m);
        return std::sqrt(s / static_cast<double>(values.size() - 1));
    }
};

} // namespace

std::vector<SummaryRow> summarize(const CsvTable& table) {
    const std::size_t c_param = table.column("sweep_param");
    const std::size_t c_value = table.column("sweep_value");
    const std::size_t c_scheme = table.column("scheme");
    const std::size_t c_obj = table.column("objective_bpshz");
    const std::size_t c_min = table.column("min_rate_bpshz");
    const std::size_t c_eve = table.column("eaves_common_rate_bpshz");
    const std::size_t c_status = table.column("status");

    struct Cell {
        SummaryRow row;
        Accumulator obj, min, eve;
    };
    std::vector<Cell> cells;
    std::map<std::tuple<std::string, std::string, std::string>, std::size_t> index;
    for (const auto& r : table.rows) {
        const auto key = std::make_tuple(r[c_param], r[c_value], r[c_scheme]);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, cells.size()).first;
            Cell c;
            c.row.sweep_param = r[c_param];
            c.row.sweep_value = r[c_value];
            c.row.scheme = r[c_scheme];
            cells.push_back(std::move(c));
        }
        Cell& cell = cells[it->second];
        const auto parse = [&](std::size_t col) {
            const double v = std::stod(r[col]);
            return v;
        };
        if (r[c_status] != "ok") {
            ++cell.row.flagged;
            continue;
        }
        const double obj = parse(c_obj);
        const double min = parse(c_min);
        const double eve = parse(c_eve);
        if (!std::isfinite(obj) || !std::isfinite(min) || !std::isfinite(eve)) {
            ++cell.row.flagged;
            continue;
        }
        cell.obj.add(obj);
        cell.min.add(min);
        cell.eve.add(eve);
        ++cell.row.trials;
    }
    std::vector<SummaryRow> out;
    for (auto& c : cells) {
        c.row.objective_mean = c.obj.mean();
        c.row.objective_std = c.obj.stddev();
        c.row.min_rate_mean = c.min.mean();
        c.row.min_rate_std = c.min.stddev();
        c.row.eaves_common_rate_mean = c.eve.mean();
        c.row.eaves_common_rate_std = c.eve.stddev();
        out.push_back(c.row);
    }
    return out;
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& rows) {
    write_csv_row(out, {"sweep_param", "sweep_value", "scheme", "trials", "flagged", "objective_mean",
                        "objective_std", "min_rate_mean", "min_rate_std", "eaves_common_rate_mean",
                        "eaves_common_rate_std"});
    for (const auto& r : rows) {
        write_csv_row(out, {r.sweep_param, r.sweep_value, r.scheme, std::to_string(r.trials),
                            std::to_string(r.flagged), format_number(r.objective_mean),
                            format_number(r.objective_std), format_number(r.min_rate_mean),
                            format_number(r.min_rate_std), format_number(r.eaves_common_rate_mean),
                            format_number(r.eaves_common_rate_std)});
    }
}

std::filesystem::path summarize(const std::filesystem::path& csv, const std::filesystem::path& out) {
    const CsvTable table = read_csv(csv);
    std::filesystem::path target = out;
    if (target.empty()) {
        target = csv;
        target.replace_filename(csv.stem().string() + "_summary.csv");
    }
    std::ofstream file(target, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + target.string());
    write_summary(file, summarize(table));
    return target;
}

} // namespace nfsec
