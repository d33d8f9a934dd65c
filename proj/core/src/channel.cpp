// SPDX-License-Identifier: Apache-2.0
#include "nfsec/channel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace nfsec {

std::string_view to_string(Architecture arch) {
    switch (arch) {
    case Architecture::FullyConnected: return "fully_connected";
    case Architecture::SubConnected: return "sub_connected";
    case Architecture::FullyDigital: return "fully_digital";
    }
    return "unknown";
}

Architecture parse_architecture(std::string_view name) {
    if (name == "fully_connected" || name == "fc") return Architecture::FullyConnected;
    if (name == "sub_connected" || name == "sc") return Architecture::SubConnected;
    if (name == "fully_digital" || name == "fd") return Architecture::FullyDigital;
    throw std::invalid_argument("unknown architecture '" + std::string(name) + "'");
}

double SystemConfig::noise_user(int k) const {
    return noise_users.size() == 1 ? noise_users.front()
                                   : noise_users.at(static_cast<std::size_t>(k));
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

} // namespace

void validate(const SystemConfig& c) {
    require(c.num_antennas >= 1, "num_antennas must be positive");
    require(c.num_users >= 1, "num_users must be positive");
    require(c.num_rf_chains >= 1, "num_rf_chains must be positive");
    if (c.architecture != Architecture::FullyDigital) {
        require(c.num_rf_chains <= c.num_antennas, "num_rf_chains must not exceed num_antennas");
    }
    if (c.architecture == Architecture::SubConnected) {
        require(c.num_antennas % c.num_rf_chains == 0,
                "num_antennas must be divisible by num_rf_chains for sub-connected arrays");
    }
    require(c.antenna_spacing > 0.0, "antenna_spacing must be positive");
    require(c.carrier_freq > 0.0, "carrier_freq must be positive");
    require(c.power_budget >= 0.0, "power_budget must be non-negative");
    require(c.noise_users.size() == 1 ||
                c.noise_users.size() == static_cast<std::size_t>(c.num_users),
            "noise_users must hold one value or one per user");
    for (double s : c.noise_users) require(s > 0.0, "user noise power must be positive");
    require(c.noise_eve > 0.0, "eavesdropper noise power must be positive");
    require(c.r_min > 0.0, "r_min must be positive");
    require(c.r_max >= c.r_min, "r_max must not be below r_min");
    require(c.r_max <= rayleigh_distance(c),
            "r_max exceeds the Rayleigh distance of the configured array");
    require(c.theta_max >= c.theta_min, "theta_max must not be below theta_min");
    require(c.penalty_init > 0.0, "penalty_init must be positive");
    require(c.penalty_factor > 0.0 && c.penalty_factor < 1.0, "penalty_factor must lie in (0,1)");
    require(c.tol.inner > 0.0 && c.tol.outer > 0.0 && c.tol.newton > 0.0 &&
                c.tol.subproblem > 0.0 && c.tol.violation_rel > 0.0,
            "tolerances must be positive");
    require(c.max_inner >= 1 && c.max_outer >= 1 && c.max_cycles >= 1,
            "iteration limits must be positive");
    require(c.common_rate_margin >= 0.0, "common_rate_margin must be non-negative");
}

double rayleigh_distance(const SystemConfig& config) {
    const double aperture = (config.num_antennas - 1) * config.antenna_spacing;
    return 2.0 * aperture * aperture / config.wavelength();
}

double element_position(int n, const SystemConfig& config) {
    return (static_cast<double>(n + 1) - (config.num_antennas + 1) / 2.0) * config.antenna_spacing;
}

cvec array_response(double r, double theta, const SystemConfig& config) {
    if (!(r > 0.0)) throw std::domain_error("array_response: distance must be positive");
    const double k0 = 2.0 * kPi / config.wavelength();
    const double s = std::sin(theta);
    const double c2 = std::cos(theta) * std::cos(theta);
    cvec a(config.num_antennas);
    for (int n = 0; n < config.num_antennas; ++n) {
        const double y = element_position(n, config);
        const double delta = y * s - y * y * c2 / (2.0 * r);
        a[n] = std::polar(1.0, k0 * delta);
    }
    return a;
}

cvec far_field_response(double theta, const SystemConfig& config) {
    const double k0 = 2.0 * kPi / config.wavelength();
    const double s = std::sin(theta);
    cvec a(config.num_antennas);
    for (int n = 0; n < config.num_antennas; ++n) {
        a[n] = std::polar(1.0, k0 * element_position(n, config) * s);
    }
    return a;
}

cplx complex_gain(double r, const SystemConfig& config) {
    if (!(r > 0.0)) throw std::domain_error("complex_gain: distance must be positive");
    const double magnitude = kSpeedOfLight / (4.0 * kPi * config.carrier_freq * r);
    return std::polar(magnitude, -2.0 * kPi * r / config.wavelength());
}

cvec near_field_channel(double r, double theta, const SystemConfig& config) {
    return complex_gain(r, config) * array_response(r, theta, config);
}

cvec far_field_channel(double r, double theta, const SystemConfig& config) {
    return complex_gain(r, config) * far_field_response(theta, config);
}

ChannelSet build_channels(const std::vector<Polar>& users, Polar eve,
                          const SystemConfig& config, ChannelModel model) {
    const auto channel = [&](Polar p) {
        return model == ChannelModel::NearField ? near_field_channel(p.r, p.theta, config)
                                                : far_field_channel(p.r, p.theta, config);
    };
    ChannelSet set;
    set.users.resize(config.num_antennas, static_cast<Eigen::Index>(users.size()));
    for (std::size_t k = 0; k < users.size(); ++k) {
        set.users.col(static_cast<Eigen::Index>(k)) = channel(users[k]);
        set.user_gains.push_back(complex_gain(users[k].r, config));
    }
    set.user_polar = users;
    set.eve = channel(eve);
    set.eve_polar = eve;
    set.eve_gain = complex_gain(eve.r, config);
    return set;
}

std::vector<Polar> draw_positions(std::uint64_t seed, int count, const SystemConfig& config) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> radius(config.r_min, config.r_max);
    std::uniform_real_distribution<double> angle(config.theta_min, config.theta_max);
    std::vector<Polar> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const double r = radius(rng);
        const double theta = angle(rng);
        out.push_back({r, theta});
    }
    return out;
}

ChannelSet generate_scenario(std::uint64_t seed, const SystemConfig& config) {
    if (config.num_users < 1) throw std::invalid_argument("generate_scenario: num_users must be positive");
    auto positions = draw_positions(seed, config.num_users + 1, config);
    const Polar eve = positions.back();
    positions.pop_back();
    return build_channels(positions, eve, config);
}

} // namespace nfsec
