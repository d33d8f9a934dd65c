// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nfsec/types.hpp"

namespace nfsec {

enum class Architecture { FullyConnected, SubConnected, FullyDigital };

std::string_view to_string(Architecture arch);
Architecture parse_architecture(std::string_view name);

/// Stopping thresholds shared by the optimizer layers.
struct Tolerances {
    double inner = 1e-3;         // relative objective increment, SCA loop
    double outer = 1e-3;         // relative objective increment, block-cycle loop
    double newton = 1e-8;        // KKT residual at subproblem acceptance
    double subproblem = 1e-6;    // barrier duality-gap bound m/t
    double violation_rel = 1e-4; // ||P - FW||_F^2 threshold, relative to P_th
};

/// Geometry, radio and optimizer parameters of one system instance.
///
/// All powers are stored in watts. Use dbm_to_watts() when filling the
/// struct from dBm quantities.
struct SystemConfig {
    int num_antennas = 128;
    int num_rf_chains = 8;
    int num_users = 4;
    double antenna_spacing = 0.005; // m
    double carrier_freq = 30e9;     // Hz
    double power_budget = 0.1;      // W
    // One entry per user, or a single entry applied to every user.
    std::vector<double> noise_users{3.981071705534972e-12};
    double noise_eve = 3.981071705534972e-12;
    double r_min = 10.0;
    double r_max = 20.0;
    double theta_min = 0.0;
    double theta_max = kPi / 2.0;
    Architecture architecture = Architecture::FullyConnected;

    double penalty_init = 100.0;
    double penalty_factor = 0.5;
    Tolerances tol{};
    int max_inner = 50;
    int max_outer = 30;
    int max_cycles = 30;
    // Optional strict margin on R_{k,c} - R_{e,c} >= margin (bps/Hz).
    double common_rate_margin = 0.0;
    // Take a single SCA step per block cycle instead of running it to convergence.
    bool single_step_inner = false;
    // Solve the precoder subproblem in the per-column signal subspace.
    bool subspace_reduction = true;

    double wavelength() const { return kSpeedOfLight / carrier_freq; }
    double noise_user(int k) const;
    double violation_tol() const { return tol.violation_rel * power_budget; }
    int subarray_size() const { return num_antennas / num_rf_chains; }
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// Throws std::invalid_argument naming the first violated field constraint.
void validate(const SystemConfig& config);

struct Polar {
    double r = 0.0;     // m
    double theta = 0.0; // rad
};

struct ChannelSet {
    cmat users;                // N x K, column k is h_k
    cvec eve;                  // g_e
    std::vector<Polar> user_polar;
    Polar eve_polar;
    std::vector<cplx> user_gains;
    cplx eve_gain;

    int num_antennas() const { return static_cast<int>(eve.size()); }
    int num_users() const { return static_cast<int>(users.cols()); }
};

enum class ChannelModel { NearField, FarField };

double rayleigh_distance(const SystemConfig& config);

/// Antenna coordinate y_n = (n - (N+1)/2) d for 0-based index.
double element_position(int n, const SystemConfig& config);

cvec array_response(double r, double theta, const SystemConfig& config);
cvec far_field_response(double theta, const SystemConfig& config);

/// Central-link complex gain (c / 4 pi f r) exp(-j 2 pi r / lambda).
cplx complex_gain(double r, const SystemConfig& config);

cvec near_field_channel(double r, double theta, const SystemConfig& config);
cvec far_field_channel(double r, double theta, const SystemConfig& config);

/// Builds channels for fixed node positions under the given propagation model.
ChannelSet build_channels(const std::vector<Polar>& users, Polar eve,
                          const SystemConfig& config,
                          ChannelModel model = ChannelModel::NearField);

/// Draws K user positions and then one eavesdropper position, uniform in r
/// and theta over the configured ranges.
ChannelSet generate_scenario(std::uint64_t seed, const SystemConfig& config);

std::vector<Polar> draw_positions(std::uint64_t seed, int count,
                                  const SystemConfig& config);

} // namespace nfsec
