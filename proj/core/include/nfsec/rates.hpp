// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "nfsec/channel.hpp"
#include "nfsec/types.hpp"

namespace nfsec {

/// Which stream set and which eavesdropping terms a design accounts for.
enum class SecrecyModel {
    Secure,         // RSMA, common stream doubles as artificial noise
    NoEavesdropper, // RSMA max-min rate, eavesdropper ignored
    PrivateOnly,    // SDMA: common precoder pinned to zero
};

struct Noise {
    std::vector<double> users; // per user
    double eve = 0.0;
};

Noise noise_of(const SystemConfig& config);

/// Received power terms for K users and the eavesdropper. Column 0 of the
/// precoder is the common stream, columns 1..K the private streams.
struct PowerDecomposition {
    rvec S_c; // |h_k^H p_0|^2
    rvec S_p; // |h_k^H p_k|^2
    rvec I_p; // other private streams plus noise
    rvec I_c; // = T_{k,p} = S_p + I_p
    rvec T_c; // S_c + S_p + I_p

    double S_ec = 0.0;
    rvec S_ek;         // |g^H p_k|^2
    rvec I_ek;         // other private streams plus eavesdropper noise
    double I_ec = 0.0; // = T_{e,k}, independent of k
    double T_ec = 0.0;

    int num_users() const { return static_cast<int>(S_c.size()); }
};

struct StreamRates {
    rvec common;        // R_{k,c}
    rvec priv;          // R_{k,p}
    double common_min = 0.0; // R_c
    double eve_common = 0.0; // R_{e,c}
    rvec eve_private;        // R_{e,k}
};

/// Secrecy-rate split of the common secrecy rate among users.
struct SecrecyAllocation {
    rvec common; // R^s_{k,c}
};

struct RateReport {
    StreamRates rates;
    double secrecy_common = 0.0; // [R_c - R_{e,c}]^+
    SecrecyAllocation allocation;
    rvec secrecy_private; // [R_{k,p} - R_{e,k}]^+
    rvec secrecy_user;    // R^s_k
    double objective = 0.0; // min_k R^s_k
    // Max-min communication rate with the common rate optimally shared.
    double min_rate = 0.0;
};

PowerDecomposition received_powers(const cmat& precoder, const ChannelSet& channels,
                                   const Noise& noise);

StreamRates stream_rates(const PowerDecomposition& powers);

/// Completes a report from a given allocation. Throws std::invalid_argument if
/// the allocation has negative entries or exceeds the common secrecy rate.
RateReport secrecy_report(const StreamRates& rates, const SecrecyAllocation& allocation);

/// Water-filling split of `budget` maximizing min_k (base_k + share_k),
/// shares non-negative and summing to the budget.
rvec max_min_allocation(const rvec& base, double budget);

/// Report with the allocation chosen optimally for the given model.
/// Secure: shares [R_c - R_{e,c}]^+. NoEavesdropper: secrecy fields equal the
/// plain rates and the objective is the max-min rate. PrivateOnly: no common
/// secrecy rate.
RateReport evaluate(const cmat& precoder, const ChannelSet& channels, const Noise& noise,
                    SecrecyModel model);

/// Optimal value of the relaxed (unclamped) max-min objective for a fixed
/// precoder, i.e. max over R^s, R^s_{k,c}, R^s_{k,p} of R^s. Returns nullopt
/// when the common-stream decodability constraint R_{k,c} - R_{e,c} >= margin
/// fails (Secure model only).
std::optional<double> relaxed_objective(const cmat& precoder, const ChannelSet& channels,
                                        const Noise& noise, SecrecyModel model,
                                        double margin = 0.0);

} // namespace nfsec
