// SPDX-License-Identifier: Apache-2.0
#include "nfsec/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nfsec {

Noise noise_of(const SystemConfig& config) {
    Noise n;
    n.users.resize(static_cast<std::size_t>(config.num_users));
    for (int k = 0; k < config.num_users; ++k) n.users[static_cast<std::size_t>(k)] = config.noise_user(k);
    n.eve = config.noise_eve;
    return n;
}

PowerDecomposition received_powers(const cmat& precoder, const ChannelSet& channels,
                                   const Noise& noise) {
    const Eigen::Index N = channels.eve.size();
    const Eigen::Index K = channels.users.cols();
    if (precoder.rows() != N || precoder.cols() != K + 1) {
        throw std::invalid_argument("received_powers: precoder must be N x (K+1) = " +
                                    std::to_string(N) + " x " + std::to_string(K + 1));
    }
    if (static_cast<Eigen::Index>(noise.users.size()) != K) {
        throw std::invalid_argument("received_powers: one noise power per user required");
    }
    // gains(k, i) = |h_k^H p_i|^2
    const rmat gains = (channels.users.adjoint() * precoder).cwiseAbs2();
    const rvec eve = (channels.eve.adjoint() * precoder).cwiseAbs2().transpose();

    PowerDecomposition pd;
    pd.S_c.resize(K);
    pd.S_p.resize(K);
    pd.I_p.resize(K);
    pd.I_c.resize(K);
    pd.T_c.resize(K);
    pd.S_ek.resize(K);
    pd.I_ek.resize(K);
    const double eve_private_total = eve.tail(K).sum();
    for (Eigen::Index k = 0; k < K; ++k) {
        const double private_total = gains.row(k).tail(K).sum();
        pd.S_c[k] = gains(k, 0);
        pd.S_p[k] = gains(k, k + 1);
        pd.I_p[k] = private_total - gains(k, k + 1) + noise.users[static_cast<std::size_t>(k)];
        pd.I_c[k] = pd.S_p[k] + pd.I_p[k];
        pd.T_c[k] = pd.S_c[k] + pd.I_c[k];
        pd.S_ek[k] = eve[k + 1];
        pd.I_ek[k] = eve_private_total - eve[k + 1] + noise.eve;
    }
    pd.S_ec = eve[0];
    pd.I_ec = eve_private_total + noise.eve;
    pd.T_ec = pd.S_ec + pd.I_ec;
    return pd;
}

StreamRates stream_rates(const PowerDecomposition& pd) {
    const Eigen::Index K = pd.S_c.size();
    StreamRates r;
    r.common.resize(K);
    r.priv.resize(K);
    r.eve_private.resize(K);
    for (Eigen::Index k = 0; k < K; ++k) {
        r.common[k] = std::log2(1.0 + pd.S_c[k] / pd.I_c[k]);
        r.priv[k] = std::log2(1.0 + pd.S_p[k] / pd.I_p[k]);
        // The undecoded common stream jams private-stream eavesdropping.
        r.eve_private[k] = std::log2(1.0 + pd.S_ek[k] / (pd.I_ek[k] + pd.S_ec));
    }
    r.common_min = K > 0 ? r.common.minCoeff() : 0.0;
    r.eve_common = std::log2(1.0 + pd.S_ec / pd.I_ec);
    return r;
}

RateReport secrecy_report(const StreamRates& rates, const SecrecyAllocation& allocation) {
    const Eigen::Index K = rates.common.size();
    if (allocation.common.size() != K) {
        throw std::invalid_argument("secrecy_report: allocation needs one entry per user");
    }
    RateReport rep;
    rep.rates = rates;
    rep.secrecy_common = std::max(rates.common_min - rates.eve_common, 0.0);
    if ((allocation.common.array() < 0.0).any()) {
        throw std::invalid_argument("secrecy_report: violated R^s_{k,c} >= 0");
    }
    const double used = allocation.common.sum();
    if (used > rep.secrecy_common * (1.0 + 1e-12) + 1e-15) {
        throw std::invalid_argument(
            "secrecy_report: violated sum_k R^s_{k,c} <= R^s_c (allocated " + std::to_string(used) +
            ", available " + std::to_string(rep.secrecy_common) + ")");
    }
    rep.allocation = allocation;
    rep.secrecy_private = (rates.priv - rates.eve_private).cwiseMax(0.0);
    rep.secrecy_user = allocation.common + rep.secrecy_private;
    rep.objective = K > 0 ? rep.secrecy_user.minCoeff() : 0.0;
    rep.min_rate = K > 0 ? (rates.priv + max_min_allocation(rates.priv, rates.common_min)).minCoeff()
                         : 0.0;
    return rep;
}

rvec max_min_allocation(const rvec& base, double budget) {
    const Eigen::Index K = base.size();
    rvec share = rvec::Zero(K);
    if (K == 0 || !(budget > 0.0)) return share;
    std::vector<double> sorted(base.data(), base.data() + K);
    std::sort(sorted.begin(), sorted.end());
    // Find the water level: raise the lowest entries until the budget is spent.
    double level = sorted[0] + budget;
    double prefix = 0.0;
    for (Eigen::Index j = 0; j < K; ++j) {
        prefix += sorted[static_cast<std::size_t>(j)];
        const double candidate = (budget + prefix) / static_cast<double>(j + 1);
        const bool last = (j + 1 == K);
        if (last || candidate <= sorted[static_cast<std::size_t>(j + 1)]) {
            level = candidate;
            break;
        }
    }
    for (Eigen::Index k = 0; k < K; ++k) share[k] = std::max(level - base[k], 0.0);
    // Remove rounding drift so the shares never exceed the budget.
    const double total = share.sum();
    if (total > budget) share *= budget / total;
    return share;
}

RateReport evaluate(const cmat& precoder, const ChannelSet& channels, const Noise& noise,
                    SecrecyModel model) {
    const StreamRates rates = stream_rates(received_powers(precoder, channels, noise));
    SecrecyAllocation alloc;
    if (model == SecrecyModel::NoEavesdropper) {
        // Without an eavesdropper the secrecy quantities are the plain rates.
        alloc.common = max_min_allocation(rates.priv, rates.common_min);
        RateReport rep;
        rep.rates = rates;
        rep.secrecy_common = rates.common_min;
        rep.allocation = alloc;
        rep.secrecy_private = rates.priv;
        rep.secrecy_user = rates.priv + alloc.common;
        rep.objective = rep.secrecy_user.minCoeff();
        rep.min_rate = rep.objective;
        return rep;
    }
    const rvec clamped_private = (rates.priv - rates.eve_private).cwiseMax(0.0);
    const double budget = model == SecrecyModel::PrivateOnly
                              ? 0.0
                              : std::max(rates.common_min - rates.eve_common, 0.0);
    alloc.common = max_min_allocation(clamped_private, budget);
    return secrecy_report(rates, alloc);
}

std::optional<double> relaxed_objective(const cmat& precoder, const ChannelSet& channels,
                                        const Noise& noise, SecrecyModel model, double margin) {
    const StreamRates r = stream_rates(received_powers(precoder, channels, noise));
    switch (model) {
    case SecrecyModel::NoEavesdropper:
        return (r.priv + max_min_allocation(r.priv, r.common_min)).minCoeff();
    case SecrecyModel::PrivateOnly:
        return (r.priv - r.eve_private).minCoeff();
    case SecrecyModel::Secure: break;
    }
    const double budget = r.common_min - r.eve_common;
    if (budget < margin - 1e-12) return std::nullopt;
    const rvec base = r.priv - r.eve_private;
    return (base + max_min_allocation(base, std::max(budget, 0.0))).minCoeff();
}

} // namespace nfsec
