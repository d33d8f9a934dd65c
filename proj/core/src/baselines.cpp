// SPDX-License-Identifier: Apache-2.0
#include "nfsec/baselines.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

namespace nfsec {

std::string_view to_string(Scheme scheme) {
    switch (scheme) {
    case Scheme::RSMA_FC: return "RSMA-FC";
    case Scheme::RSMA_SC: return "RSMA-SC";
    case Scheme::RSMA_FD: return "RSMA-FD";
    case Scheme::RSMA_Comm: return "RSMA-Comm";
    case Scheme::SDMA_FC: return "SDMA-FC";
    case Scheme::RSMA_FC_Far: return "RSMA-FC-far";
    }
    return "unknown";
}

const std::vector<Scheme>& all_schemes() {
    static const std::vector<Scheme> schemes{Scheme::RSMA_FC,   Scheme::RSMA_SC, Scheme::RSMA_FD,
                                             Scheme::RSMA_Comm, Scheme::SDMA_FC, Scheme::RSMA_FC_Far};
    return schemes;
}

namespace {

std::string canonical(std::string_view name) {
    std::string out;
    for (char ch : name) {
        if (ch == '_') ch = '-';
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    return out;
}

} // namespace

Scheme parse_scheme(std::string_view name) {
    const std::string key = canonical(name);
    for (Scheme s : all_schemes()) {
        if (canonical(to_string(s)) == key) return s;
    }
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

Scheme scheme_of(BaselineKind kind) {
    switch (kind) {
    case BaselineKind::RSMA_FD: return Scheme::RSMA_FD;
    case BaselineKind::RSMA_Comm: return Scheme::RSMA_Comm;
    case BaselineKind::SDMA_FC: return Scheme::SDMA_FC;
    case BaselineKind::RSMA_FC_Far: return Scheme::RSMA_FC_Far;
    }
    throw std::invalid_argument("unknown baseline kind");
}

ChannelSet far_field_counterpart(const ChannelSet& channels, const SystemConfig& config) {
    return build_channels(channels.user_polar, channels.eve_polar, config, ChannelModel::FarField);
}

SchemeResult run_scheme(Scheme scheme, const SystemConfig& config, const ChannelSet& channels,
                        const SchemeOptions& options) {
    SystemConfig cfg = config;
    OptimizeOptions opt;
    opt.seed = options.seed;
    SecrecyModel eval_model = SecrecyModel::Secure;
    SchemeResult out;
    out.scheme = scheme;
    out.design_channels = channels;
    const ChannelSet* eval_channels = &channels;

    switch (scheme) {
    case Scheme::RSMA_FC: cfg.architecture = Architecture::FullyConnected; break;
    case Scheme::RSMA_SC: cfg.architecture = Architecture::SubConnected; break;
    case Scheme::RSMA_FD:
        cfg.architecture = Architecture::FullyDigital;
        cfg.num_rf_chains = cfg.num_antennas;
        break;
    case Scheme::RSMA_Comm:
        cfg.architecture = Architecture::FullyConnected;
        opt.model = SecrecyModel::NoEavesdropper;
        eval_model = SecrecyModel::NoEavesdropper;
        break;
    case Scheme::SDMA_FC:
        cfg.architecture = Architecture::FullyConnected;
        opt.model = SecrecyModel::PrivateOnly;
        eval_model = SecrecyModel::PrivateOnly;
        break;
    case Scheme::RSMA_FC_Far:
        cfg.architecture = Architecture::FullyConnected;
        out.design_channels = far_field_counterpart(channels, cfg);
        if (!options.far_field_evaluate_on_truth) eval_channels = &out.design_channels;
        break;
    }

    out.run = optimize(cfg, out.design_channels, opt);
    out.report = evaluate(out.run.effective, *eval_channels, noise_of(cfg), eval_model);
    return out;
}

SchemeResult run_baseline(BaselineKind kind, const SystemConfig& config,
                          const ChannelSet& channels, const SchemeOptions& options) {
    return run_scheme(scheme_of(kind), config, channels, options);
}

} // namespace nfsec
