// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "nfsec/channel.hpp"
#include "nfsec/hybrid_ao.hpp"
#include "nfsec/rates.hpp"

namespace nfsec {

/// Every design compared by the experiment harness: the two proposed hybrid
/// architectures and the four benchmarks.
enum class Scheme { RSMA_FC, RSMA_SC, RSMA_FD, RSMA_Comm, SDMA_FC, RSMA_FC_Far };

enum class BaselineKind { RSMA_FD, RSMA_Comm, SDMA_FC, RSMA_FC_Far };

std::string_view to_string(Scheme scheme);
/// Accepts the display names ("RSMA-FC", ...) case-insensitively; '_' may
/// replace '-'.
Scheme parse_scheme(std::string_view name);
const std::vector<Scheme>& all_schemes();

Scheme scheme_of(BaselineKind kind);

struct SchemeOptions {
    std::uint64_t seed = 0; // analog initialization
    // Far-field design evaluated on the true near-field channels (default) or
    // on the far-field model it was designed for.
    bool far_field_evaluate_on_truth = true;
};

struct SchemeResult {
    Scheme scheme = Scheme::RSMA_FC;
    OptimizeResult run;
    // Report on the evaluation channels. For RSMA-Comm the objective is the
    // max-min rate; every other scheme reports the max-min secrecy rate.
    RateReport report;
    ChannelSet design_channels;
};

/// Runs one scheme on a scenario. `config.architecture` is overridden by the
/// scheme (RSMA-SC requires N divisible by L).
SchemeResult run_scheme(Scheme scheme, const SystemConfig& config, const ChannelSet& channels,
                        const SchemeOptions& options = {});

SchemeResult run_baseline(BaselineKind kind, const SystemConfig& config,
                          const ChannelSet& channels, const SchemeOptions& options = {});

/// Same node positions and gains, plane-wave array responses.
ChannelSet far_field_counterpart(const ChannelSet& channels, const SystemConfig& config);

} // namespace nfsec
