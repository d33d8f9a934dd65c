// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nfsec/channel.hpp"
#include "nfsec/convex_subproblem.hpp"
#include "nfsec/rates.hpp"
#include "nfsec/types.hpp"

namespace nfsec {

struct HybridBeamformer {
    cmat F; // N x L analog network
    cmat W; // L x (K+1) digital precoder
    Architecture architecture = Architecture::FullyConnected;

    cmat effective() const { return F * W; }
};

/// Max unit-modulus deviation over the entries the architecture allows to be
/// nonzero, or +inf if a structural zero is not exactly zero.
double analog_structure_error(const cmat& F, Architecture arch, int num_rf_chains);

enum class Block { Precoder, Digital, Analog };

std::string_view to_string(Block block);

/// Penalized objective before and after one block update of a cycle.
struct BlockStep {
    int outer = 0;
    int cycle = 0;
    Block block = Block::Precoder;
    double before = 0.0;
    double after = 0.0;
};

struct OuterRecord {
    int outer_iter = 0; // 1-based
    double rho = 0.0;
    double violation = 0.0;        // ||P - FW||_F^2 after the stage
    double objective = 0.0;        // relaxed R^s at P
    double hybrid_objective = 0.0; // evaluated secrecy objective at FW
    int cycles = 0;
};

struct OptimizerTrace {
    std::vector<OuterRecord> outer;
    std::vector<BlockStep> blocks;
    // Penalized objective after every accepted SCA step, all stages in order.
    std::vector<double> inner_objectives;
    // Index into inner_objectives where each inner_sca call starts.
    std::vector<std::size_t> inner_starts;
    int inner_iterations = 0;
    int outer_iterations = 0;
    int infeasible_starts = 0;
    int inexact_solves = 0;
    bool digital_regularized = false;
    bool penalty_closed = true;
    std::vector<std::string> flags;

    bool flagged() const { return !flags.empty(); }
};

/// R^s(P) - penalty_weight(rho) ||P - target||_F^2, with R^s the
/// relaxed objective.
/// nullopt when P violates the common-stream decodability constraint.
std::optional<double> penalized_objective(const cmat& precoder, const cmat& target, double rho,
                                          const ChannelSet& channels, const SystemConfig& config,
                                          SecrecyModel model);

struct InnerResult {
    cmat precoder;
    double objective = 0.0; // penalized
    std::vector<double> objectives;
    int iterations = 0;
    int infeasible_starts = 0;
    int inexact_solves = 0;
    bool fallback = false; // zero-rate fallback used
};

/// SCA on the precoder block for a fixed target FW and penalty factor.
/// `max_iter` overrides config.max_inner when positive.
InnerResult inner_sca(const cmat& P_init, const ChannelSet& channels, const cmat& target,
                      double rho, const SystemConfig& config,
                      SecrecyModel model = SecrecyModel::Secure, int max_iter = 0);

InnerResult inner_sca(const cmat& P_init, const ChannelSet& channels, const cmat& F,
                      const cmat& W, double rho, const SystemConfig& config,
                      SecrecyModel model = SecrecyModel::Secure);

struct DigitalUpdate {
    cmat W;
    bool regularized = false;
};

/// Least-squares W = (F^H F)^{-1} F^H P.
DigitalUpdate update_digital(const cmat& F, const cmat& P);

/// One row-major element sweep of the fully-connected phase update.
cmat update_analog_fc(const cmat& F_prev, const cmat& W, const cmat& P);

/// Block-wise closed form for the sub-connected network. Entries whose
/// correlation is exactly zero keep the phase of F_prev.
cmat update_analog_sc(const cmat& F_prev, const cmat& W, const cmat& P, int num_rf_chains);

cmat random_analog(std::uint64_t seed, const SystemConfig& config);

/// Warm start in the power ball; the common column avoids the eavesdropper
/// direction so the common stream starts decodable by every user before
/// the eavesdropper. Zero common column for the private-only model.
cmat initial_precoder(const ChannelSet& channels, const SystemConfig& config,
                      SecrecyModel model = SecrecyModel::Secure);

struct OptimizeResult {
    HybridBeamformer beamformer;
    cmat precoder;     // auxiliary fully digital P
    cmat effective;    // FW, rescaled into the power ball if needed
    RateReport report; // evaluated on `effective`
    OptimizerTrace trace;
};

struct OptimizeOptions {
    SecrecyModel model = SecrecyModel::Secure;
    std::uint64_t seed = 0; // analog initialization
};

OptimizeResult optimize(const SystemConfig& config, const ChannelSet& channels,
                        const OptimizeOptions& options = {});

} // namespace nfsec
