// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "nfsec/channel.hpp"
#include "nfsec/concave_function.hpp"
#include "nfsec/rates.hpp"
#include "nfsec/surrogates.hpp"
#include "nfsec/types.hpp"

namespace nfsec {

enum class ConstraintKind {
    PowerBudget,        // ||P||_F^2 <= P_th
    CommonDecodable,    // f_{k,c} + f_{e,c} >= margin
    PrivateSecrecy,     // R^s_{k,p} <= f_{k,p} + f_{e,k}
    CommonAllocation,   // sum_j R^s_{j,c} <= f_{k,c} + f_{e,c}
    AllocationNonneg,   // R^s_{k,c} >= 0
    MinSecrecy,         // R^s <= R^s_{k,c} + R^s_{k,p}
    EavesEpigraph,      // u <= quadratic log argument
};

std::string_view to_string(ConstraintKind kind);

struct ConstraintLabel {
    ConstraintKind kind;
    int user = -1; // -1 for constraints not tied to a user
};

/// Positions of each variable group inside the real decision vector.
struct VariableLayout {
    std::vector<Eigen::Index> column_offset;
    std::vector<Eigen::Index> column_dim; // complex coordinates per column
    Eigen::Index precoder_size = 0;       // lifted reals
    Eigen::Index min_secrecy = -1;        // R^s
    Eigen::Index common_alloc = -1;       // R^s_{k,c}, K entries
    Eigen::Index private_secrecy = -1;    // R^s_{k,p}, K entries
    Eigen::Index epi_common = -1;         // u_c
    Eigen::Index epi_private = -1;        // u_k, K entries
    Eigen::Index size = 0;
};

struct AssembleOptions {
    SecrecyModel model = SecrecyModel::Secure;
    double power_budget = 0.0;
    double common_rate_margin = 0.0;
    // Restrict each precoder column to span{h_1..h_K, g_e, target column}.
    // No optimality is lost: the objective and constraints see a column only
    // through its projections onto those vectors and through its norm.
    bool reduce_to_signal_subspace = true;
};

/// Powers inside the penalty term are measured in milliwatts, so that rho is
/// dimensionless and the default rho0 = 100 means 1/100 per mW.
inline constexpr double kPenaltyReferencePower = 1e-3; // W

/// Weight of ||P - FW||_F^2 (in W) in the penalized objective:
/// 1 / (rho * 1 mW), or 0 for rho = +infinity.
double penalty_weight(double rho);

/// The convex precoder subproblem for fixed surrogates and auxiliaries:
///
///   max  R^s - penalty_weight(rho) ||P - FW||_F^2
///
/// over P, R^s, R^s_{k,c}, R^s_{k,p} and epigraph variables u, where every
/// log2(quadratic) eavesdropper term is split into log2(u) and u <= quadratic.
struct ConvexProblem {
    int num_antennas = 0;
    int num_users = 0;
    SecrecyModel model = SecrecyModel::Secure;
    double penalty_weight = 0.0;
    double power_budget = 0.0;
    double common_rate_margin = 0.0;
    bool full_lift = true;
    std::vector<cmat> bases; // per column, N x column_dim (unused when full_lift)
    VariableLayout layout;
    ConcaveFunction objective;
    std::vector<ConcaveFunction> constraints;
    std::vector<ConstraintLabel> labels;

    LegitSurrogate legit;
    EavesAux aux;
    cmat target; // FW
    ChannelSet channels;
    Noise noise;

    Eigen::Index num_variables() const { return layout.size; }
    /// Projects a precoder onto the variable space (exact for a full lift).
    rvec lift(const cmat& precoder) const;
    cmat unlift(const rvec& z) const;
};

/// rho must be positive; rho = +infinity drops the penalty term.
ConvexProblem assemble(const LegitSurrogate& legit, const EavesAux& aux,
                       const ChannelSet& channels, const Noise& noise, const cmat& target,
                       double rho, const AssembleOptions& options);

ConvexProblem assemble(const LegitSurrogate& legit, const EavesAux& aux,
                       const ChannelSet& channels, const cmat& F, const cmat& W, double rho,
                       const SystemConfig& config,
                       SecrecyModel model = SecrecyModel::Secure);

/// Constraint values g_i(z); the point is feasible when all are >= 0.
rvec constraint_values(const ConvexProblem& problem, const rvec& z);
bool strictly_feasible(const ConvexProblem& problem, const rvec& z);

/// Completes the scalar variables for a given precoder block so that every
/// constraint holds strictly, if possible for that precoder.
std::optional<rvec> complete_point(const ConvexProblem& problem, const rvec& precoder_part);

/// Strictly feasible start obtained by shrinking the expansion point by 2^-i,
/// i = 0..40. nullopt when none of them works.
std::optional<rvec> feasible_start(const ConvexProblem& problem);

enum class SolveStatus { Optimal, Inexact, InfeasibleStart };

std::string_view to_string(SolveStatus status);

struct SolverSettings {
    double gap_tol = 1e-6;     // stop when m/t <= gap_tol
    double newton_tol = 1e-8;  // KKT residual target at the last stage
    double t0 = 1.0;
    double mu = 10.0;
    double alpha = 0.3;        // Armijo parameter
    double beta = 0.5;         // backtracking factor
    int max_newton_per_stage = 200;
    double max_regularization = 1e-3;
};

struct SubproblemSolution {
    SolveStatus status = SolveStatus::InfeasibleStart;
    cmat precoder;
    double min_secrecy = 0.0;
    rvec common_alloc;
    rvec private_secrecy;
    rvec z;
    double objective = 0.0;
    // ||grad L|| / (||grad obj|| + sum_i ||lambda_i grad g_i||), lambda_i = 1/(t g_i)
    double kkt_residual = 0.0;
    double stationarity = 0.0; // unscaled ||grad L||
    int newton_iterations = 0;
    int barrier_stages = 0;
    rvec slacks;
    std::vector<double> stage_objectives;
};

SubproblemSolution solve(const ConvexProblem& problem, const SolverSettings& settings = {});
SubproblemSolution solve(const ConvexProblem& problem, const rvec& start,
                         const SolverSettings& settings = {});

} // namespace nfsec
