// SPDX-License-Identifier: Apache-2.0
#include "nfsec/hybrid_ao.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "nfsec/surrogates.hpp"

namespace nfsec {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool is_block_entry(int n, int l, int M) { return n / M == l; }

} // namespace

double analog_structure_error(const cmat& F, Architecture arch, int num_rf_chains) {
    double err = 0.0;
    if (arch == Architecture::FullyDigital) {
        return (F - cmat::Identity(F.rows(), F.cols())).cwiseAbs().maxCoeff();
    }
    const int M = static_cast<int>(F.rows()) / num_rf_chains;
    for (Eigen::Index n = 0; n < F.rows(); ++n) {
        for (Eigen::Index l = 0; l < F.cols(); ++l) {
            const cplx v = F(n, l);
            if (arch == Architecture::SubConnected && !is_block_entry(static_cast<int>(n), static_cast<int>(l), M)) {
                if (v != cplx(0.0, 0.0)) return std::numeric_limits<double>::infinity();
                continue;
            }
            err = std::max(err, std::abs(std::abs(v) - 1.0));
        }
    }
    return err;
}

std::string_view to_string(Block block) {
    switch (block) {
    case Block::Precoder: return "precoder";
    case Block::Digital: return "digital";
    case Block::Analog: return "analog";
    }
    return "unknown";
}

std::optional<double> penalized_objective(const cmat& precoder, const cmat& target, double rho,
                                          const ChannelSet& channels, const SystemConfig& config,
                                          SecrecyModel model) {
    const auto rate = relaxed_objective(precoder, channels, noise_of(config), model,
                                        config.common_rate_margin);
    if (!rate) return std::nullopt;
    const double w = penalty_weight(rho);
    return w == 0.0 ? *rate : *rate - w * (precoder - target).squaredNorm();
}

InnerResult inner_sca(const cmat& P_init, const ChannelSet& channels, const cmat& target,
                      double rho, const SystemConfig& config, SecrecyModel model, int max_iter) {
    const Noise noise = noise_of(config);
    const int limit = max_iter > 0 ? max_iter : config.max_inner;
    AssembleOptions opts;
    opts.model = model;
    opts.power_budget = config.power_budget;
    opts.common_rate_margin = config.common_rate_margin;
    opts.reduce_to_signal_subspace = config.subspace_reduction;
    SolverSettings settings;
    settings.gap_tol = config.tol.subproblem;
    settings.newton_tol = config.tol.newton;

    InnerResult res;
    res.precoder = P_init;
    const auto J0 = penalized_objective(P_init, target, rho, channels, config, model);
    res.objective = J0 ? *J0 : kNegInf;
    res.objectives.push_back(res.objective);

    for (int it = 0; it < limit; ++it) {
        const LegitSurrogate legit = build_legit_surrogate(res.precoder, channels, noise);
        const EavesAux aux = optimal_eaves_aux(res.precoder, channels, noise.eve);
        const ConvexProblem problem = assemble(legit, aux, channels, noise, target, rho, opts);
        const SubproblemSolution sol = solve(problem, settings);
        if (sol.status == SolveStatus::InfeasibleStart) {
            ++res.infeasible_starts;
            if (!J0 && it == 0) {
                // Nothing feasible to keep: zero precoder, zero rates.
                res.precoder = cmat::Zero(P_init.rows(), P_init.cols());
                const auto Jz = penalized_objective(res.precoder, target, rho, channels, config, model);
                res.objective = Jz ? *Jz : kNegInf;
                res.objectives.push_back(res.objective);
                res.fallback = true;
            }
            break;
        }
        if (sol.status == SolveStatus::Inexact) ++res.inexact_solves;
        const auto J = penalized_objective(sol.precoder, target, rho, channels, config, model);
        // Only improving iterates are taken, so the sequence is monotone
        // even when the subproblem is solved inexactly.
        if (!J || !(*J > res.objective)) break;
        const double increment = *J - res.objective;
        const bool first = !std::isfinite(res.objective);
        res.precoder = sol.precoder;
        res.objective = *J;
        res.objectives.push_back(*J);
        ++res.iterations;
        if (!first && increment <= config.tol.inner * std::max(std::abs(*J), 1.0)) break;
    }
    return res;
}

InnerResult inner_sca(const cmat& P_init, const ChannelSet& channels, const cmat& F,
                      const cmat& W, double rho, const SystemConfig& config, SecrecyModel model) {
    return inner_sca(P_init, channels, cmat(F * W), rho, config, model);
}

DigitalUpdate update_digital(const cmat& F, const cmat& P) {
    const cmat G = F.adjoint() * F;
    const cmat rhs = F.adjoint() * P;
    const Eigen::SelfAdjointEigenSolver<cmat> eig(G, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    DigitalUpdate out;
    if (lo > 0.0 && hi / lo <= 1e12) {
        out.W = G.ldlt().solve(rhs);
        return out;
    }
    const double L = static_cast<double>(G.rows());
    const double eps = 1e-10 * G.trace().real() / L;
    out.W = (G + eps * cmat::Identity(G.rows(), G.cols())).ldlt().solve(rhs);
    out.regularized = true;
    return out;
}

cmat update_analog_fc(const cmat& F_prev, const cmat& W, const cmat& P) {
    cmat F = F_prev;
    const cmat Y = W * W.adjoint();
    const cmat Z = P * W.adjoint();
    cmat X = F * Y;
    for (Eigen::Index n = 0; n < F.rows(); ++n) {
        for (Eigen::Index l = 0; l < F.cols(); ++l) {
            const cplx chi = Z(n, l) - X(n, l) + F(n, l) * Y(l, l);
            if (chi == cplx(0.0, 0.0)) continue;
            const cplx next = std::polar(1.0, std::arg(chi));
            const cplx delta = next - F(n, l);
            F(n, l) = next;
            X.row(n) += delta * Y.row(l);
        }
    }
    return F;
}

cmat update_analog_sc(const cmat& F_prev, const cmat& W, const cmat& P, int num_rf_chains) {
    const Eigen::Index N = P.rows();
    const Eigen::Index L = num_rf_chains;
    if (L <= 0 || N % L != 0) throw std::invalid_argument("update_analog_sc: N must be a multiple of L");
    const Eigen::Index M = N / L;
    cmat F = cmat::Zero(N, L);
    for (Eigen::Index l = 0; l < L; ++l) {
        const cvec corr = P.middleRows(l * M, M) * W.row(l).adjoint();
        for (Eigen::Index m = 0; m < M; ++m) {
            const Eigen::Index n = l * M + m;
            F(n, l) = corr[m] == cplx(0.0, 0.0) ? F_prev(n, l) : std::polar(1.0, std::arg(corr[m]));
        }
    }
    return F;
}

cmat random_analog(std::uint64_t seed, const SystemConfig& config) {
    const int N = config.num_antennas;
    if (config.architecture == Architecture::FullyDigital) return cmat::Identity(N, N);
    const int L = config.num_rf_chains;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> phase(-kPi, kPi);
    cmat F = cmat::Zero(N, L);
    if (config.architecture == Architecture::FullyConnected) {
        for (int n = 0; n < N; ++n)
            for (int l = 0; l < L; ++l) F(n, l) = std::polar(1.0, phase(rng));
    } else {
        const int M = config.subarray_size();
        for (int n = 0; n < N; ++n) F(n, n / M) = std::polar(1.0, phase(rng));
    }
    return F;
}

cmat initial_precoder(const ChannelSet& channels, const SystemConfig& config, SecrecyModel model) {
    const int N = channels.num_antennas();
    const int K = channels.num_users();
    const double Pth = config.power_budget;
    cmat P = cmat::Zero(N, K + 1);
    for (int k = 0; k < K; ++k) {
        const cvec h = channels.users.col(k);
        P.col(k + 1) = std::sqrt(Pth / (2.0 * K)) * h / h.norm();
    }
    if (model != SecrecyModel::PrivateOnly) {
        cvec c = cvec::Zero(N);
        for (int k = 0; k < K; ++k) c += channels.users.col(k) / channels.users.col(k).norm();
        if (model == SecrecyModel::Secure) {
            const cvec g = channels.eve / channels.eve.norm();
            c -= g * g.dot(c);
        }
        if (c.norm() > 0.0) P.col(0) = std::sqrt(Pth / 2.0) * c / c.norm();
    }
    const double power = P.squaredNorm();
    if (power > 0.0) P *= std::sqrt(0.999 * Pth / power);
    return P;
}

namespace {

double objective_or_neg_inf(const std::optional<double>& v) { return v ? *v : kNegInf; }

cmat into_power_ball(cmat P, double budget) {
    const double power = P.squaredNorm();
    if (power > budget && power > 0.0) P *= std::sqrt(budget / power);
    return P;
}

} // namespace

OptimizeResult optimize(const SystemConfig& config, const ChannelSet& channels,
                        const OptimizeOptions& options) {
    validate(config);
    const SecrecyModel model = options.model;
    const Noise noise = noise_of(config);
    const double rho0 = config.penalty_init;
    const double rho_floor = 1e-6 * rho0;
    const int inner_limit = config.single_step_inner ? 1 : config.max_inner;

    OptimizeResult out;
    OptimizerTrace& trace = out.trace;
    HybridBeamformer& bf = out.beamformer;
    bf.architecture = config.architecture;
    cmat P = initial_precoder(channels, config, model);

    const auto record_inner = [&](const InnerResult& r) {
        trace.inner_starts.push_back(trace.inner_objectives.size());
        trace.inner_objectives.insert(trace.inner_objectives.end(), r.objectives.begin(), r.objectives.end());
        trace.inner_iterations += r.iterations;
        trace.infeasible_starts += r.infeasible_starts;
        trace.inexact_solves += r.inexact_solves;
        if (r.fallback) trace.flags.emplace_back("subproblem infeasible: zero-rate fallback");
    };

    if (config.architecture == Architecture::FullyDigital) {
        const double inf = std::numeric_limits<double>::infinity();
        const InnerResult r = inner_sca(P, channels, P, inf, config, model, config.max_inner);
        record_inner(r);
        P = r.precoder;
        bf.F = cmat::Identity(P.rows(), P.rows());
        bf.W = P;
        OuterRecord rec;
        rec.outer_iter = 1;
        rec.rho = inf;
        rec.violation = (P - bf.F * bf.W).squaredNorm();
        rec.objective = objective_or_neg_inf(relaxed_objective(P, channels, noise, model, config.common_rate_margin));
        rec.hybrid_objective = evaluate(P, channels, noise, model).objective;
        rec.cycles = 1;
        trace.outer.push_back(rec);
        trace.outer_iterations = 1;
    } else {
        bf.F = random_analog(options.seed, config);
        {
            const DigitalUpdate d = update_digital(bf.F, P);
            bf.W = d.W;
            trace.digital_regularized |= d.regularized;
        }
        double rho = rho0;
        trace.penalty_closed = false;
        for (int outer = 1; outer <= config.max_outer; ++outer) {
            int cycles = 0;
            for (int cycle = 1; cycle <= config.max_cycles; ++cycle) {
                ++cycles;
                const cmat FW = bf.F * bf.W;
                const double start = objective_or_neg_inf(penalized_objective(P, FW, rho, channels, config, model));

                const InnerResult r = inner_sca(P, channels, FW, rho, config, model, inner_limit);
                record_inner(r);
                P = r.precoder;
                const double after_p = objective_or_neg_inf(penalized_objective(P, FW, rho, channels, config, model));
                trace.blocks.push_back({outer, cycle, Block::Precoder, start, after_p});

                const DigitalUpdate d = update_digital(bf.F, P);
                trace.digital_regularized |= d.regularized;
                bf.W = d.W;
                const double after_w = objective_or_neg_inf(penalized_objective(P, bf.F * bf.W, rho, channels, config, model));
                trace.blocks.push_back({outer, cycle, Block::Digital, after_p, after_w});

                bf.F = config.architecture == Architecture::FullyConnected
                           ? update_analog_fc(bf.F, bf.W, P)
                           : update_analog_sc(bf.F, bf.W, P, config.num_rf_chains);
                const double after_f = objective_or_neg_inf(penalized_objective(P, bf.F * bf.W, rho, channels, config, model));
                trace.blocks.push_back({outer, cycle, Block::Analog, after_w, after_f});

                if (std::isfinite(start) &&
                    std::abs(after_f - start) < config.tol.outer * std::max(std::abs(start), 1.0)) {
                    break;
                }
            }
            const cmat FW = bf.F * bf.W;
            OuterRecord rec;
            rec.outer_iter = outer;
            rec.rho = rho;
            rec.violation = (P - FW).squaredNorm();
            rec.objective = objective_or_neg_inf(relaxed_objective(P, channels, noise, model, config.common_rate_margin));
            rec.hybrid_objective = evaluate(into_power_ball(FW, config.power_budget), channels, noise, model).objective;
            rec.cycles = cycles;
            trace.outer.push_back(rec);
            trace.outer_iterations = outer;
            if (rec.violation < config.violation_tol()) {
                trace.penalty_closed = true;
                break;
            }
            rho = std::max(config.penalty_factor * rho, rho_floor);
        }
        if (!trace.penalty_closed) trace.flags.emplace_back("penalty not closed");
    }
    if (trace.digital_regularized) trace.flags.emplace_back("digital update regularized");

    out.precoder = P;
    out.effective = into_power_ball(bf.F * bf.W, config.power_budget);
    out.report = evaluate(out.effective, channels, noise, model);
    return out;
}

} // namespace nfsec
