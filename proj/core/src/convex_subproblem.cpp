// SPDX-License-Identifier: Apache-2.0
#include "nfsec/convex_subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nfsec {

std::string_view to_string(ConstraintKind kind) {
    switch (kind) {
    case ConstraintKind::PowerBudget: return "power_budget";
    case ConstraintKind::CommonDecodable: return "common_decodable";
    case ConstraintKind::PrivateSecrecy: return "private_secrecy";
    case ConstraintKind::CommonAllocation: return "common_allocation";
    case ConstraintKind::AllocationNonneg: return "allocation_nonneg";
    case ConstraintKind::MinSecrecy: return "min_secrecy";
    case ConstraintKind::EavesEpigraph: return "eaves_epigraph";
    }
    return "unknown";
}

std::string_view to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Inexact: return "inexact";
    case SolveStatus::InfeasibleStart: return "infeasible_start";
    }
    return "unknown";
}

double penalty_weight(double rho) {
    if (std::isinf(rho)) return 0.0;
    return 1.0 / (rho * kPenaltyReferencePower);
}

rvec ConvexProblem::lift(const cmat& precoder) const {
    rvec z = rvec::Zero(layout.precoder_size);
    for (std::size_t i = 0; i < layout.column_dim.size(); ++i) {
        const Eigen::Index d = layout.column_dim[i];
        if (d == 0) continue;
        const Eigen::Index col = static_cast<Eigen::Index>(i);
        const cvec c = full_lift ? cvec(precoder.col(col)) : cvec(bases[i].adjoint() * precoder.col(col));
        z.segment(layout.column_offset[i], d) = c.real();
        z.segment(layout.column_offset[i] + d, d) = c.imag();
    }
    return z;
}

cmat ConvexProblem::unlift(const rvec& z) const {
    cmat P = cmat::Zero(num_antennas, num_users + 1);
    for (std::size_t i = 0; i < layout.column_dim.size(); ++i) {
        const Eigen::Index d = layout.column_dim[i];
        if (d == 0) continue;
        cvec c(d);
        c.real() = z.segment(layout.column_offset[i], d);
        c.imag() = z.segment(layout.column_offset[i] + d, d);
        P.col(static_cast<Eigen::Index>(i)) = full_lift ? c : cvec(bases[i] * c);
    }
    return P;
}

namespace {

cmat orthonormal_basis(const std::vector<cvec>& vectors, Eigen::Index n) {
    std::vector<cvec> kept;
    for (const auto& v : vectors) {
        const double norm = v.norm();
        if (norm > 0.0 && std::isfinite(norm)) kept.push_back(v / norm);
    }
    if (kept.empty()) return cmat(n, 0);
    cmat M(n, static_cast<Eigen::Index>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j) M.col(static_cast<Eigen::Index>(j)) = kept[j];
    Eigen::ColPivHouseholderQR<cmat> qr(M);
    qr.setThreshold(1e-10);
    const Eigen::Index rank = qr.rank();
    cmat Q = qr.householderQ();
    return Q.leftCols(rank);
}

} // namespace

ConvexProblem assemble(const LegitSurrogate& legit, const EavesAux& aux,
                       const ChannelSet& channels, const Noise& noise, const cmat& target,
                       double rho, const AssembleOptions& options) {
    if (!(rho > 0.0)) throw std::invalid_argument("assemble: penalty factor rho must be positive");
    const int N = channels.num_antennas();
    const int K = channels.num_users();
    if (target.rows() != N || target.cols() != K + 1) {
        throw std::invalid_argument("assemble: target FW must be N x (K+1)");
    }
    const SecrecyModel model = options.model;
    const bool eve_terms = model != SecrecyModel::NoEavesdropper;
    const bool has_common = model != SecrecyModel::PrivateOnly;

    ConvexProblem pr;
    pr.num_antennas = N;
    pr.num_users = K;
    pr.model = model;
    pr.penalty_weight = penalty_weight(rho);
    pr.power_budget = options.power_budget;
    pr.common_rate_margin = options.common_rate_margin;
    pr.full_lift = !options.reduce_to_signal_subspace;
    pr.legit = legit;
    pr.aux = aux;
    pr.target = target;
    pr.channels = channels;
    pr.noise = noise;

    auto& L = pr.layout;
    Eigen::Index offset = 0;
    for (int i = 0; i <= K; ++i) {
        const bool pinned = (i == 0 && !has_common);
        Eigen::Index dim = 0;
        if (!pinned) {
            if (pr.full_lift) {
                dim = N;
            } else {
                std::vector<cvec> span;
                for (int k = 0; k < K; ++k) span.emplace_back(channels.users.col(k));
                if (eve_terms) span.push_back(channels.eve);
                if (pr.penalty_weight > 0.0) span.emplace_back(target.col(i));
                pr.bases.push_back(orthonormal_basis(span, N));
                dim = pr.bases.back().cols();
            }
        }
        if (!pr.full_lift && pinned) pr.bases.emplace_back(N, 0);
        L.column_offset.push_back(offset);
        L.column_dim.push_back(dim);
        offset += 2 * dim;
    }
    L.precoder_size = offset;
    L.min_secrecy = offset++;
    if (has_common) {
        L.common_alloc = offset;
        offset += K;
    }
    L.private_secrecy = offset;
    offset += K;
    if (model == SecrecyModel::Secure) L.epi_common = offset++;
    if (eve_terms) {
        L.epi_private = offset;
        offset += K;
    }
    L.size = offset;
    const Eigen::Index n = L.size;

    const auto reduce = [&](int col, const cvec& d) -> cvec {
        return pr.full_lift ? d : cvec(pr.bases[static_cast<std::size_t>(col)].adjoint() * d);
    };
    const auto dim_of = [&](int col) { return L.column_dim[static_cast<std::size_t>(col)]; };
    const auto off_of = [&](int col) { return L.column_offset[static_cast<std::size_t>(col)]; };
    const auto add_abs2 = [&](ConcaveFunction& f, int col, const cvec& d, double w) {
        if (dim_of(col) > 0) f.add_abs2(off_of(col), reduce(col, d), w);
    };
    const auto add_inner = [&](ConcaveFunction& f, int col, const cvec& a, double scale) {
        if (dim_of(col) > 0) f.add_real_inner(off_of(col), reduce(col, a), scale);
    };

    // Each legitimate surrogate is assembled in its mean-square-error form
    //   -(|conj(u) h^H p_s - 1|^2 + |u|^2 sum_{i != s} |h^H p_i|^2 + |u|^2 sigma^2) / (v ln 2)
    //   - log2 v + 1 / ln 2,
    // algebraically equal to the expanded quadratic but free of the large
    // cancelling terms that otherwise limit the barrier slack accuracy.
    const auto add_legit = [&](ConcaveFunction& f, const LegitTerm& term, double sigma2) {
        const double scale = 1.0 / (term.v * kLn2);
        for (int i = term.first_interferer; i <= K; ++i) {
            if (i != term.desired) add_abs2(f, i, term.h, -term.weight);
        }
        const cvec d = term.u * term.h;
        if (dim_of(term.desired) > 0) {
            f.add_abs2(off_of(term.desired), reduce(term.desired, d), -scale, cplx(1.0, 0.0));
        } else {
            f.add_constant(-scale);
        }
        f.add_constant(-scale * std::norm(term.u) * sigma2 - std::log2(term.v) + 1.0 / kLn2);
    };
    const double sigma_e = noise.eve;
    const double noise_entry = aux.noise_scale * channels.eve.squaredNorm();
    const auto add_eaves_arg = [&](ConcaveFunction& f, const cvec& x, int replaced) {
        const double xx = x.squaredNorm();
        for (int i = 0; i <= K; ++i) {
            add_abs2(f, i, channels.eve, -xx);
            if (i != replaced) add_inner(f, i, std::conj(x[i]) * channels.eve, 1.0);
        }
        f.add_constant(2.0 * noise_entry * x[replaced].real() - xx * sigma_e);
    };

    // objective: R^s - (1/rho) ||P - FW||^2
    pr.objective = ConcaveFunction(n);
    pr.objective.add_linear(L.min_secrecy, 1.0);
    if (pr.penalty_weight > 0.0) {
        pr.objective.add_norm(L.precoder_size, -pr.penalty_weight, pr.lift(target));
    }

    const auto push = [&](ConcaveFunction f, ConstraintKind kind, int user) {
        pr.constraints.push_back(std::move(f));
        pr.labels.push_back({kind, user});
    };

    {
        ConcaveFunction f(n);
        f.add_constant(options.power_budget);
        f.add_norm(L.precoder_size, -1.0);
        push(std::move(f), ConstraintKind::PowerBudget, -1);
    }
    for (int k = 0; k < K; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        if (model == SecrecyModel::Secure) {
            ConcaveFunction f(n);
            add_legit(f, legit.common[ku], noise.users[ku]);
            f.add_log2(L.epi_common, 1.0);
            f.add_constant(-options.common_rate_margin);
            push(std::move(f), ConstraintKind::CommonDecodable, k);
        }
        {
            ConcaveFunction f(n);
            add_legit(f, legit.priv[ku], noise.users[ku]);
            if (eve_terms) f.add_log2(L.epi_private + k, 1.0);
            f.add_linear(L.private_secrecy + k, -1.0);
            push(std::move(f), ConstraintKind::PrivateSecrecy, k);
        }
        if (has_common) {
            ConcaveFunction f(n);
            add_legit(f, legit.common[ku], noise.users[ku]);
            if (model == SecrecyModel::Secure) f.add_log2(L.epi_common, 1.0);
            for (int j = 0; j < K; ++j) f.add_linear(L.common_alloc + j, -1.0);
            push(std::move(f), ConstraintKind::CommonAllocation, k);

            ConcaveFunction g(n);
            g.add_linear(L.common_alloc + k, 1.0);
            push(std::move(g), ConstraintKind::AllocationNonneg, k);
        }
        {
            ConcaveFunction f(n);
            if (has_common) f.add_linear(L.common_alloc + k, 1.0);
            f.add_linear(L.private_secrecy + k, 1.0);
            f.add_linear(L.min_secrecy, -1.0);
            push(std::move(f), ConstraintKind::MinSecrecy, k);
        }
    }
    if (model == SecrecyModel::Secure) {
        ConcaveFunction f(n);
        add_eaves_arg(f, aux.common, 0);
        f.add_linear(L.epi_common, -1.0);
        push(std::move(f), ConstraintKind::EavesEpigraph, -1);
    }
    if (eve_terms) {
        for (int k = 0; k < K; ++k) {
            ConcaveFunction f(n);
            add_eaves_arg(f, aux.priv.at(static_cast<std::size_t>(k)), k + 1);
            f.add_linear(L.epi_private + k, -1.0);
            push(std::move(f), ConstraintKind::EavesEpigraph, k);
        }
    }
    return pr;
}

ConvexProblem assemble(const LegitSurrogate& legit, const EavesAux& aux,
                       const ChannelSet& channels, const cmat& F, const cmat& W, double rho,
                       const SystemConfig& config, SecrecyModel model) {
    AssembleOptions opts;
    opts.model = model;
    opts.power_budget = config.power_budget;
    opts.common_rate_margin = config.common_rate_margin;
    opts.reduce_to_signal_subspace = config.subspace_reduction;
    return assemble(legit, aux, channels, noise_of(config), F * W, rho, opts);
}

rvec constraint_values(const ConvexProblem& problem, const rvec& z) {
    rvec g(static_cast<Eigen::Index>(problem.constraints.size()));
    for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
        const auto& c = problem.constraints[i];
        g[static_cast<Eigen::Index>(i)] =
            c.in_domain(z) ? c.value(z) : -std::numeric_limits<double>::infinity();
    }
    return g;
}

bool strictly_feasible(const ConvexProblem& problem, const rvec& z) {
    for (const auto& c : problem.constraints) {
        if (!c.in_domain(z)) return false;
        const double v = c.value(z);
        if (!(v > 0.0)) return false;
    }
    return true;
}

namespace {

double value_of(const ConvexProblem& pr, const rvec& z, ConstraintKind kind, int user) {
    for (std::size_t i = 0; i < pr.labels.size(); ++i) {
        if (pr.labels[i].kind == kind && pr.labels[i].user == user) {
            const auto& c = pr.constraints[i];
            return c.in_domain(z) ? c.value(z) : -std::numeric_limits<double>::infinity();
        }
    }
    throw std::logic_error("constraint not present in problem");
}

Eigen::Index epigraph_index(const VariableLayout& L, int user) {
    return user < 0 ? L.epi_common : L.epi_private + user;
}

double interior_margin(double v) { return 0.1 + 0.1 * std::abs(v); }

} // namespace

std::optional<rvec> complete_point(const ConvexProblem& pr, const rvec& precoder_part) {
    const auto& L = pr.layout;
    const int K = pr.num_users;
    if (!(pr.power_budget - precoder_part.squaredNorm() > 0.0)) return std::nullopt;

    for (double shrink : {1e-3, 1e-6, 1e-9}) {
        rvec z = rvec::Zero(L.size);
        z.head(L.precoder_size) = precoder_part;
        bool ok = true;
        for (std::size_t i = 0; i < pr.labels.size() && ok; ++i) {
            if (pr.labels[i].kind != ConstraintKind::EavesEpigraph) continue;
            const Eigen::Index u = epigraph_index(L, pr.labels[i].user);
            z[u] = 0.0;
            const double q = pr.constraints[i].value(z);
            if (!(q > 0.0)) ok = false;
            z[u] = q * (1.0 - shrink);
        }
        if (!ok) return std::nullopt;

        if (pr.model == SecrecyModel::Secure) {
            for (int k = 0; k < K && ok; ++k) {
                if (!(value_of(pr, z, ConstraintKind::CommonDecodable, k) > 0.0)) ok = false;
            }
            if (!ok) continue;
        }
        if (L.common_alloc >= 0) {
            double budget = std::numeric_limits<double>::infinity();
            for (int k = 0; k < K; ++k) {
                budget = std::min(budget, value_of(pr, z, ConstraintKind::CommonAllocation, k));
            }
            if (!(budget > 0.0)) continue;
            for (int k = 0; k < K; ++k) z[L.common_alloc + k] = budget / (2.0 * K);
        }
        double floor = std::numeric_limits<double>::infinity();
        for (int k = 0; k < K; ++k) {
            const double e = value_of(pr, z, ConstraintKind::PrivateSecrecy, k);
            z[L.private_secrecy + k] = e - interior_margin(e);
            const double common = L.common_alloc >= 0 ? z[L.common_alloc + k] : 0.0;
            floor = std::min(floor, common + z[L.private_secrecy + k]);
        }
        z[L.min_secrecy] = floor - interior_margin(floor);
        if (strictly_feasible(pr, z)) return z;
    }
    return std::nullopt;
}

std::optional<rvec> feasible_start(const ConvexProblem& pr) {
    const rvec base = pr.lift(pr.legit.expansion);
    double scale = 1.0;
    for (int i = 0; i <= 40; ++i, scale *= 0.5) {
        if (auto z = complete_point(pr, scale * base)) return z;
    }
    return std::nullopt;
}

namespace {

class Barrier {
public:
    Barrier(const ConvexProblem& pr, double t) : pr_(pr), t_(t) {}

    void set_t(double t) { t_ = t; }
    double t() const { return t_; }

    bool in_domain(const rvec& z) const { return strictly_feasible(pr_, z); }

    double phi(const rvec& z) const {
        double v = -t_ * pr_.objective.value(z);
        for (const auto& c : pr_.constraints) {
            if (!c.in_domain(z)) return std::numeric_limits<double>::infinity();
            const double g = c.value(z);
            if (!(g > 0.0)) return std::numeric_limits<double>::infinity();
            v -= std::log(g);
        }
        return v;
    }

    rvec gradient(const rvec& z) const {
        rvec grad = rvec::Zero(z.size());
        pr_.objective.add_gradient(z, -t_, grad);
        for (const auto& c : pr_.constraints) c.add_gradient(z, -1.0 / c.value(z), grad);
        return grad;
    }

    // Stationarity residual of the Lagrangian with multipliers 1/(t g_i),
    // relative to the magnitude of the terms that cancel in it.
    double relative_residual(const rvec& z) const {
        rvec grad = rvec::Zero(z.size());
        pr_.objective.add_gradient(z, -1.0, grad);
        double scale = grad.norm();
        rvec gi(z.size());
        for (const auto& c : pr_.constraints) {
            gi.setZero();
            c.add_gradient(z, -1.0 / (t_ * c.value(z)), gi);
            scale += gi.norm();
            grad += gi;
        }
        return scale > 0.0 ? grad.norm() / scale : 0.0;
    }

    void gradient_hessian(const rvec& z, rvec& grad, rmat& hess) const {
        const Eigen::Index n = z.size();
        grad.setZero(n);
        hess.setZero(n, n);
        pr_.objective.add_gradient(z, -t_, grad);
        pr_.objective.add_hessian(z, -t_, hess);
        rvec gi(n);
        for (const auto& c : pr_.constraints) {
            const double g = c.value(z);
            gi.setZero();
            c.add_gradient(z, 1.0, gi);
            grad -= gi / g;
            hess.noalias() += (gi / g) * (gi / g).transpose();
            c.add_hessian(z, -1.0 / g, hess);
        }
    }

private:
    const ConvexProblem& pr_;
    double t_;
};

// Newton system solved after symmetric Jacobi scaling; the precoder and rate
// variables differ in curvature by many orders of magnitude.
std::optional<rvec> newton_direction(const rmat& hess, const rvec& grad, double max_reg) {
    const Eigen::Index n = hess.rows();
    rvec d = hess.diagonal().cwiseAbs().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
    rmat H = d.asDiagonal() * hess * d.asDiagonal();
    const rvec g = d.cwiseProduct(grad);
    Eigen::LLT<rmat> llt(H);
    if (llt.info() == Eigen::Success) {
        rvec y = llt.solve(-g);
        if (y.allFinite()) return rvec(d.cwiseProduct(y));
    }
    for (double reg = 1e-12; reg <= max_reg * (1.0 + 1e-12); reg *= 10.0) {
        Eigen::LLT<rmat> r(H + reg * rmat::Identity(n, n));
        if (r.info() != Eigen::Success) continue;
        rvec y = r.solve(-g);
        if (y.allFinite()) return rvec(d.cwiseProduct(y));
    }
    return std::nullopt;
}

enum class CenterResult { Converged, Stalled, Failed };

// Damped Newton on the barrier merit. Once the Newton decrement is down to
// rounding level of the merit value, full steps are taken as long as they
// shrink the gradient norm; this is how the last stage reaches its KKT target.
CenterResult center(const Barrier& barrier, rvec& z, const SolverSettings& s, bool last,
                    int& iterations) {
    rvec grad;
    rmat hess;
    for (int it = 0; it < s.max_newton_per_stage; ++it) {
        barrier.gradient_hessian(z, grad, hess);
        const auto dir = newton_direction(hess, grad, s.max_regularization);
        if (!dir) return CenterResult::Failed;
        const double slope = grad.dot(*dir);
        const double residual = barrier.relative_residual(z);
        if (!(slope < 0.0)) {
            return residual <= s.newton_tol ? CenterResult::Converged : CenterResult::Failed;
        }
        const bool centered = -slope / 2.0 <= 1e-10;
        if (centered && (!last || residual <= s.newton_tol)) return CenterResult::Converged;
        ++iterations;
        if (-slope <= 1e-6) {
            const rvec next = z + *dir;
            if (!barrier.in_domain(next) || barrier.gradient(next).norm() >= grad.norm()) {
                return centered ? CenterResult::Converged : CenterResult::Stalled;
            }
            z = next;
            continue;
        }
        double step = 1.0;
        while (!barrier.in_domain(z + step * *dir)) {
            step *= s.beta;
            if (step < 1e-16) return CenterResult::Stalled;
        }
        const double phi0 = barrier.phi(z);
        while (barrier.phi(z + step * *dir) > phi0 + s.alpha * step * slope) {
            step *= s.beta;
            if (step < 1e-16) return CenterResult::Stalled;
        }
        z += step * *dir;
    }
    return CenterResult::Stalled;
}

SubproblemSolution extract(const ConvexProblem& pr, const rvec& z) {
    const auto& L = pr.layout;
    SubproblemSolution sol;
    sol.z = z;
    sol.precoder = pr.unlift(z);
    sol.min_secrecy = z[L.min_secrecy];
    sol.common_alloc = L.common_alloc >= 0 ? rvec(z.segment(L.common_alloc, pr.num_users))
                                           : rvec::Zero(pr.num_users);
    sol.private_secrecy = z.segment(L.private_secrecy, pr.num_users);
    sol.objective = pr.objective.value(z);
    sol.slacks = constraint_values(pr, z);
    return sol;
}

// With P_th = 0 the precoder is pinned at the origin and the remaining
// problem in the rate variables is solved by water-filling.
SubproblemSolution solve_zero_power(const ConvexProblem& pr) {
    const auto& L = pr.layout;
    const int K = pr.num_users;
    rvec z = rvec::Zero(L.size);
    for (std::size_t i = 0; i < pr.labels.size(); ++i) {
        if (pr.labels[i].kind != ConstraintKind::EavesEpigraph) continue;
        const Eigen::Index u = epigraph_index(L, pr.labels[i].user);
        z[u] = std::max(pr.constraints[i].value(z), 0.0);
    }
    SubproblemSolution sol;
    sol.precoder = cmat::Zero(pr.num_antennas, K + 1);
    bool feasible = true;
    rvec base(K);
    double budget = 0.0;
    for (int k = 0; k < K; ++k) base[k] = value_of(pr, z, ConstraintKind::PrivateSecrecy, k);
    if (L.common_alloc >= 0) {
        budget = std::numeric_limits<double>::infinity();
        for (int k = 0; k < K; ++k) budget = std::min(budget, value_of(pr, z, ConstraintKind::CommonAllocation, k));
        if (budget < -1e-12) feasible = false;
    }
    if (pr.model == SecrecyModel::Secure) {
        for (int k = 0; k < K; ++k) {
            if (value_of(pr, z, ConstraintKind::CommonDecodable, k) < -1e-12) feasible = false;
        }
    }
    if (!feasible) {
        sol.status = SolveStatus::InfeasibleStart;
        sol.common_alloc = rvec::Zero(K);
        sol.private_secrecy = rvec::Zero(K);
        return sol;
    }
    const rvec share = max_min_allocation(base, std::max(budget, 0.0));
    if (L.common_alloc >= 0) z.segment(L.common_alloc, K) = share;
    z.segment(L.private_secrecy, K) = base;
    z[L.min_secrecy] = (base + share).minCoeff();
    sol = extract(pr, z);
    sol.status = SolveStatus::Optimal;
    return sol;
}

} // namespace

SubproblemSolution solve(const ConvexProblem& problem, const SolverSettings& settings) {
    if (problem.power_budget <= 0.0) return solve_zero_power(problem);
    const auto start = feasible_start(problem);
    if (!start) {
        SubproblemSolution sol;
        sol.status = SolveStatus::InfeasibleStart;
        sol.precoder = cmat::Zero(problem.num_antennas, problem.num_users + 1);
        sol.common_alloc = rvec::Zero(problem.num_users);
        sol.private_secrecy = rvec::Zero(problem.num_users);
        return sol;
    }
    return solve(problem, *start, settings);
}

SubproblemSolution solve(const ConvexProblem& problem, const rvec& start,
                         const SolverSettings& settings) {
    if (problem.power_budget <= 0.0) return solve_zero_power(problem);
    if (!strictly_feasible(problem, start)) {
        throw std::invalid_argument("solve: start point is not strictly feasible");
    }
    const double m = static_cast<double>(problem.constraints.size());
    Barrier barrier(problem, settings.t0);
    rvec z = start;
    int iterations = 0;
    int stages = 0;
    bool inexact = false;
    std::vector<double> stage_objectives;
    for (;;) {
        const bool last = m / barrier.t() <= settings.gap_tol;
        const auto res = center(barrier, z, settings, last, iterations);
        ++stages;
        stage_objectives.push_back(problem.objective.value(z));
        if (res == CenterResult::Failed) {
            inexact = true;
            break;
        }
        if (last) break;
        barrier.set_t(barrier.t() * settings.mu);
    }

    SubproblemSolution sol = extract(problem, z);
    sol.kkt_residual = barrier.relative_residual(z);
    sol.stationarity = barrier.gradient(z).norm() / barrier.t();
    sol.newton_iterations = iterations;
    sol.barrier_stages = stages;
    sol.stage_objectives = std::move(stage_objectives);
    sol.status = (inexact || sol.kkt_residual > settings.newton_tol) ? SolveStatus::Inexact
                                                                     : SolveStatus::Optimal;
    return sol;
}

} // namespace nfsec
