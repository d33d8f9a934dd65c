// SPDX-License-Identifier: Apache-2.0
#include "nfsec/surrogates.hpp"

#include <cmath>
#include <limits>

namespace nfsec {

// Evaluated in the equivalent mean-square-error form, which avoids the large
// cancelling terms of the expanded quadratic at high SNR.
double LegitTerm::eval(const cmat& precoder) const {
    const Eigen::Index K1 = precoder.cols();
    double interference = 0.0;
    for (Eigen::Index i = first_interferer; i < K1; ++i) {
        if (i != desired) interference += std::norm(h.dot(precoder.col(i)));
    }
    const cplx gain = std::conj(u) * h.dot(precoder.col(desired));
    const double mse = std::norm(gain - 1.0) + std::norm(u) * (interference + noise);
    return -mse / (v * kLn2) - std::log2(v) + 1.0 / kLn2;
}

namespace {

LegitTerm make_term(const cvec& h, const cmat& expansion, int desired, int first, double noise) {
    LegitTerm t;
    t.h = h;
    t.desired = desired;
    t.first_interferer = first;
    double total = noise;
    for (Eigen::Index i = first; i < expansion.cols(); ++i) total += std::norm(h.dot(expansion.col(i)));
    const cplx signal = h.dot(expansion.col(desired));
    t.u = signal / total;
    // MMSE at the optimal receiver; equals I/T and stays in (0, 1].
    t.v = 1.0 - std::norm(signal) / total;
    if (!(t.v > 0.0)) t.v = std::numeric_limits<double>::min();
    t.weight = std::norm(t.u) / (t.v * kLn2);
    t.noise = noise;
    t.z = -(noise * std::norm(t.u) + 1.0) / (t.v * kLn2) - std::log2(t.v) + 1.0 / kLn2;
    return t;
}

} // namespace

LegitSurrogate build_legit_surrogate(const cmat& expansion, const ChannelSet& channels,
                                     const Noise& noise) {
    const int K = channels.num_users();
    LegitSurrogate s;
    s.expansion = expansion;
    s.common.reserve(static_cast<std::size_t>(K));
    s.priv.reserve(static_cast<std::size_t>(K));
    for (int k = 0; k < K; ++k) {
        const cvec h = channels.users.col(k);
        const double sigma2 = noise.users.at(static_cast<std::size_t>(k));
        s.common.push_back(make_term(h, expansion, 0, 0, sigma2));
        s.priv.push_back(make_term(h, expansion, k + 1, 1, sigma2));
    }
    return s;
}

double eaves_noise_scale(const ChannelSet& channels, double noise_eve) {
    return std::sqrt(noise_eve) / channels.eve.squaredNorm();
}

std::vector<cmat> build_t_matrices(const cmat& precoder, const ChannelSet& channels,
                                   double noise_eve) {
    const cvec noise_col = eaves_noise_scale(channels, noise_eve) * channels.eve;
    std::vector<cmat> out;
    out.reserve(static_cast<std::size_t>(precoder.cols()));
    for (Eigen::Index j = 0; j < precoder.cols(); ++j) {
        cmat t = precoder;
        t.col(j) = noise_col;
        out.push_back(std::move(t));
    }
    return out;
}

EavesAux optimal_eaves_aux(const cmat& precoder, const ChannelSet& channels, double noise_eve) {
    EavesAux aux;
    aux.noise_scale = eaves_noise_scale(channels, noise_eve);
    const cvec proj = precoder.adjoint() * channels.eve; // p_i^H g
    aux.T_ec = proj.squaredNorm() + noise_eve;
    const cplx noise_entry = aux.noise_scale * channels.eve.squaredNorm();
    const auto x_for = [&](Eigen::Index replaced) {
        cvec tg = proj;
        tg[replaced] = noise_entry;
        return cvec(tg / aux.T_ec);
    };
    aux.common = x_for(0);
    for (Eigen::Index k = 1; k < precoder.cols(); ++k) aux.priv.push_back(x_for(k));
    return aux;
}

double eaves_argument(const cvec& x, int replaced, const cmat& precoder,
                      const ChannelSet& channels, double noise_eve) {
    cvec tg = precoder.adjoint() * channels.eve;
    const double T_ec = tg.squaredNorm() + noise_eve;
    tg[replaced] = eaves_noise_scale(channels, noise_eve) * channels.eve.squaredNorm();
    return 2.0 * x.dot(tg).real() - x.squaredNorm() * T_ec;
}

double eval_eaves_surrogate(const cvec& x, int replaced, const cmat& precoder,
                            const ChannelSet& channels, double noise_eve) {
    const double arg = eaves_argument(x, replaced, precoder, channels, noise_eve);
    if (!(arg > 0.0)) throw SurrogateDomainError("surrogate domain violation: non-positive log argument");
    return std::log2(arg);
}

} // namespace nfsec
