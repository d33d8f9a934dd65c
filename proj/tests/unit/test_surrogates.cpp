// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "nfsec/surrogates.hpp"
#include "oracles.hpp"

using namespace nfsec;
using nfsec::testing::desk_config;
using nfsec::testing::random_channels;
using nfsec::testing::random_precoder;

namespace {

double true_rate(const nfsec::testing::NaiveRates& r, int k, StreamType t) {
    return t == StreamType::Common ? r.common[static_cast<std::size_t>(k)]
                                   : r.priv[static_cast<std::size_t>(k)];
}

cmat perturb(std::mt19937_64& rng, const cmat& P, double max_rel) {
    std::uniform_real_distribution<double> u(0.0, max_rel);
    cmat D = nfsec::testing::random_matrix(rng, P.rows(), P.cols());
    return P + D * (u(rng) * P.norm() / D.norm());
}

} // namespace

TEST(LegitSurrogate, TightAtExpansionPoint) {
    std::mt19937_64 rng(1);
    const SystemConfig c = desk_config();
    for (int inst = 0; inst < 20; ++inst) {
        const ChannelSet ch = random_channels(rng, c);
        const cmat P = random_precoder(rng, 32, 3, c.power_budget);
        const LegitSurrogate s = build_legit_surrogate(P, ch, noise_of(c));
        const auto r = nfsec::testing::naive_rates(P, ch, c);
        for (int k = 0; k < 3; ++k) {
            for (StreamType t : {StreamType::Common, StreamType::Private}) {
                const double R = true_rate(r, k, t);
                EXPECT_NEAR(s.eval(k, t, P), R, 1e-8 * std::max(R, 1e-3));
            }
        }
    }
}

TEST(LegitSurrogate, LowerBoundsRateUnderPerturbation) {
    std::mt19937_64 rng(2);
    const SystemConfig c = desk_config();
    for (int inst = 0; inst < 5; ++inst) {
        const ChannelSet ch = random_channels(rng, c);
        const cmat P0 = random_precoder(rng, 32, 3, c.power_budget);
        const LegitSurrogate s = build_legit_surrogate(P0, ch, noise_of(c));
        for (int trial = 0; trial < 100; ++trial) {
            const cmat P = perturb(rng, P0, 0.5);
            const auto r = nfsec::testing::naive_rates(P, ch, c);
            for (int k = 0; k < 3; ++k) {
                for (StreamType t : {StreamType::Common, StreamType::Private}) {
                    EXPECT_LE(s.eval(k, t, P), true_rate(r, k, t) + 1e-10);
                }
            }
        }
    }
}

TEST(LegitSurrogate, ExpandedQuadraticMatchesMseForm) {
    std::mt19937_64 rng(3);
    const SystemConfig c = nfsec::testing::small_config(6, 2);
    const ChannelSet ch = random_channels(rng, c);
    const cmat P0 = random_precoder(rng, 6, 2, c.power_budget);
    const LegitSurrogate s = build_legit_surrogate(P0, ch, noise_of(c));
    const cmat P = perturb(rng, P0, 0.3);
    for (int k = 0; k < 2; ++k) {
        for (StreamType t : {StreamType::Common, StreamType::Private}) {
            const LegitTerm& term = s.term(k, t);
            const cmat X = term.x_matrix();
            double quad = term.z;
            for (int i = term.first_interferer; i < 3; ++i) quad += (P.col(i).adjoint() * X * P.col(i))(0, 0).real();
            quad += 2.0 * term.linear().dot(P.col(term.desired)).real();
            EXPECT_NEAR(quad, term.eval(P), 1e-6 * std::max(1.0, std::abs(quad)));
        }
    }
}

TEST(LegitSurrogate, CurvatureMatrixIsRankOneNegative) {
    std::mt19937_64 rng(4);
    const SystemConfig c = nfsec::testing::small_config(8, 2);
    const ChannelSet ch = random_channels(rng, c);
    const cmat P = random_precoder(rng, 8, 2, c.power_budget);
    const LegitSurrogate s = build_legit_surrogate(P, ch, noise_of(c));
    for (int k = 0; k < 2; ++k) {
        for (StreamType t : {StreamType::Common, StreamType::Private}) {
            const cmat X = s.term(k, t).x_matrix();
            Eigen::SelfAdjointEigenSolver<cmat> eig(X);
            const rvec ev = eig.eigenvalues(); // ascending
            EXPECT_LT(ev[0], 0.0);
            const double scale = std::abs(ev[0]);
            for (Eigen::Index i = 1; i < ev.size(); ++i) EXPECT_LE(std::abs(ev[i]), 1e-10 * scale);
        }
    }
}

TEST(LegitSurrogate, ZeroDesiredColumnIsTolerated) {
    std::mt19937_64 rng(5);
    const SystemConfig c = desk_config();
    const ChannelSet ch = random_channels(rng, c);
    cmat P = random_precoder(rng, 32, 3, c.power_budget);
    P.col(0).setZero();
    const LegitSurrogate s = build_legit_surrogate(P, ch, noise_of(c));
    for (int k = 0; k < 3; ++k) {
        EXPECT_EQ(s.term(k, StreamType::Common).u, cplx(0.0, 0.0));
        EXPECT_NEAR(s.eval(k, StreamType::Common, P), 0.0, 1e-12);
        EXPECT_TRUE(std::isfinite(s.eval(k, StreamType::Private, P)));
    }
    const LegitSurrogate z = build_legit_surrogate(cmat::Zero(32, 4), ch, noise_of(c));
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(z.eval(k, StreamType::Private, cmat::Zero(32, 4)), 0.0, 1e-12);
}

TEST(LegitSurrogate, ConcaveAlongRandomLines) {
    std::mt19937_64 rng(6);
    const SystemConfig c = desk_config();
    const ChannelSet ch = random_channels(rng, c);
    const cmat P0 = random_precoder(rng, 32, 3, c.power_budget);
    const LegitSurrogate s = build_legit_surrogate(P0, ch, noise_of(c));
    for (int line = 0; line < 20; ++line) {
        const cmat A = random_precoder(rng, 32, 3, c.power_budget);
        const cmat D = random_precoder(rng, 32, 3, 0.01 * c.power_budget);
        for (int k = 0; k < 3; ++k) {
            for (StreamType t : {StreamType::Common, StreamType::Private}) {
                const double f0 = s.eval(k, t, A - D), f1 = s.eval(k, t, A), f2 = s.eval(k, t, A + D);
                EXPECT_LE(f0 - 2 * f1 + f2, 1e-9 * std::max(1.0, std::abs(f1)));
            }
        }
    }
}

TEST(LegitSurrogate, JointPhaseRotationInvariance) {
    std::mt19937_64 rng(7);
    const SystemConfig c = desk_config();
    const ChannelSet ch = random_channels(rng, c);
    const cmat P0 = random_precoder(rng, 32, 3, c.power_budget);
    const cmat P = perturb(rng, P0, 0.3);
    const cplx rot = std::polar(1.0, 0.9);
    const LegitSurrogate a = build_legit_surrogate(P0, ch, noise_of(c));
    const LegitSurrogate b = build_legit_surrogate(P0 * rot, ch, noise_of(c));
    for (int k = 0; k < 3; ++k) {
        for (StreamType t : {StreamType::Common, StreamType::Private}) {
            const double fa = a.eval(k, t, P), fb = b.eval(k, t, P * rot);
            EXPECT_NEAR(fa, fb, 1e-9 * std::max(1.0, std::abs(fa)));
        }
    }
}

TEST(EavesTMatrices, NoiseColumnScalePinsIdentity) {
    std::mt19937_64 rng(8);
    const SystemConfig c = desk_config();
    for (int t = 0; t < 10; ++t) {
        const ChannelSet ch = random_channels(rng, c);
        const cmat P = random_precoder(rng, 32, 3, c.power_budget);
        const auto T = build_t_matrices(P, ch, c.noise_eve);
        ASSERT_EQ(T.size(), 4u);
        double expected = c.noise_eve;
        for (int i = 1; i <= 3; ++i) expected += nfsec::testing::gain2(ch.eve, P.col(i));
        const double got = (ch.eve.adjoint() * T[0]).squaredNorm();
        EXPECT_NEAR(got, expected, 1e-12 * expected);
        EXPECT_NEAR(nfsec::testing::gain2(ch.eve, T[0].col(0)), c.noise_eve, 1e-12 * c.noise_eve);
    }
}

TEST(EavesTMatrices, ZeroPrecoder) {
    std::mt19937_64 rng(9);
    const SystemConfig c = desk_config();
    const ChannelSet ch = random_channels(rng, c);
    const auto T = build_t_matrices(cmat::Zero(32, 4), ch, c.noise_eve);
    EXPECT_NEAR((ch.eve.adjoint() * T[0]).squaredNorm(), c.noise_eve, 1e-12 * c.noise_eve);
}

TEST(EavesTMatrices, SingleUserBookkeeping) {
    std::mt19937_64 rng(10);
    SystemConfig c = desk_config();
    c.num_users = 1;
    const ChannelSet ch = random_channels(rng, c);
    const cmat P = random_precoder(rng, 32, 1, c.power_budget);
    const auto T = build_t_matrices(P, ch, c.noise_eve);
    ASSERT_EQ(T.size(), 2u);
    EXPECT_TRUE((T[1].col(0).array() == P.col(0).array()).all());
    EXPECT_FALSE((T[1].col(1).array() == P.col(1).array()).all());
    EXPECT_TRUE((T[0].col(1).array() == P.col(1).array()).all());
}

TEST(EavesAux, EqualityAtOptimum) {
    std::mt19937_64 rng(11);
    const SystemConfig c = desk_config();
    for (int inst = 0; inst < 20; ++inst) {
        const ChannelSet ch = random_channels(rng, c);
        const cmat P = random_precoder(rng, 32, 3, c.power_budget);
        const EavesAux aux = optimal_eaves_aux(P, ch, c.noise_eve);
        const auto r = nfsec::testing::naive_rates(P, ch, c);
        const double fc = eval_eaves_surrogate(aux.common, 0, P, ch, c.noise_eve);
        EXPECT_NEAR(fc, -r.eve_common, 1e-8 * std::max(r.eve_common, 1e-3));
        for (int k = 0; k < 3; ++k) {
            const double fk = eval_eaves_surrogate(aux.priv[static_cast<std::size_t>(k)], k + 1, P, ch, c.noise_eve);
            const double R = r.eve_private[static_cast<std::size_t>(k)];
            EXPECT_NEAR(fk, -R, 1e-8 * std::max(R, 1e-3));
        }
    }
}

TEST(EavesAux, DominatedForRandomAuxiliaries) {
    std::mt19937_64 rng(12);
    const SystemConfig c = desk_config();
    for (int inst = 0; inst < 20; ++inst) {
        const ChannelSet ch = random_channels(rng, c);
        const cmat P = random_precoder(rng, 32, 3, c.power_budget);
        const EavesAux aux = optimal_eaves_aux(P, ch, c.noise_eve);
        const auto r = nfsec::testing::naive_rates(P, ch, c);
        for (int trial = 0; trial < 100; ++trial) {
            const cvec x = aux.common + nfsec::testing::random_vector(rng, 4, aux.common.norm() * 0.2);
            const double arg = eaves_argument(x, 0, P, ch, c.noise_eve);
            if (arg > 0.0) EXPECT_LE(std::log2(arg), -r.eve_common + 1e-10);
        }
    }
}

TEST(EavesAux, PerturbationStrictlyDecreases) {
    std::mt19937_64 rng(13);
    const SystemConfig c = desk_config();
    const ChannelSet ch = random_channels(rng, c);
    const cmat P = random_precoder(rng, 32, 3, c.power_budget);
    const EavesAux aux = optimal_eaves_aux(P, ch, c.noise_eve);
    const double best = eaves_argument(aux.common, 0, P, ch, c.noise_eve);
    for (int t = 0; t < 50; ++t) {
        cvec d = nfsec::testing::random_vector(rng, 4);
        d *= 1e-2 * aux.common.norm() / d.norm();
        EXPECT_LT(eaves_argument(aux.common + d, 0, P, ch, c.noise_eve), best);
    }
}

TEST(EavesAux, ZeroPrecoderAuxiliary) {
    std::mt19937_64 rng(14);
    const SystemConfig c = desk_config();
    const ChannelSet ch = random_channels(rng, c);
    const EavesAux aux = optimal_eaves_aux(cmat::Zero(32, 4), ch, c.noise_eve);
    const auto T = build_t_matrices(cmat::Zero(32, 4), ch, c.noise_eve);
    const cvec expected = T[0].adjoint() * ch.eve / c.noise_eve;
    EXPECT_NEAR((aux.common - expected).norm(), 0.0, 1e-12 * expected.norm());
    EXPECT_NE(aux.common[0], cplx(0.0, 0.0));
    for (int i = 1; i < 4; ++i) EXPECT_EQ(aux.common[i], cplx(0.0, 0.0));
}

TEST(EavesSurrogate, ArgumentConcaveAlongLines) {
    std::mt19937_64 rng(15);
    const SystemConfig c = desk_config();
    const ChannelSet ch = random_channels(rng, c);
    const cmat P0 = random_precoder(rng, 32, 3, c.power_budget);
    const EavesAux aux = optimal_eaves_aux(P0, ch, c.noise_eve);
    for (int line = 0; line < 20; ++line) {
        const cmat D = random_precoder(rng, 32, 3, 0.05 * c.power_budget);
        const double a0 = eaves_argument(aux.common, 0, P0 - D, ch, c.noise_eve);
        const double a1 = eaves_argument(aux.common, 0, P0, ch, c.noise_eve);
        const double a2 = eaves_argument(aux.common, 0, P0 + D, ch, c.noise_eve);
        EXPECT_LE(a0 - 2 * a1 + a2, 1e-12 * std::abs(a1));
    }
}

TEST(EavesSurrogate, ZeroAuxiliaryIsDomainViolation) {
    std::mt19937_64 rng(16);
    const SystemConfig c = desk_config();
    const ChannelSet ch = random_channels(rng, c);
    const cmat P = random_precoder(rng, 32, 3, c.power_budget);
    EXPECT_EQ(eaves_argument(cvec::Zero(4), 0, P, ch, c.noise_eve), 0.0);
    EXPECT_THROW(eval_eaves_surrogate(cvec::Zero(4), 0, P, ch, c.noise_eve), SurrogateDomainError);
}
