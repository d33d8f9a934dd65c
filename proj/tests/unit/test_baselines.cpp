// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "nfsec/baselines.hpp"
#include "oracles.hpp"

using namespace nfsec;
using nfsec::testing::random_channels;

namespace {

SystemConfig compact() {
    SystemConfig c = nfsec::testing::small_config(16, 2, 4);
    c.r_min = 0.5;
    c.r_max = 1.0;
    return c;
}

} // namespace

TEST(SchemeNames, RoundTrip) {
    for (Scheme s : all_schemes()) EXPECT_EQ(parse_scheme(to_string(s)), s);
    EXPECT_EQ(parse_scheme("rsma_fc"), Scheme::RSMA_FC);
    EXPECT_EQ(parse_scheme("RSMA-FC-Far"), Scheme::RSMA_FC_Far);
    EXPECT_EQ(all_schemes().size(), 6u);
    EXPECT_THROW(parse_scheme("NOMA"), std::invalid_argument);
    EXPECT_EQ(scheme_of(BaselineKind::SDMA_FC), Scheme::SDMA_FC);
}

TEST(FarFieldCounterpart, KeepsGainsAndPositions) {
    std::mt19937_64 rng(1);
    const SystemConfig c = compact();
    const ChannelSet ch = random_channels(rng, c);
    const ChannelSet far = far_field_counterpart(ch, c);
    for (int k = 0; k < 2; ++k) {
        EXPECT_NEAR(far.users.col(k).norm(), ch.users.col(k).norm(), 1e-15);
        EXPECT_GT((far.users.col(k) - ch.users.col(k)).norm(), 1e-3 * ch.users.col(k).norm());
    }
    EXPECT_EQ(far.eve_polar.r, ch.eve_polar.r);
}

TEST(Sdma, CommonColumnExactlyZero) {
    std::mt19937_64 rng(2);
    const SystemConfig c = compact();
    const ChannelSet ch = random_channels(rng, c);
    const SchemeResult r = run_scheme(Scheme::SDMA_FC, c, ch, {3});
    EXPECT_TRUE((r.run.precoder.col(0).array() == cplx(0.0, 0.0)).all());
    EXPECT_EQ(r.report.secrecy_common, 0.0);
    EXPECT_EQ(r.report.allocation.common.sum(), 0.0);
}

TEST(FarField, EvaluatedOnTrueChannels) {
    std::mt19937_64 rng(3);
    const SystemConfig c = compact();
    const ChannelSet ch = random_channels(rng, c);
    const SchemeResult truth = run_scheme(Scheme::RSMA_FC_Far, c, ch, {4, true});
    const double design = evaluate(truth.run.effective, truth.design_channels, noise_of(c), SecrecyModel::Secure).objective;
    EXPECT_GT(std::abs(truth.report.objective - design), 1e-6);
    const SchemeResult model = run_scheme(Scheme::RSMA_FC_Far, c, ch, {4, false});
    EXPECT_NEAR(model.report.objective, design, 1e-12);
}

TEST(Comm, RateAtLeastSecrecyDesign) {
    std::mt19937_64 rng(4);
    const SystemConfig c = compact();
    const ChannelSet ch = random_channels(rng, c);
    const SchemeResult comm = run_scheme(Scheme::RSMA_Comm, c, ch, {5});
    const SchemeResult fc = run_scheme(Scheme::RSMA_FC, c, ch, {5});
    EXPECT_GE(comm.report.objective, fc.report.objective);
    EXPECT_EQ(comm.report.objective, comm.report.min_rate);
}

TEST(FullyDigital, IdentityAnalog) {
    std::mt19937_64 rng(5);
    const SystemConfig c = compact();
    const ChannelSet ch = random_channels(rng, c);
    const SchemeResult r = run_baseline(BaselineKind::RSMA_FD, c, ch);
    EXPECT_EQ(r.scheme, Scheme::RSMA_FD);
    EXPECT_EQ(r.run.beamformer.F.cols(), 16);
    EXPECT_EQ(r.run.trace.outer.back().violation, 0.0);
}

TEST(SingleUser, SdmaMatchesRsmaWithoutEavesdropperLeakage) {
    SystemConfig c = compact();
    c.num_users = 1;
    ChannelSet ch = build_channels({{0.7, 0.5}}, {0.9, 1.2}, c);
    ch.eve *= 1e-3;
    const SchemeResult rsma = run_scheme(Scheme::RSMA_FC, c, ch, {6});
    const SchemeResult sdma = run_scheme(Scheme::SDMA_FC, c, ch, {6});
    EXPECT_NEAR(sdma.report.objective, rsma.report.objective, 0.02 * rsma.report.objective);
}
